#ifndef MOLQ_STATE_HPP
#define MOLQ_STATE_HPP

#include <string>

#include "molq/linalg.hpp"

namespace molq {

/// Multi-qubit density matrix in the computational basis.
struct DensityMatrix {
  Mat matrix;
  int n_qubits = 0;

  DensityMatrix() = default;
  DensityMatrix(Mat m, int n_qubits);

  static DensityMatrix pure(const Vec& psi);
  /// |bits><bits| for a bitstring such as "010" (site 1 = leftmost).
  static DensityMatrix basis_state(const std::string& bits);

  int dim() const { return static_cast<int>(matrix.rows()); }
  double trace_error() const;     // |Tr rho - 1|
  double hermiticity_error() const;
  double min_eigenvalue() const;
  double purity() const;          // Tr rho^2
  /// Hermitian within 1e-9, unit trace within 1e-9, min eigenvalue >= -1e-7.
  bool is_valid(double trace_tol = 1e-9, double eig_tol = 1e-7) const;
};

/// sigma_x applied on one site (1-based): rho -> X_s rho X_s.
DensityMatrix flip_qubit(const DensityMatrix& state, int site);

}  // namespace molq

#endif
