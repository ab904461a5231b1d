#ifndef MOLQ_SPECTRAL_HPP
#define MOLQ_SPECTRAL_HPP

#include <string>
#include <vector>

#include "molq/hamiltonian.hpp"

namespace molq {

/// Eigensystem with ascending energies. Lab-frame energies are reported in
/// THz, rotating-frame spectra in GHz. `labels[k]` carries the conventional
/// level index (1..8 for the analytic trimer), or k+1 for numeric results.
struct EigenSystem {
  Eigen::VectorXd energies;
  Mat states;  // columns, orthonormal
  std::vector<int> labels;
  std::string unit;  // "THz" or "GHz"

  Vec state(int label) const;     // eigenvector by conventional label
  double energy(int label) const; // energy by conventional label
};

/// Dense Hermitian diagonalization; deterministic phase (largest-magnitude
/// component made real and positive).
EigenSystem eigensystem_numeric(const Hamiltonian& h);

/// Closed-form eigensystem of the bare trimer. Throws a degenerate-
/// configuration error when a normalization denominator vanishes (callers
/// should fall back to the numeric path).
EigenSystem trimer_eigensystem_analytic(double nu_thz, double nu2_thz,
                                        double v_ghz, double v13_ghz);

enum class EntanglementClass { product, pairwise, tripartite };

/// Classifies a normalized three-qubit pure state by the negativities of its
/// three bipartitions (entangled when negativity > 1e-6; tripartite requires
/// all three cuts entangled).
EntanglementClass eigenstate_entanglement_class(const Vec& state);

std::string to_string(EntanglementClass c);

}  // namespace molq

#endif
