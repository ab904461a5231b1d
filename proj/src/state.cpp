#include "molq/state.hpp"

#include <cmath>
#include <stdexcept>

namespace molq {

namespace {
int qubits_for_dim(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index(1) << n) < dim) ++n;
  if ((Eigen::Index(1) << n) != dim)
    throw std::invalid_argument("DensityMatrix: dimension is not a power of two");
  return n;
}
}  // namespace

DensityMatrix::DensityMatrix(Mat m, int n) : matrix(std::move(m)), n_qubits(n) {
  if (matrix.rows() != matrix.cols() || matrix.rows() != (Eigen::Index(1) << n))
    throw std::invalid_argument("DensityMatrix: dimension must be 2^n_qubits");
}

DensityMatrix DensityMatrix::pure(const Vec& psi) {
  const int n = qubits_for_dim(psi.size());
  const double norm = psi.norm();
  if (norm <= 0) throw std::invalid_argument("DensityMatrix::pure: zero vector");
  const Vec v = psi / norm;
  return DensityMatrix(v * v.adjoint(), n);
}

DensityMatrix DensityMatrix::basis_state(const std::string& bits) {
  const int n = static_cast<int>(bits.size());
  if (n == 0) throw std::invalid_argument("basis_state: empty bitstring");
  int index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("basis_state: bitstring must be 0/1");
    index = (index << 1) | (c - '0');
  }
  Vec psi = Vec::Zero(1 << n);
  psi(index) = 1.0;
  return pure(psi);
}

double DensityMatrix::trace_error() const {
  return std::abs(matrix.trace() - cd(1.0, 0.0));
}

double DensityMatrix::hermiticity_error() const {
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (matrix + matrix.adjoint()),
                                        Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double DensityMatrix::purity() const { return (matrix * matrix).trace().real(); }

bool DensityMatrix::is_valid(double trace_tol, double eig_tol) const {
  return hermiticity_error() <= 1e-9 && trace_error() <= trace_tol &&
         min_eigenvalue() >= -eig_tol;
}

DensityMatrix flip_qubit(const DensityMatrix& state, int site) {
  const Mat x = embed_site_op(pauli_x(), site, state.n_qubits);
  return DensityMatrix(x * state.matrix * x, state.n_qubits);
}

}  // namespace molq
