#include "molq/linalg.hpp"

#include <stdexcept>

namespace molq {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat kron(const std::vector<Mat>& factors) {
  if (factors.empty()) throw std::invalid_argument("kron: empty factor list");
  Mat out = factors.front();
  for (size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

bool is_hermitian(const Mat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

Mat hermitian_sqrt(const Mat& a, double clamp_tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_sqrt: eigensolver failed");
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -clamp_tol)
      throw std::invalid_argument("hermitian_sqrt: matrix not PSD (eigenvalue " +
                                  std::to_string(ev(i)) + ")");
    if (ev(i) < 0) ev(i) = 0;
  }
  const Eigen::VectorXd root = ev.cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

double trace_norm_hermitian(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

Mat pauli_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Mat pauli_y() {
  Mat m(2, 2);
  m << 0, cd(0, -1), cd(0, 1), 0;
  return m;
}

Mat pauli_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Mat sigma_minus() {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1;  // |0><1|
  return m;
}

Mat embed_site_op(const Mat& op, int site, int n_qubits) {
  if (site < 1 || site > n_qubits)
    throw std::invalid_argument("embed_site_op: site index out of range");
  std::vector<Mat> factors;
  factors.reserve(n_qubits);
  for (int s = 1; s <= n_qubits; ++s)
    factors.push_back(s == site ? op : Mat::Identity(2, 2));
  return kron(factors);
}

std::vector<std::string> basis_labels(int n_qubits) {
  const int dim = 1 << n_qubits;
  std::vector<std::string> labels(dim);
  for (int i = 0; i < dim; ++i) {
    std::string s(n_qubits, '0');
    for (int b = 0; b < n_qubits; ++b)
      if (i & (1 << (n_qubits - 1 - b))) s[b] = '1';
    labels[i] = s;
  }
  return labels;
}

int site_bit(int index, int site, int n_qubits) {
  if (site < 1 || site > n_qubits)
    throw std::invalid_argument("site_bit: site index out of range");
  return (index >> (n_qubits - site)) & 1;
}

Mat number_operator(int n_qubits) {
  const int dim = 1 << n_qubits;
  Mat n = Mat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    int count = 0;
    for (int b = 0; b < n_qubits; ++b) count += (i >> b) & 1;
    n(i, i) = count;
  }
  return n;
}

}  // namespace molq
