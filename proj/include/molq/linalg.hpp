#ifndef MOLQ_LINALG_HPP
#define MOLQ_LINALG_HPP

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace molq {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Vec3 = Eigen::Vector3d;

// Physical constants and unit conversions. Rates and couplings are carried in
// GHz throughout the library; time is in ps. A quoted rate of x GHz enters the
// equations of motion as x * 1e-3 rad/ps (equivalently x ns^-1), which is the
// convention under which all reported gate times of this system come out right.
constexpr double kGhzToRadPerPs = 1e-3;
constexpr double kSpeedOfLight = 2.99792458e8;   // m/s
constexpr double kDebyeToCm = 3.33564e-30;       // C*m per Debye

Mat kron(const Mat& a, const Mat& b);
Mat kron(const std::vector<Mat>& factors);

inline Mat dagger(const Mat& a) { return a.adjoint(); }

bool is_hermitian(const Mat& a, double tol = 1e-10);

// Principal square root of a Hermitian PSD matrix. Eigenvalues in
// [-clamp_tol, 0) are clamped to zero; more negative ones throw.
Mat hermitian_sqrt(const Mat& a, double clamp_tol = 1e-10);

// Trace norm of a Hermitian matrix (sum of |eigenvalues|).
double trace_norm_hermitian(const Mat& a);

// Pauli matrices and the single-site lowering operator |0><1|.
Mat pauli_x();
Mat pauli_y();
Mat pauli_z();
Mat sigma_minus();

// Operator acting as `op` on one site (1-based, site 1 = leftmost/most
// significant bit) and identity elsewhere.
Mat embed_site_op(const Mat& op, int site, int n_qubits);

// |b0 b1 ...> labels in binary-ascending order, site 1 = leftmost bit.
std::vector<std::string> basis_labels(int n_qubits);

// Occupation of `site` (1-based) in computational basis state `index`.
int site_bit(int index, int site, int n_qubits);

// Excitation-number operator diag(popcount).
Mat number_operator(int n_qubits);

}  // namespace molq

#endif
