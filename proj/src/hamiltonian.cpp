#include "molq/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace molq {

namespace {

void check_frequency(double nu, const char* what) {
  if (!(nu > 0))
    throw std::invalid_argument(std::string(what) + " must be positive");
}

Hamiltonian make(int n_qubits, Mat m, Frame frame, double frame_freq) {
  Hamiltonian h;
  h.matrix_ghz = std::move(m);
  h.n_qubits = n_qubits;
  h.frame = frame;
  h.frame_freq_thz = frame_freq;
  h.basis = basis_labels(n_qubits);
  h.validate();
  return h;
}

// Adds Omega/2 between every pair of basis states differing by exactly one
// bit, when that bit's site is addressed by the drive.
void add_drive_couplings(Mat& m, int n_qubits, const LaserDrive& drive) {
  const int dim = 1 << n_qubits;
  for (int a = 0; a < dim; ++a) {
    for (int site = 1; site <= n_qubits; ++site) {
      if (!drive.addresses(site, n_qubits)) continue;
      const int b = a ^ (1 << (n_qubits - site));
      if (b > a) {
        m(a, b) += drive.rabi_ghz / 2.0;
        m(b, a) += drive.rabi_ghz / 2.0;
      }
    }
  }
}

}  // namespace

void Hamiltonian::validate() const {
  if (dim() != (1 << n_qubits) || matrix_ghz.cols() != matrix_ghz.rows())
    throw std::invalid_argument("Hamiltonian: dimension must be 2^n_qubits");
  if (!is_hermitian(matrix_ghz, 1e-10))
    throw std::invalid_argument("Hamiltonian: matrix is not Hermitian");
}

bool LaserDrive::addresses(int site, int n_qubits) const {
  if (site < 1 || site > n_qubits)
    throw std::out_of_range("LaserDrive: site index out of range");
  if (addressed.empty()) return true;
  if (static_cast<int>(addressed.size()) != n_qubits)
    throw std::invalid_argument("LaserDrive: addressed mask size mismatch");
  return addressed[site - 1];
}

Hamiltonian build_dimer(double nu1_thz, double nu2_thz, double v12_ghz) {
  check_frequency(nu1_thz, "nu1_thz");
  check_frequency(nu2_thz, "nu2_thz");
  const double nu0 = 0.5 * (nu1_thz + nu2_thz) * 1e3;   // GHz
  const double delta = (nu1_thz - nu2_thz) * 1e3;       // GHz
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = -nu0;
  m(1, 1) = -delta / 2.0;
  m(2, 2) = delta / 2.0;
  m(3, 3) = nu0;
  m(1, 2) = m(2, 1) = v12_ghz;
  return make(2, std::move(m), Frame::lab_rwa, 0.0);
}

Hamiltonian build_dimer_driven(const Hamiltonian& base, const LaserDrive& drive) {
  if (base.n_qubits != 2 || base.frame != Frame::lab_rwa)
    throw std::invalid_argument("build_dimer_driven: base must be a lab-frame dimer");
  if (drive.rabi_ghz < 0)
    throw std::invalid_argument("build_dimer_driven: Rabi frequency must be >= 0");
  // Recover nu1, nu2, V12 from the structure laid down by build_dimer.
  const double nu0 = base.matrix_ghz(3, 3).real();        // GHz
  const double delta = -2.0 * base.matrix_ghz(1, 1).real();
  const double v12 = base.matrix_ghz(1, 2).real();
  const double nu1 = nu0 + delta / 2.0, nu2 = nu0 - delta / 2.0;
  const double nul = drive.frequency_thz * 1e3;
  Mat m = Mat::Zero(4, 4);
  m(1, 1) = nu2 - nul;
  m(2, 2) = nu1 - nul;
  m(3, 3) = nu1 + nu2 - 2.0 * nul;
  m(1, 2) = m(2, 1) = v12;
  add_drive_couplings(m, 2, drive);
  return make(2, std::move(m), Frame::laser_rotating, drive.frequency_thz);
}

Hamiltonian build_trimer_bare(double nu_thz, double nu2_thz, double v_ghz,
                              double v13_ghz) {
  check_frequency(nu_thz, "nu_thz");
  check_frequency(nu2_thz, "nu2_thz");
  const double nu = nu_thz * 1e3, nu2 = nu2_thz * 1e3;  // GHz
  const double delta = nu2 - nu;
  const double nu0 = (2.0 * nu + nu2) / 3.0;
  Mat m = Mat::Zero(8, 8);
  // Basis |000>..|111>, site 1 = leftmost bit. Singles: |001>=1, |010>=2,
  // |100>=4; doubles: |011>=3, |101>=5, |110>=6.
  m(0, 0) = -1.5 * nu0;
  m(1, 1) = -nu2 / 2.0;
  m(2, 2) = -(nu - delta) / 2.0;
  m(4, 4) = -nu2 / 2.0;
  m(3, 3) = nu2 / 2.0;
  m(5, 5) = (nu - delta) / 2.0;
  m(6, 6) = nu2 / 2.0;
  m(7, 7) = 1.5 * nu0;
  // Excitation hopping: V between adjacent sites, V13 between the outer pair.
  auto couple = [&m](int a, int b, double v) { m(a, b) += v; m(b, a) += v; };
  couple(1, 2, v_ghz);    // |001> <-> |010>
  couple(2, 4, v_ghz);    // |010> <-> |100>
  couple(1, 4, v13_ghz);  // |001> <-> |100>
  couple(3, 5, v_ghz);    // |011> <-> |101>
  couple(5, 6, v_ghz);    // |101> <-> |110>
  couple(3, 6, v13_ghz);  // |011> <-> |110>
  return make(3, std::move(m), Frame::lab_rwa, 0.0);
}

Hamiltonian build_trimer_driven(const TrimerParams& p, const LaserDrive& drive) {
  check_frequency(p.nu_thz, "nu_thz");
  check_frequency(p.nu2_thz, "nu2_thz");
  if (drive.rabi_ghz < 0)
    throw std::invalid_argument("build_trimer_driven: Rabi frequency must be >= 0");
  const double nu = p.nu_thz * 1e3, nu2 = p.nu2_thz * 1e3;
  const double nul = drive.frequency_thz * 1e3;
  const double delta = nu2 - nu;
  const double nu0 = (2.0 * nu + nu2) / 3.0;
  const double d1 = 3.0 * (nu0 - nul);
  const double d2 = nu2 - nul;
  const double d3 = nu - delta - nul;
  Mat m = Mat::Zero(8, 8);
  m(0, 0) = -d1 / 2.0;
  m(1, 1) = -d2 / 2.0;
  m(2, 2) = -d3 / 2.0;
  m(4, 4) = -d2 / 2.0;
  m(3, 3) = d2 / 2.0;
  m(5, 5) = d3 / 2.0;
  m(6, 6) = d2 / 2.0;
  m(7, 7) = d1 / 2.0;
  auto couple = [&m](int a, int b, double v) { m(a, b) += v; m(b, a) += v; };
  couple(1, 2, p.v_ghz);
  couple(2, 4, p.v_ghz);
  couple(1, 4, p.v13_ghz);
  couple(3, 5, p.v_ghz);
  couple(5, 6, p.v_ghz);
  couple(3, 6, p.v13_ghz);
  add_drive_couplings(m, 3, drive);
  return make(3, std::move(m), Frame::laser_rotating, drive.frequency_thz);
}

Hamiltonian rotating_frame(const Hamiltonian& lab, double frame_freq_thz) {
  if (lab.frame != Frame::lab_rwa)
    throw std::invalid_argument("rotating_frame: input must be a lab-frame Hamiltonian");
  Mat m = lab.matrix_ghz - frame_freq_thz * 1e3 * number_operator(lab.n_qubits);
  m -= m(0, 0) * Mat::Identity(m.rows(), m.cols());
  return make(lab.n_qubits, std::move(m), Frame::laser_rotating, frame_freq_thz);
}

}  // namespace molq
