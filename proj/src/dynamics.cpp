#include "molq/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace molq {

namespace {

// Gauge-adjusted damping matrix G = eta Gamma eta, eta_i = (-1)^(i+1).
Eigen::MatrixXd gauge_damping(const Eigen::MatrixXd& gamma) {
  Eigen::MatrixXd g = gamma;
  const auto n = gamma.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if ((i + j) % 2 == 1) g(i, j) = -gamma(i, j);
  return g;
}

struct Lindbladian {
  // rhs(rho) = M rho + rho M^dag + sum_ij G_ij s-_j rho s+_i, with
  // M = -i H - K/2 and K = sum_ij G_ij s+_i s-_j. Everything in rad/ps.
  Mat m;
  Eigen::MatrixXd g;  // 1/ps
  int n_qubits;
  int dim;

  Lindbladian(const Hamiltonian& h, const CollectiveParams& gamma) {
    n_qubits = h.n_qubits;
    dim = h.dim();
    if (gamma.damping_ghz.rows() != n_qubits)
      throw std::invalid_argument("evolve: damping matrix size does not match qubit count");
    gamma.validate();
    g = gauge_damping(gamma.damping_ghz) * kGhzToRadPerPs;
    Mat k = Mat::Zero(dim, dim);
    for (int i = 0; i < n_qubits; ++i) {
      const Mat sp_i = embed_site_op(sigma_minus().adjoint(), i + 1, n_qubits);
      for (int j = 0; j < n_qubits; ++j) {
        const Mat sm_j = embed_site_op(sigma_minus(), j + 1, n_qubits);
        k += g(i, j) * (sp_i * sm_j);
      }
    }
    m = cd(0, -1) * (h.matrix_ghz * kGhzToRadPerPs) - 0.5 * k;
  }

  // Jump term: (s-_j rho s+_i)[a,b] = rho[a + bit_j, b + bit_i] when the
  // corresponding bits of a and b are zero.
  void add_jumps(const Mat& rho, Mat& out) const {
    for (int i = 0; i < n_qubits; ++i) {
      const int mi = 1 << (n_qubits - 1 - i);
      for (int j = 0; j < n_qubits; ++j) {
        const double gij = g(i, j);
        if (gij == 0.0) continue;
        const int mj = 1 << (n_qubits - 1 - j);
        for (int a = 0; a < dim; ++a) {
          if (a & mj) continue;
          for (int b = 0; b < dim; ++b) {
            if (b & mi) continue;
            out(a, b) += gij * rho(a | mj, b | mi);
          }
        }
      }
    }
  }

  Mat rhs(const Mat& rho) const {
    Mat out = m * rho;
    out += out.adjoint().eval();
    add_jumps(rho, out);
    return out;
  }
};

}  // namespace

Mat dissipator(const DensityMatrix& rho, const CollectiveParams& gamma) {
  if (gamma.damping_ghz.rows() != rho.n_qubits)
    throw std::invalid_argument("dissipator: dimension mismatch");
  gamma.validate();
  const Eigen::MatrixXd g = gauge_damping(gamma.damping_ghz);  // GHz = 1/ns
  const int n = rho.n_qubits;
  Mat out = Mat::Zero(rho.dim(), rho.dim());
  for (int i = 1; i <= n; ++i) {
    const Mat sp_i = embed_site_op(sigma_minus().adjoint(), i, n);
    for (int j = 1; j <= n; ++j) {
      const Mat sm_j = embed_site_op(sigma_minus(), j, n);
      const Mat pp = sp_i * sm_j;
      out += g(i - 1, j - 1) * (sm_j * rho.matrix * sp_i -
                                0.5 * (pp * rho.matrix + rho.matrix * pp));
    }
  }
  return out;
}

Trajectory evolve(const Hamiltonian& h, const CollectiveParams& gamma,
                  const DensityMatrix& rho0, double t_final_ps, double dt_ps,
                  const RecordSpec& rec) {
  if (!(dt_ps > 0)) throw std::invalid_argument("evolve: dt must be positive");
  if (!(t_final_ps >= dt_ps))
    throw std::invalid_argument("evolve: t_final must be at least one step");
  if (rho0.dim() != h.dim())
    throw std::invalid_argument("evolve: state/Hamiltonian dimension mismatch");

  const Lindbladian lind(h, gamma);
  const long n_steps = std::lround(t_final_ps / dt_ps);
  int k = rec.decimation;
  if (k <= 0) k = static_cast<int>(n_steps / rec.max_records) + 1;

  Trajectory traj;
  traj.times_ps.reserve(n_steps / k + 2);
  traj.states.reserve(n_steps / k + 2);
  traj.captures.resize(rec.capture_times_ps.size());
  std::vector<bool> captured(rec.capture_times_ps.size(), false);

  Mat rho = rho0.matrix;
  auto record = [&](double t) {
    DensityMatrix snap(rho, rho0.n_qubits);
    const double mineig = snap.min_eigenvalue();
    if (mineig < -1e-5) {
      std::ostringstream msg;
      msg << "evolve: min eigenvalue " << mineig << " at t = " << t
          << " ps; reduce dt (currently " << dt_ps << " ps, suggest "
          << step_size_suggest(h) << " ps)";
      throw IntegrationError(msg.str());
    }
    traj.times_ps.push_back(t);
    traj.states.push_back(std::move(snap));
  };

  record(0.0);
  for (long step = 1; step <= n_steps; ++step) {
    const Mat k1 = lind.rhs(rho);
    const Mat k2 = lind.rhs(rho + (0.5 * dt_ps) * k1);
    const Mat k3 = lind.rhs(rho + (0.5 * dt_ps) * k2);
    const Mat k4 = lind.rhs(rho + dt_ps * k3);
    rho += (dt_ps / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = 0.5 * (rho + rho.adjoint()).eval();

    const double t = step * dt_ps;
    const double drift = std::abs(rho.trace() - cd(1.0, 0.0));
    if (drift > 1e-6) {
      std::ostringstream msg;
      msg << "evolve: trace drift " << drift << " at t = " << t
          << " ps; reduce dt (currently " << dt_ps << " ps, suggest "
          << step_size_suggest(h) << " ps)";
      throw IntegrationError(msg.str());
    }
    if (step % k == 0 || step == n_steps) record(t);
    for (size_t c = 0; c < rec.capture_times_ps.size(); ++c) {
      if (!captured[c] && std::abs(t - rec.capture_times_ps[c]) <= dt_ps / 2) {
        traj.captures[c] = DensityMatrix(rho, rho0.n_qubits);
        captured[c] = true;
      }
    }
  }
  for (size_t c = 0; c < captured.size(); ++c)
    if (!captured[c])
      throw std::invalid_argument("evolve: capture time beyond t_final or off the step grid");
  return traj;
}

double step_size_suggest(const Hamiltonian& h, double fallback_ps) {
  const double scale = h.matrix_ghz.cwiseAbs().maxCoeff() * kGhzToRadPerPs;
  if (scale <= 0) return fallback_ps;
  return 1.0 / (50.0 * scale);
}

}  // namespace molq
