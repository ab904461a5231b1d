#include "molq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "molq/quantify.hpp"
#include "molq/state.hpp"

namespace molq {

namespace {

void fix_phase(Vec& v) {
  Eigen::Index imax = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best + 1e-12) {
      best = a;
      imax = i;
    }
  }
  const cd z = v(imax);
  if (std::abs(z) > 0) v *= std::conj(z) / std::abs(z);
}

}  // namespace

Vec EigenSystem::state(int label) const {
  for (size_t k = 0; k < labels.size(); ++k)
    if (labels[k] == label) return states.col(static_cast<Eigen::Index>(k));
  throw std::out_of_range("EigenSystem: no such label");
}

double EigenSystem::energy(int label) const {
  for (size_t k = 0; k < labels.size(); ++k)
    if (labels[k] == label) return energies(static_cast<Eigen::Index>(k));
  throw std::out_of_range("EigenSystem: no such label");
}

EigenSystem eigensystem_numeric(const Hamiltonian& h) {
  if (!is_hermitian(h.matrix_ghz, 1e-10))
    throw std::invalid_argument("eigensystem_numeric: non-Hermitian input");
  Eigen::SelfAdjointEigenSolver<Mat> es(h.matrix_ghz);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigensystem_numeric: eigensolver failed");
  EigenSystem sys;
  const double scale = h.frame == Frame::lab_rwa ? 1e-3 : 1.0;  // GHz -> THz in lab
  sys.unit = h.frame == Frame::lab_rwa ? "THz" : "GHz";
  sys.energies = es.eigenvalues() * scale;
  sys.states = es.eigenvectors();
  for (Eigen::Index k = 0; k < sys.states.cols(); ++k) {
    Vec v = sys.states.col(k);
    fix_phase(v);
    sys.states.col(k) = v;
  }
  sys.labels.resize(sys.states.cols());
  std::iota(sys.labels.begin(), sys.labels.end(), 1);
  return sys;
}

EigenSystem trimer_eigensystem_analytic(double nu_thz, double nu2_thz,
                                        double v_ghz, double v13_ghz) {
  const double nu = nu_thz, nu2 = nu2_thz;           // THz
  const double v = v_ghz * 1e-3, v13 = v13_ghz * 1e-3;  // THz
  const double dm = nu2 - nu;
  const double nu0 = (2.0 * nu + nu2) / 3.0;
  const double delta_m = std::sqrt(8.0 * v * v + (v13 - dm) * (v13 - dm));
  const double delta_p = std::sqrt(8.0 * v * v + (v13 + dm) * (v13 + dm));

  auto check_denominator = [](double d) {
    if (!(d > 1e-12))
      throw std::invalid_argument(
          "trimer_eigensystem_analytic: degenerate configuration "
          "(vanishing normalization denominator); use the numeric path");
  };

  std::vector<double> energies(8);
  std::vector<Vec> vectors(8, Vec::Zero(8));
  // Basis indices: |001>=1, |010>=2, |011>=3, |100>=4, |101>=5, |110>=6.
  energies[0] = -1.5 * nu0;
  vectors[0](0) = 1.0;
  energies[1] = -(nu2 / 2.0 + v13);
  vectors[1](1) = -1.0 / std::sqrt(2.0);
  vectors[1](4) = 1.0 / std::sqrt(2.0);

  const double den3 = delta_m + v13 - dm;
  check_denominator(delta_m);
  check_denominator(den3);
  energies[2] = -0.5 * (nu - v13 + delta_m);
  vectors[2](1) = vectors[2](4) = 2.0 * v / std::sqrt(2.0 * delta_m * den3);
  vectors[2](2) = -std::sqrt(den3 / (2.0 * delta_m));

  const double den4 = delta_m - v13 + dm;
  check_denominator(den4);
  energies[3] = -0.5 * (nu - v13 - delta_m);
  vectors[3](1) = vectors[3](4) = 2.0 * v / std::sqrt(2.0 * delta_m * den4);
  vectors[3](2) = std::sqrt(den4 / (2.0 * delta_m));

  const double den5 = delta_p + v13 + dm;
  check_denominator(delta_p);
  check_denominator(den5);
  energies[4] = 0.5 * (nu + v13 - delta_p);
  vectors[4](3) = vectors[4](6) = 2.0 * v / std::sqrt(2.0 * delta_p * den5);
  vectors[4](5) = -std::sqrt(den5 / (2.0 * delta_p));

  const double den6 = delta_p - v13 - dm;
  check_denominator(den6);
  energies[5] = 0.5 * (nu + v13 + delta_p);
  vectors[5](3) = vectors[5](6) = 2.0 * v / std::sqrt(2.0 * delta_p * den6);
  vectors[5](5) = std::sqrt(den6 / (2.0 * delta_p));

  energies[6] = nu2 / 2.0 - v13;
  vectors[6](3) = -1.0 / std::sqrt(2.0);
  vectors[6](6) = 1.0 / std::sqrt(2.0);
  energies[7] = 1.5 * nu0;
  vectors[7](7) = 1.0;

  std::vector<int> order(8);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return energies[a] < energies[b]; });

  EigenSystem sys;
  sys.unit = "THz";
  sys.energies.resize(8);
  sys.states = Mat::Zero(8, 8);
  sys.labels.resize(8);
  for (int k = 0; k < 8; ++k) {
    sys.energies(k) = energies[order[k]];
    Vec v_k = vectors[order[k]].normalized();
    fix_phase(v_k);
    sys.states.col(k) = v_k;
    sys.labels[k] = order[k] + 1;
  }
  return sys;
}

EntanglementClass eigenstate_entanglement_class(const Vec& state) {
  if (state.size() != 8)
    throw std::invalid_argument("eigenstate_entanglement_class: need a 3-qubit state");
  if (std::abs(state.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("eigenstate_entanglement_class: state must be normalized");
  const DensityMatrix rho = DensityMatrix::pure(state);
  int entangled_cuts = 0;
  for (int site = 1; site <= 3; ++site) {
    const Bipartition cut({site}, 3);
    if (negativity(rho, cut) > 1e-6) ++entangled_cuts;
  }
  if (entangled_cuts == 0) return EntanglementClass::product;
  if (entangled_cuts == 3) return EntanglementClass::tripartite;
  return EntanglementClass::pairwise;
}

std::string to_string(EntanglementClass c) {
  switch (c) {
    case EntanglementClass::product: return "product";
    case EntanglementClass::pairwise: return "pairwise";
    case EntanglementClass::tripartite: return "tripartite";
  }
  return "unknown";
}

}  // namespace molq
