#include "molq/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace molq {

namespace {

void check_positive(double v, const char* what) {
  if (!(v > 0))
    throw std::invalid_argument(std::string(what) + " must be positive");
}

void check_site_index(const MolecularArray& a, int i, const char* fn) {
  if (i < 1 || i > a.size())
    throw std::out_of_range(std::string(fn) + ": site index " +
                            std::to_string(i) + " out of range");
}

// Shared orientation-factor terms of the retarded dipole-dipole expressions:
// a = mu_i . mu_j, b = (mu_i . r_hat)(mu_j . r_hat), z = n k r with
// k = omega_ij / c and omega_ij = pi (nu_i + nu_j).
struct PairGeometry {
  double a, b, z, pref;  // pref = sqrt(Gamma_i Gamma_j) in GHz
};

PairGeometry pair_geometry(const MolecularArray& array, int i, int j) {
  const DipoleSite& si = array.sites[i - 1];
  const DipoleSite& sj = array.sites[j - 1];
  const Vec3 rij_m = (sj.position_nm - si.position_nm) * 1e-9;
  const double r = rij_m.norm();
  if (r <= 0)
    throw std::invalid_argument("pair geometry: zero separation between sites");
  const Vec3 rhat = rij_m / r;
  const double omega = M_PI * (si.nu_thz + sj.nu_thz) * 1e12;  // rad/s
  const double z = array.refractive_index * (omega / kSpeedOfLight) * r;
  PairGeometry g;
  g.a = si.orientation.dot(sj.orientation);
  g.b = si.orientation.dot(rhat) * sj.orientation.dot(rhat);
  g.z = z;
  g.pref = std::sqrt((1.0 / si.t1_ns) * (1.0 / sj.t1_ns));
  return g;
}

}  // namespace

DipoleSite::DipoleSite(const Vec3& position_nm_, const Vec3& orientation_,
                       double dipole_debye_, double nu_thz_, double t1_ns_)
    : position_nm(position_nm_),
      orientation(orientation_),
      dipole_debye(dipole_debye_),
      nu_thz(nu_thz_),
      t1_ns(t1_ns_) {
  const double norm = orientation.norm();
  if (norm < 1e-6)
    throw std::invalid_argument("DipoleSite: orientation vector too short to normalize");
  orientation /= norm;
  check_positive(dipole_debye, "dipole_debye");
  check_positive(nu_thz, "nu_thz");
  check_positive(t1_ns, "t1_ns");
}

MolecularArray::MolecularArray(std::vector<DipoleSite> sites_, double n)
    : sites(std::move(sites_)), refractive_index(n) {
  if (sites.empty()) throw std::invalid_argument("MolecularArray: needs at least one site");
  if (refractive_index < 1.0)
    throw std::invalid_argument("MolecularArray: refractive index must be >= 1");
  for (size_t i = 0; i < sites.size(); ++i)
    for (size_t j = i + 1; j < sites.size(); ++j)
      if ((sites[i].position_nm - sites[j].position_nm).norm() <= 0)
        throw std::invalid_argument("MolecularArray: sites " + std::to_string(i + 1) +
                                    " and " + std::to_string(j + 1) +
                                    " share the same position");
}

void CollectiveParams::validate() const {
  const auto n = damping_ghz.rows();
  if (coupling_ghz.rows() != n || coupling_ghz.cols() != n || damping_ghz.cols() != n)
    throw std::invalid_argument("CollectiveParams: matrix shape mismatch");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(damping_ghz(i, i) > 0))
      throw std::invalid_argument("CollectiveParams: non-positive damping diagonal");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(coupling_ghz(i, j) - coupling_ghz(j, i)) > 1e-12 ||
          std::abs(damping_ghz(i, j) - damping_ghz(j, i)) > 1e-12)
        throw std::invalid_argument("CollectiveParams: matrices must be symmetric");
      const double bound =
          std::sqrt(damping_ghz(i, i) * damping_ghz(j, j)) + 1e-9;
      if (std::abs(damping_ghz(i, j)) > bound)
        throw std::invalid_argument(
            "CollectiveParams: |Gamma_ij| exceeds sqrt(Gamma_ii Gamma_jj)");
    }
  }
}

double collective_damping(const MolecularArray& array, int i, int j) {
  check_site_index(array, i, "collective_damping");
  check_site_index(array, j, "collective_damping");
  if (i == j) return 1.0 / array.sites[i - 1].t1_ns;
  const PairGeometry g = pair_geometry(array, i, j);
  const double sz = std::sin(g.z), cz = std::cos(g.z);
  return 1.5 * g.pref *
         ((g.a - g.b) * sz / g.z +
          (g.a - 3.0 * g.b) * (cz / (g.z * g.z) - sz / (g.z * g.z * g.z)));
}

double dipole_coupling(const MolecularArray& array, int i, int j) {
  check_site_index(array, i, "dipole_coupling");
  check_site_index(array, j, "dipole_coupling");
  if (i == j)
    throw std::invalid_argument("dipole_coupling: self-coupling is undefined");
  const PairGeometry g = pair_geometry(array, i, j);
  const double sz = std::sin(g.z), cz = std::cos(g.z);
  return 0.75 * g.pref *
         ((g.b - g.a) * cz / g.z +
          (g.a - 3.0 * g.b) * (cz / (g.z * g.z * g.z) + sz / (g.z * g.z)));
}

CollectiveParams collective_params(const MolecularArray& array) {
  const int n = array.size();
  CollectiveParams p;
  p.coupling_ghz = Eigen::MatrixXd::Zero(n, n);
  p.damping_ghz = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i <= n; ++i) {
    p.damping_ghz(i - 1, i - 1) = collective_damping(array, i, i);
    for (int j = i + 1; j <= n; ++j) {
      const double g = collective_damping(array, i, j);
      const double v = dipole_coupling(array, i, j);
      p.damping_ghz(i - 1, j - 1) = p.damping_ghz(j - 1, i - 1) = g;
      p.coupling_ghz(i - 1, j - 1) = p.coupling_ghz(j - 1, i - 1) = v;
    }
  }
  p.validate();
  return p;
}

std::vector<CouplingCurveRow> coupling_curve(const MolecularArray& templ,
                                             double r_min_nm, double r_max_nm,
                                             int steps) {
  if (!(r_min_nm > 0) || !(r_max_nm > r_min_nm))
    throw std::invalid_argument("coupling_curve: need 0 < r_min < r_max");
  if (steps < 2) throw std::invalid_argument("coupling_curve: steps must be >= 2");
  if (templ.size() < 2)
    throw std::invalid_argument("coupling_curve: template needs >= 2 sites");

  double r_ref = std::numeric_limits<double>::infinity();
  for (int i = 0; i < templ.size(); ++i)
    for (int j = i + 1; j < templ.size(); ++j)
      r_ref = std::min(r_ref, (templ.sites[i].position_nm -
                               templ.sites[j].position_nm).norm());

  std::vector<CouplingCurveRow> rows;
  rows.reserve(steps);
  for (int k = 0; k < steps; ++k) {
    const double r = r_min_nm + (r_max_nm - r_min_nm) * k / (steps - 1);
    MolecularArray scaled = templ;
    const Vec3 origin = templ.sites[0].position_nm;
    for (auto& s : scaled.sites)
      s.position_nm = origin + (s.position_nm - origin) * (r / r_ref);
    const CollectiveParams p = collective_params(scaled);
    rows.push_back({r, p.coupling_ghz, p.damping_ghz});
  }
  return rows;
}

double homogeneous_linewidth(double t1_ns, double t2_star_ns) {
  check_positive(t1_ns, "t1_ns");
  if (!(t2_star_ns > 0))
    throw std::invalid_argument("t2_star_ns must be positive (or infinite)");
  double gamma = 1.0 / (2.0 * M_PI * t1_ns);
  if (std::isfinite(t2_star_ns)) gamma += 1.0 / (M_PI * t2_star_ns);
  return gamma;
}

namespace {
// Dipole directions for the zig-zag presets. mu1 (= mu3) lies in the xy-plane
// at ~47.8 deg to the chain axis; mu2 is tilted out of plane so that
// mu1.mu2 = cos(2 pi / 3) exactly while the orientation factors hit the
// characterised couplings quoted above.
const Vec3 kOuterDipole(0.6721059132169789, 0.7404550232247539, 0.0);
const Vec3 kMiddleDipole(-0.4927130240612525, -0.2280282498106065, 0.8397838967310145);
constexpr double kSpacingNm = 2.2;
constexpr double kNuThz = 522.0;
constexpr double kT1Ns = 5.8;
constexpr double kDipoleDebye = 10.0;
}  // namespace

MolecularArray dimer_fig1() {
  std::vector<DipoleSite> sites{
      {Vec3(0, 0, 0), kOuterDipole, kDipoleDebye, kNuThz, kT1Ns},
      {Vec3(kSpacingNm, 0, 0), kMiddleDipole, kDipoleDebye, kNuThz, kT1Ns}};
  return MolecularArray(std::move(sites), 1.5);
}

MolecularArray trimer_fig1() {
  std::vector<DipoleSite> sites{
      {Vec3(0, 0, 0), kOuterDipole, kDipoleDebye, kNuThz, kT1Ns},
      {Vec3(kSpacingNm, 0, 0), kMiddleDipole, kDipoleDebye, kNuThz, kT1Ns},
      {Vec3(2 * kSpacingNm, 0, 0), kOuterDipole, kDipoleDebye, kNuThz, kT1Ns}};
  return MolecularArray(std::move(sites), 1.5);
}

}  // namespace molq
