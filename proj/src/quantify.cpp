#include "molq/quantify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace molq {

namespace {

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

void check_sites(const std::vector<int>& sites, int n, const char* fn) {
  for (int s : sites)
    if (s < 1 || s > n)
      throw std::invalid_argument(std::string(fn) + ": site index out of range");
  std::vector<int> sorted = sites;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument(std::string(fn) + ": duplicate site index");
}

}  // namespace

void MerminSetting::validate() const {
  for (double a : theta)
    if (a < -M_PI - 1e-12 || a > M_PI + 1e-12)
      throw std::invalid_argument("MerminSetting: theta outside [-pi, pi]");
  for (double a : phi)
    if (a < -M_PI - 1e-12 || a > M_PI + 1e-12)
      throw std::invalid_argument("MerminSetting: phi outside [-pi, pi]");
}

Bipartition::Bipartition(std::vector<int> a, int n) : side_a(std::move(a)), n_qubits(n) {
  check_sites(side_a, n, "Bipartition");
  if (side_a.empty() || side_a.size() >= static_cast<size_t>(n))
    throw std::invalid_argument("Bipartition: both sides must be nonempty");
}

std::vector<int> Bipartition::side_b() const {
  std::vector<int> b;
  for (int s = 1; s <= n_qubits; ++s)
    if (!in_a(s)) b.push_back(s);
  return b;
}

bool Bipartition::in_a(int site) const {
  return std::find(side_a.begin(), side_a.end(), site) != side_a.end();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("fidelity: dimension mismatch");
  const Mat sqrt_sigma = hermitian_sqrt(0.5 * (sigma.matrix + sigma.matrix.adjoint()));
  const Mat inner = sqrt_sigma * (0.5 * (rho.matrix + rho.matrix.adjoint())) * sqrt_sigma;
  const Mat root = hermitian_sqrt(0.5 * (inner + inner.adjoint()), 1e-9);
  double f = root.trace().real();
  return std::clamp(f, 0.0, 1.0);
}

double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4)
    throw std::invalid_argument("concurrence: needs a two-qubit state");
  const Mat yy = kron(pauli_y(), pauli_y());
  const Mat sqrt_rho = hermitian_sqrt(0.5 * (rho.matrix + rho.matrix.adjoint()), 1e-9);
  // Hermitian PSD companion of rho (YY) conj(rho) (YY) with the same spectrum.
  const Mat a = sqrt_rho * yy * rho.matrix.conjugate() * yy * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (a + a.adjoint()), Eigen::EigenvaluesOnly);
  Eigen::Vector4d lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(lam.data(), lam.data() + 4, std::greater<double>());
  return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

double eof(const DensityMatrix& rho) {
  const double c = concurrence(rho);
  const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
  return binary_entropy(x);
}

Mat partial_transpose(const Mat& rho, const Bipartition& part) {
  const int n = part.n_qubits;
  const int dim = 1 << n;
  if (rho.rows() != dim || rho.cols() != dim)
    throw std::invalid_argument("partial_transpose: dimension mismatch");
  if (part.side_a.empty() || part.side_a.size() == static_cast<size_t>(n))
    throw std::invalid_argument("partial_transpose: partition sides must be nonempty");
  int mask = 0;
  for (int s : part.side_a) mask |= 1 << (n - s);
  Mat out(dim, dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      const int a2 = (a & ~mask) | (b & mask);
      const int b2 = (b & ~mask) | (a & mask);
      out(a2, b2) = rho(a, b);
    }
  }
  return out;
}

double negativity(const DensityMatrix& rho, const Bipartition& part) {
  if (part.n_qubits != rho.n_qubits)
    throw std::invalid_argument("negativity: partition size mismatch");
  const Mat pt = partial_transpose(rho.matrix, part);
  const double norm1 = trace_norm_hermitian(0.5 * (pt + pt.adjoint()));
  return std::max(0.0, 0.5 * (norm1 - 1.0));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep_sites) {
  const int n = rho.n_qubits;
  if (keep_sites.empty())
    throw std::invalid_argument("partial_trace: keep set must be nonempty");
  check_sites(keep_sites, n, "partial_trace");
  std::vector<int> keep = keep_sites;
  std::sort(keep.begin(), keep.end());
  const int nk = static_cast<int>(keep.size());
  const int dk = 1 << nk;
  std::vector<int> drop;
  for (int s = 1; s <= n; ++s)
    if (!std::binary_search(keep.begin(), keep.end(), s)) drop.push_back(s);
  const int nd = static_cast<int>(drop.size());
  const int dd = 1 << nd;

  auto full_index = [&](int kept_bits, int dropped_bits) {
    int idx = 0;
    for (int k = 0; k < nk; ++k)
      if (kept_bits & (1 << (nk - 1 - k))) idx |= 1 << (n - keep[k]);
    for (int d = 0; d < nd; ++d)
      if (dropped_bits & (1 << (nd - 1 - d))) idx |= 1 << (n - drop[d]);
    return idx;
  };

  Mat out = Mat::Zero(dk, dk);
  for (int a = 0; a < dk; ++a)
    for (int b = 0; b < dk; ++b)
      for (int e = 0; e < dd; ++e)
        out(a, b) += rho.matrix(full_index(a, e), full_index(b, e));
  return DensityMatrix(std::move(out), nk);
}

namespace {

// Correlators T[p][q][r] = Tr(rho sp x sq x sr), p,q,r in {z, x}; every
// Mermin value for z-x plane observables is a trilinear form in these eight
// numbers, which makes the grid stage cheap.
struct CorrelatorTensor {
  double t[2][2][2];

  explicit CorrelatorTensor(const Mat& rho) {
    const Mat paulis[2] = {pauli_z(), pauli_x()};
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q)
        for (int r = 0; r < 2; ++r)
          t[p][q][r] =
              (rho * kron({paulis[p], paulis[q], paulis[r]})).trace().real();
  }

  double corr(double a1, double a2, double a3) const {
    const double u1[2] = {std::cos(a1), std::sin(a1)};
    const double u2[2] = {std::cos(a2), std::sin(a2)};
    const double u3[2] = {std::cos(a3), std::sin(a3)};
    double s = 0;
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q)
        for (int r = 0; r < 2; ++r) s += t[p][q][r] * u1[p] * u2[q] * u3[r];
    return s;
  }

  double value(const std::array<double, 6>& a) const {
    // a = (theta1, theta2, theta3, phi1, phi2, phi3)
    return std::abs(corr(a[0], a[4], a[5]) + corr(a[3], a[1], a[5]) +
                    corr(a[3], a[4], a[2]) - corr(a[0], a[1], a[2]));
  }
};

bool lex_less(const std::array<double, 6>& a, const std::array<double, 6>& b) {
  for (int i = 0; i < 6; ++i) {
    if (a[i] < b[i] - 1e-15) return true;
    if (a[i] > b[i] + 1e-15) return false;
  }
  return false;
}

}  // namespace

double mermin_value(const DensityMatrix& rho, const MerminSetting& s) {
  if (rho.n_qubits != 3)
    throw std::invalid_argument("mermin_value: needs a three-qubit state");
  s.validate();
  const Mat sz = pauli_z(), sx = pauli_x();
  std::array<Mat, 3> a_obs, b_obs;
  for (int i = 0; i < 3; ++i) {
    a_obs[i] = std::cos(s.theta[i]) * sz + std::sin(s.theta[i]) * sx;
    b_obs[i] = std::cos(s.phi[i]) * sz + std::sin(s.phi[i]) * sx;
  }
  auto expect = [&](const Mat& o1, const Mat& o2, const Mat& o3) {
    return (rho.matrix * kron({o1, o2, o3})).trace().real();
  };
  return std::abs(expect(a_obs[0], b_obs[1], b_obs[2]) +
                  expect(b_obs[0], a_obs[1], b_obs[2]) +
                  expect(b_obs[0], b_obs[1], a_obs[2]) -
                  expect(a_obs[0], a_obs[1], a_obs[2]));
}

std::pair<double, MerminSetting> mermin_maximize(const DensityMatrix& rho,
                                                 const MerminOptions& opt) {
  if (rho.n_qubits != 3)
    throw std::invalid_argument("mermin_maximize: needs a three-qubit state");
  if (opt.grid_points < 2 || opt.top_k < 1)
    throw std::invalid_argument("mermin_maximize: bad options");
  const CorrelatorTensor ct(rho.matrix);

  const int n = opt.grid_points;
  std::vector<double> grid(n);
  for (int k = 0; k < n; ++k) grid[k] = -M_PI + 2.0 * M_PI * k / (n - 1);

  // Stage 1: exhaustive grid scan keeping the best `top_k` seeds. The grid
  // correlators are precomputed (n^3 table), so each of the n^6 settings
  // costs four lookups.
  std::vector<double> m(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        m[(i * n + j) * n + k] = ct.corr(grid[i], grid[j], grid[k]);
  auto tab = [&](int i, int j, int k) { return m[(i * n + j) * n + k]; };

  using Seed = std::pair<double, std::array<double, 6>>;
  std::vector<Seed> seeds;
  auto offer = [&](double v, const std::array<double, 6>& a) {
    if (static_cast<int>(seeds.size()) == opt.top_k && v < seeds.back().first)
      return;
    if (static_cast<int>(seeds.size()) < opt.top_k) {
      seeds.push_back({v, a});
    } else if (v > seeds.back().first ||
               (v == seeds.back().first && lex_less(a, seeds.back().second))) {
      seeds.back() = {v, a};
    }
    std::sort(seeds.begin(), seeds.end(), [](const Seed& x, const Seed& y) {
      return x.first > y.first ||
             (x.first == y.first && lex_less(x.second, y.second));
    });
  };

  for (int t1 = 0; t1 < n; ++t1)
    for (int t2 = 0; t2 < n; ++t2)
      for (int t3 = 0; t3 < n; ++t3)
        for (int p1 = 0; p1 < n; ++p1)
          for (int p2 = 0; p2 < n; ++p2)
            for (int p3 = 0; p3 < n; ++p3) {
              const double v = std::abs(tab(t1, p2, p3) + tab(p1, t2, p3) +
                                        tab(p1, p2, t3) - tab(t1, t2, t3));
              offer(v, {grid[t1], grid[t2], grid[t3], grid[p1], grid[p2],
                        grid[p3]});
            }

  // Stage 2: compass search from each seed, halving the step on stall.
  const double step0 = M_PI / (n - 1);
  double best_val = -1.0;
  std::array<double, 6> best_angles{};
  for (const Seed& seed : seeds) {
    std::array<double, 6> x = seed.second;
    double v = ct.value(x);
    double step = step0;
    while (step > opt.min_step) {
      bool improved = false;
      for (int k = 0; k < 6; ++k) {
        for (double sgn : {1.0, -1.0}) {
          std::array<double, 6> y = x;
          y[k] += sgn * step;
          const double vy = ct.value(y);
          if (vy > v + 1e-15) {
            x = y;
            v = vy;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (v > best_val || (v == best_val && lex_less(x, best_angles))) {
      best_val = v;
      best_angles = x;
    }
  }

  // Wrap refined angles back into [-pi, pi].
  for (double& ang : best_angles) {
    while (ang > M_PI) ang -= 2.0 * M_PI;
    while (ang < -M_PI) ang += 2.0 * M_PI;
  }
  MerminSetting s;
  s.theta = {best_angles[0], best_angles[1], best_angles[2]};
  s.phi = {best_angles[3], best_angles[4], best_angles[5]};
  return {best_val, s};
}

}  // namespace molq
