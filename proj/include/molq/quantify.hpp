#ifndef MOLQ_QUANTIFY_HPP
#define MOLQ_QUANTIFY_HPP

#include <array>
#include <utility>
#include <vector>

#include "molq/state.hpp"

namespace molq {

/// Measurement angles of the (3,2,2) Bell scenario: per site the two
/// dichotomic observables A_i = cos(theta_i) sz + sin(theta_i) sx and
/// B_i = cos(phi_i) sz + sin(phi_i) sx.
struct MerminSetting {
  std::array<double, 3> theta{};
  std::array<double, 3> phi{};
  void validate() const;  // all angles within [-pi, pi]
};

/// Split of the sites into side A and its complement. Sites are 1-based.
struct Bipartition {
  std::vector<int> side_a;
  int n_qubits = 0;

  Bipartition() = default;
  Bipartition(std::vector<int> side_a, int n_qubits);
  std::vector<int> side_b() const;
  bool in_a(int site) const;
};

/// Uhlmann fidelity F(rho, sigma) = Tr sqrt(sqrt(sigma) rho sqrt(sigma))
/// (the trace of the matrix square root, not its square).
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Wootters concurrence of a 4x4 state.
double concurrence(const DensityMatrix& rho);

/// Entanglement of formation, h((1 + sqrt(1 - C^2))/2).
double eof(const DensityMatrix& rho);

/// N = (||rho^{T_A}||_1 - 1)/2; zero for PPT states.
double negativity(const DensityMatrix& rho, const Bipartition& part);

Mat partial_transpose(const Mat& rho, const Bipartition& part);

/// Reduced state on `keep_sites` (1-based, any order-independent subset).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep_sites);

/// Mermin combination |<A1B2B3> + <B1A2B3> + <B1B2A3> - <A1A2A3>| built from
/// the full 8x8 observable products.
double mermin_value(const DensityMatrix& rho, const MerminSetting& s);

struct MerminOptions {
  int grid_points = 13;   // per angle, uniform over [-pi, pi]
  int top_k = 8;          // seeds kept for local refinement
  double min_step = 1e-5; // compass search stops below this step (rad)
};

/// Two-stage deterministic maximization of the Mermin value: full grid scan
/// followed by compass refinement from the best grid cells. The result is a
/// lower bound on the true maximum; ties prefer the lexicographically
/// smallest angle tuple.
std::pair<double, MerminSetting> mermin_maximize(const DensityMatrix& rho,
                                                 const MerminOptions& opt = {});

}  // namespace molq

#endif
