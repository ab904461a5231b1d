#ifndef MOLQ_DYNAMICS_HPP
#define MOLQ_DYNAMICS_HPP

#include <stdexcept>
#include <vector>

#include "molq/geometry.hpp"
#include "molq/hamiltonian.hpp"
#include "molq/state.hpp"

namespace molq {

/// Thrown when the integrator detects trace drift or loss of positivity.
struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RecordSpec {
  /// Keep every k-th step; 0 picks k automatically so that at most
  /// `max_records` snapshots are stored. The final step is always kept.
  int decimation = 0;
  int max_records = 20000;
  /// Extra exact-time snapshots (must align with the step grid within dt/2).
  std::vector<double> capture_times_ps;
};

struct Trajectory {
  std::vector<double> times_ps;
  std::vector<DensityMatrix> states;
  std::vector<DensityMatrix> captures;  // aligned with RecordSpec::capture_times_ps

  size_t size() const { return times_ps.size(); }
  const DensityMatrix& at(size_t k) const { return states.at(k); }
};

/// Dissipative part of d rho / dt in GHz (1/ns) for cross-damped collective
/// decay. Cross terms are evaluated in the alternating-site local gauge
/// eta_i = (-1)^(i+1) (G = eta Gamma eta), the convention under which a zig-zag
/// chain's negative nearest-neighbour Gamma_ij makes the antisymmetric
/// single-excitation state the subradiant one. The congruence keeps the
/// damping matrix PSD, so the map stays completely positive.
Mat dissipator(const DensityMatrix& rho, const CollectiveParams& gamma);

/// Fixed-step RK4 integration of d rho/dt = -i [H, rho] + dissipator.
/// rho is re-Hermitized each step ((rho + rho^dag)/2); trace drift above 1e-6
/// or a recorded min eigenvalue below -1e-5 aborts with a step-size hint.
/// Trace is never silently renormalized.
Trajectory evolve(const Hamiltonian& h, const CollectiveParams& gamma,
                  const DensityMatrix& rho0, double t_final_ps, double dt_ps,
                  const RecordSpec& rec = {});

/// Suggested fixed step: 1/50 of the timescale set by the largest matrix
/// entry; `fallback_ps` for an all-zero Hamiltonian.
double step_size_suggest(const Hamiltonian& h, double fallback_ps = 0.01);

}  // namespace molq

#endif
