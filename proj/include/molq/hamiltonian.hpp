#ifndef MOLQ_HAMILTONIAN_HPP
#define MOLQ_HAMILTONIAN_HPP

#include <string>
#include <vector>

#include "molq/linalg.hpp"

namespace molq {

enum class Frame { lab_rwa, laser_rotating };

/// Dense Hermitian Hamiltonian in the computational product basis
/// (binary-ascending, site 1 = leftmost bit). Entries in GHz.
struct Hamiltonian {
  Mat matrix_ghz;
  int n_qubits = 0;
  Frame frame = Frame::lab_rwa;
  double frame_freq_thz = 0.0;  // rotation frequency per excitation; 0 in the lab frame
  std::vector<std::string> basis;

  int dim() const { return static_cast<int>(matrix_ghz.rows()); }
  void validate() const;  // Hermiticity, dimension = 2^n
};

/// Continuous-wave drive. `addressed` selects which sites the field acts on;
/// the default (empty) means every site, i.e. a diffraction-limited global
/// beam. Single-site masks model the indirect "computational" local action.
struct LaserDrive {
  double rabi_ghz = 0.0;
  double frequency_thz = 0.0;
  std::vector<bool> addressed;

  bool addresses(int site, int n_qubits) const;
};

/// 4x4 two-qubit Hamiltonian: diagonal (-nu0, -d/2, +d/2, +nu0) with
/// d = nu1 - nu2, 2 nu0 = nu1 + nu2, and V12 coupling |01> <-> |10>.
Hamiltonian build_dimer(double nu1_thz, double nu2_thz, double v12_ghz);

/// Time-independent laser-frame dimer: diagonal detunings nu_i - nu_L per
/// excitation (ground level at zero), V12 coupling, and Omega/2 entries
/// connecting states that differ by one excitation on an addressed site.
Hamiltonian build_dimer_driven(const Hamiltonian& base, const LaserDrive& drive);

struct TrimerParams {
  double nu_thz;    // outer sites 1 and 3
  double nu2_thz;   // middle site
  double v_ghz;     // V12 = V23
  double v13_ghz;
};

/// 8x8 bare trimer with nu1 = nu3 = nu, middle-site detuning
/// Delta- = nu2 - nu, couplings V (nearest-neighbour) and V13.
Hamiltonian build_trimer_bare(double nu_thz, double nu2_thz, double v_ghz,
                              double v13_ghz);

/// Laser-frame driven trimer: diagonal (-d1, -d2, -d3, d2, -d2, d3, d2, d1)/2
/// with d1 = 3(nu0 - nuL), d2 = nu2 - nuL, d3 = nu - Delta- - nuL, couplings
/// V, V13 inside the excitation blocks and Omega/2 on addressed single flips.
Hamiltonian build_trimer_driven(const TrimerParams& params, const LaserDrive& drive);

/// Rotating frame at `frame_freq_thz` per excitation; the ground-state entry
/// is shifted to zero. Undriven dynamics is run in this frame at nu0 so only
/// detunings remain on the diagonal.
Hamiltonian rotating_frame(const Hamiltonian& lab, double frame_freq_thz);

}  // namespace molq

#endif
