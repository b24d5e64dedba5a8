#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qrepeater/params.hpp"

namespace qrep {

// Frequencies and optical paths of the two nodes feeding one CBSA.
// Node Z in {A, B} emits signal photons at f_signal_z[m] and idlers at
// f_idler[m]; within each node f_idler[m] + f_signal_z[m] is constant.
struct PhaseConfig {
  std::vector<double> f_idler;     // Hz, per frequency mode m
  std::vector<double> f_signal_a;  // Hz
  std::vector<double> f_signal_b;  // Hz
  double L_Ai = 0.0;  // m, idler path A -> CBSA
  double L_Bi = 0.0;
  double L_As = 0.0;  // m, signal path A -> memory
  double L_Bs = 0.0;
  double theta_a = 0.0;  // pump phase sum, rad
  double theta_b = 0.0;
  double light_speed = kVacuumLightSpeed;

  std::size_t modes() const { return f_idler.size(); }
};

std::vector<std::string> check(const PhaseConfig& config);
const PhaseConfig& validate(const PhaseConfig& config);

// Single-mode config, same idler and signal frequency at both nodes.
PhaseConfig uniform_phase_config(double f_idler, double f_signal);

// Reduces x to (-pi, pi].
double wrap_phase(double x);

// (2 pi / c) (f_i,m dLi + f_Bs,m L_Bs - f_As,m L_As) + (theta_B - theta_A)
double relative_phase_ss_unwrapped(const PhaseConfig& config, std::size_t m);
double relative_phase_ss(const PhaseConfig& config, std::size_t m);

// 2 pi (m - m') delta_f (dLi - dLs) / c
double relative_phase_st_unwrapped(double m, double m_prime, double delta_f, double delta_Li, double delta_Ls,
                                   double light_speed);
double relative_phase_st(double m, double m_prime, double delta_f, double delta_Li, double delta_Ls,
                         double light_speed);

// Same, with the frequency separation (m - m') delta_f given directly.
double relative_phase_st(double freq_separation, double path_difference, double light_speed);

// F = (1 + exp(-sigma^2 / 2)) / 2 under Gaussian phase noise.
double fidelity_from_sigma(double sigma);
// Inverse: sigma = sqrt(-2 ln(2F - 1)), 0.5 < F <= 1.
double sigma_for_fidelity(double fidelity);

struct PhaseBudget {
  double sigma = 0.0;             // rad
  double fidelity = 1.0;
  double freq_separation = 0.0;   // Hz
  double max_displacement = 0.0;  // m
};

// Path-difference standard deviation that keeps the paired-mode phase noise
// at the sigma implied by `target_fidelity`: sigma c / (2 pi freq_separation).
double displacement_budget(double target_fidelity, double freq_separation, double light_speed = kVacuumLightSpeed);
PhaseBudget phase_budget(double target_fidelity, double freq_separation, double light_speed = kVacuumLightSpeed);

}  // namespace qrep
