#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qrep {

enum class Scheme { SS, ST, TT };

std::string_view to_string(Scheme s);
// Accepts "ss", "st", "tt" in any case.
Scheme parse_scheme(std::string_view text);

inline constexpr double kVacuumLightSpeed = 2.998e8;  // m/s
inline constexpr double kFiberLightSpeed = 2.0e8;     // m/s

constexpr double km_to_m(double km) { return km * 1e3; }
constexpr double m_to_km(double m) { return m * 1e-3; }

// Physical and protocol parameters of one elementary-link configuration.
// Defaults reproduce the elementary-link comparison setup (M = 100, N = 10,
// 620 ns temporal modes, 0.2 dB/km fiber).
struct SimParams {
  double p_tps = 0.01;  // pair-emission probability per mode
  std::int64_t M = 100;  // frequency modes
  std::int64_t N = 10;   // temporal modes
  double delta_t = 620e-9;  // s
  double delta_f = 100e6;   // Hz
  double eta_det = 0.9;
  double eta_qm = 0.5;
  double eta_fm = 0.9;
  double loss_db_per_km = 0.2;
  double link_length_km = 0.0;  // node-to-node distance L
  double light_speed_m_per_s = kFiberLightSpeed;

  std::int64_t modes() const { return M * N; }

  friend bool operator==(const SimParams&, const SimParams&) = default;
};

// Fiber transmittance 10^(-loss * distance / 10).
double attenuation(double distance_km, double loss_db_per_km);

// Composite retrieval-to-detection efficiency eta_QM * eta_FM * eta_det.
double effective_eta(double eta_qm, double eta_fm, double eta_det);
double effective_eta(const SimParams& p);

// Per-mode single-photon herald probability q = 2 p_tps eta_det eta_att(L/2).
double single_herald_prob(const SimParams& p);

// Per-mode two-photon herald probability (p_tps eta_det eta_att(L/2))^2 / 2.
double pair_herald_prob(const SimParams& p);

// Duration of one elementary-link trial, N * delta_t + L / c (seconds).
double elementary_trial_time(const SimParams& p);

// Lists every violated invariant; empty when the parameter set is usable.
std::vector<std::string> check(const SimParams& p);

// Returns p unchanged or throws ValidationError naming each violation.
const SimParams& validate(const SimParams& p);

// Named parameter sets used for the figure reproductions.
namespace presets {
// Elementary-link comparison: N = 10, eta_det = 0.9, eta_QM = 0.5,
// delta_t = 620 ns, 0.2 dB/km. p_tps and eta_FM are not pinned by the
// source setup and default to 0.01 / 0.9.
SimParams elementary_comparison(std::int64_t frequency_modes);
// Repeater-chain comparison, M = 100, N = 30, p_tps = 0.01.
SimParams chain_realistic();  // eta_det 0.9, eta_QM 0.5, eta_FM 0.9
SimParams chain_ideal();      // eta_det 0.95, eta_QM 0.9, eta_FM 0.95
}  // namespace presets

}  // namespace qrep
