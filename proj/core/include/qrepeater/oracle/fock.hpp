#pragma once

#include <compare>
#include <complex>
#include <map>

#include "qrepeater/phase_model.hpp"

namespace qrep::oracle {

// Optical modes around one CBSA: signal photons kept at the nodes (A_s, B_s),
// idler photons sent to the station (A_i, B_i), and the two detector ports.
enum class ModeLabel { As, Bs, Ai, Bi, DPlus, DMinus };
enum class Port { Plus, Minus };

struct ModeKey {
  ModeLabel label;
  int m;  // frequency mode
  int n;  // temporal mode
  auto operator<=>(const ModeKey&) const = default;
};

// Photon numbers of the occupied modes; zero entries are never stored.
using Occupation = std::map<ModeKey, int>;

struct AmplitudeState {
  std::map<Occupation, std::complex<double>> terms;

  double norm_squared() const;
  // Rescales to unit norm and returns the previous squared norm.
  double normalize();
};

// Both nodes' TPS output over config.modes() x temporal_modes modes, truncated
// at one pair per node. Node Z contributes sqrt(1 - p)^K |0> plus, for each mode,
// e^{i theta_Z} sqrt(p) sqrt(1 - p)^(K - 1) z_s^dag z_i^dag |0>, renormalized.
AmplitudeState fock_state(const PhaseConfig& config, double p_tps, int temporal_modes = 1);

// Each photon of frequency f on a path of length L picks up e^{i 2 pi f L / c}.
AmplitudeState propagate(const AmplitudeState& state, const PhaseConfig& config);

// a^dag -> (d+^dag + d-^dag) / sqrt2,  b^dag -> (d+^dag - d-^dag) / sqrt2 on the idlers.
AmplitudeState apply_cbsa(const AmplitudeState& state);

struct Detection {
  Port port = Port::Plus;
  int m = 0;
  int n = 0;
};

struct HeraldedState {
  Detection detection;
  AmplitudeState memory;            // normalized, signal modes only
  std::complex<double> amp_a{};     // A_s excited in the detected mode
  std::complex<double> amp_b{};     // B_s excited in the detected mode
  double relative_phase = 0.0;      // arg(amp_b / amp_a) in (-pi, pi]
  double outcome_probability = 0.0;
};

// Conditions on exactly one photon at (port, m, n) and no photon in any other
// detector mode. Requires p_tps <= 0.1 for the truncation to be meaningful.
// Throws ValidationError("impossible outcome") if the event has zero amplitude.
HeraldedState herald_cbsa(const PhaseConfig& config, double p_tps, Detection detected, int temporal_modes = 1);

struct PairedState {
  // Postselected one-excitation-per-node branch, normalized:
  //   amp_ab |A holds mode 1, B holds mode 2> + amp_ba |B holds mode 1, A holds mode 2>
  std::complex<double> amp_ab{};
  std::complex<double> amp_ba{};
  double paired_phase = 0.0;  // arg(amp_ba / amp_ab) in (-pi, pi]
  double weight_cross = 0.0;
  double weight_a_double = 0.0;
  double weight_b_double = 0.0;
};

// Product of two independent d+ heralds in different modes.
PairedState pair_heralds(const HeraldedState& first, const HeraldedState& second);

}  // namespace qrep::oracle
