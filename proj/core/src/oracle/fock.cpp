#include "qrepeater/oracle/fock.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "qrepeater/errors.hpp"

namespace qrep::oracle {

namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_idler(ModeLabel l) { return l == ModeLabel::Ai || l == ModeLabel::Bi; }
bool is_detector(ModeLabel l) { return l == ModeLabel::DPlus || l == ModeLabel::DMinus; }

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

void add(AmplitudeState& s, Occupation occ, cd amp) {
  if (amp == cd{}) return;
  s.terms[std::move(occ)] += amp;
}

// Single-node state: vacuum plus one pair in any of the modes.
std::vector<std::pair<Occupation, cd>> node_terms(const PhaseConfig& config, double p, int temporal_modes,
                                                  bool node_b) {
  const int freq = static_cast<int>(config.modes());
  const double k = static_cast<double>(freq) * temporal_modes;
  const double theta = node_b ? config.theta_b : config.theta_a;
  const cd pair_amp = std::polar(std::sqrt(p) * std::pow(1.0 - p, 0.5 * (k - 1.0)), theta);
  std::vector<std::pair<Occupation, cd>> out;
  out.emplace_back(Occupation{}, cd(std::pow(1.0 - p, 0.5 * k)));
  for (int m = 0; m < freq; ++m) {
    for (int n = 0; n < temporal_modes; ++n) {
      Occupation occ;
      occ[{node_b ? ModeLabel::Bs : ModeLabel::As, m, n}] = 1;
      occ[{node_b ? ModeLabel::Bi : ModeLabel::Ai, m, n}] = 1;
      out.emplace_back(std::move(occ), pair_amp);
    }
  }
  double norm = 0.0;
  for (const auto& [occ, amp] : out) norm += std::norm(amp);
  for (auto& [occ, amp] : out) amp /= std::sqrt(norm);
  return out;
}

}  // namespace

double AmplitudeState::norm_squared() const {
  double s = 0.0;
  for (const auto& [occ, amp] : terms) s += std::norm(amp);
  return s;
}

double AmplitudeState::normalize() {
  const double n2 = norm_squared();
  if (n2 > 0.0) {
    const double scale = 1.0 / std::sqrt(n2);
    for (auto& [occ, amp] : terms) amp *= scale;
  }
  return n2;
}

AmplitudeState fock_state(const PhaseConfig& config, double p_tps, int temporal_modes) {
  validate(config);
  if (!(p_tps > 0.0 && p_tps <= 0.1)) {
    throw ValidationError("amplitude oracle requires 0 < p_tps <= 0.1 (got " + std::to_string(p_tps) + ")");
  }
  if (temporal_modes < 1) throw ValidationError("temporal_modes >= 1 required");

  const auto a = node_terms(config, p_tps, temporal_modes, false);
  const auto b = node_terms(config, p_tps, temporal_modes, true);
  AmplitudeState s;
  for (const auto& [occ_a, amp_a] : a) {
    for (const auto& [occ_b, amp_b] : b) {
      Occupation occ = occ_a;
      for (const auto& [key, count] : occ_b) occ[key] += count;
      add(s, std::move(occ), amp_a * amp_b);
    }
  }
  return s;
}

AmplitudeState propagate(const AmplitudeState& state, const PhaseConfig& config) {
  AmplitudeState out;
  for (const auto& [occ, amp] : state.terms) {
    double phase = 0.0;
    for (const auto& [key, count] : occ) {
      const auto m = static_cast<std::size_t>(key.m);
      double f = 0.0, len = 0.0;
      switch (key.label) {
        case ModeLabel::As: f = config.f_signal_a.at(m); len = config.L_As; break;
        case ModeLabel::Bs: f = config.f_signal_b.at(m); len = config.L_Bs; break;
        case ModeLabel::Ai: f = config.f_idler.at(m); len = config.L_Ai; break;
        case ModeLabel::Bi: f = config.f_idler.at(m); len = config.L_Bi; break;
        default: break;
      }
      phase += count * kTwoPi * f * len / config.light_speed;
    }
    add(out, occ, amp * std::polar(1.0, phase));
  }
  return out;
}

AmplitudeState apply_cbsa(const AmplitudeState& state) {
  const double r = 1.0 / std::numbers::sqrt2;
  AmplitudeState out;
  for (const auto& [occ, amp] : state.terms) {
    // Expand the idler creation operators as a polynomial in d+, d-.
    Occupation kept;
    double norm = 1.0;
    std::vector<ModeKey> creators;
    for (const auto& [key, count] : occ) {
      if (is_idler(key.label)) {
        norm /= std::sqrt(factorial(count));
        for (int i = 0; i < count; ++i) creators.push_back(key);
      } else {
        kept[key] = count;
      }
    }
    std::vector<std::pair<Occupation, cd>> poly{{Occupation{}, amp * norm}};
    for (const ModeKey& c : creators) {
      const double sign = c.label == ModeLabel::Ai ? 1.0 : -1.0;
      std::vector<std::pair<Occupation, cd>> next;
      next.reserve(poly.size() * 2);
      for (const auto& [ops, coef] : poly) {
        Occupation plus = ops, minus = ops;
        ++plus[{ModeLabel::DPlus, c.m, c.n}];
        ++minus[{ModeLabel::DMinus, c.m, c.n}];
        next.emplace_back(std::move(plus), coef * r);
        next.emplace_back(std::move(minus), coef * (sign * r));
      }
      poly = std::move(next);
    }
    for (auto& [ops, coef] : poly) {
      double fac = 1.0;
      for (const auto& [key, count] : ops) fac *= factorial(count);
      Occupation full = kept;
      for (const auto& [key, count] : ops) full[key] = count;
      add(out, std::move(full), coef * std::sqrt(fac));
    }
  }
  // Drop terms that cancelled exactly or to rounding.
  std::erase_if(out.terms, [](const auto& t) { return std::norm(t.second) < 1e-300; });
  return out;
}

HeraldedState herald_cbsa(const PhaseConfig& config, double p_tps, Detection detected, int temporal_modes) {
  if (detected.m < 0 || static_cast<std::size_t>(detected.m) >= config.modes() || detected.n < 0 ||
      detected.n >= temporal_modes) {
    throw ValidationError("detection mode out of range");
  }
  const AmplitudeState out = apply_cbsa(propagate(fock_state(config, p_tps, temporal_modes), config));
  const ModeKey clicked{detected.port == Port::Plus ? ModeLabel::DPlus : ModeLabel::DMinus, detected.m, detected.n};

  HeraldedState h;
  h.detection = detected;
  for (const auto& [occ, amp] : out.terms) {
    Occupation detectors, memory;
    for (const auto& [key, count] : occ) (is_detector(key.label) ? detectors : memory)[key] = count;
    if (detectors.size() != 1 || detectors.begin()->first != clicked || detectors.begin()->second != 1) continue;
    add(h.memory, std::move(memory), amp);
  }
  h.outcome_probability = h.memory.normalize();
  if (!(h.outcome_probability > 1e-300)) throw ValidationError("impossible outcome");

  for (const auto& [occ, amp] : h.memory.terms) {
    if (occ.size() != 1 || occ.begin()->second != 1) continue;
    const ModeKey& k = occ.begin()->first;
    if (k.m != detected.m || k.n != detected.n) continue;
    if (k.label == ModeLabel::As) h.amp_a = amp;
    if (k.label == ModeLabel::Bs) h.amp_b = amp;
  }
  h.relative_phase = wrap_phase(std::arg(h.amp_b) - std::arg(h.amp_a));
  return h;
}

PairedState pair_heralds(const HeraldedState& first, const HeraldedState& second) {
  if (first.detection.port != Port::Plus || second.detection.port != Port::Plus) {
    throw ValidationError("pair_heralds expects two d+ heralds");
  }
  PairedState p;
  const cd ab = first.amp_a * second.amp_b;
  const cd ba = first.amp_b * second.amp_a;
  p.weight_cross = std::norm(ab) + std::norm(ba);
  p.weight_a_double = std::norm(first.amp_a * second.amp_a);
  p.weight_b_double = std::norm(first.amp_b * second.amp_b);
  if (p.weight_cross > 0.0) {
    const double s = 1.0 / std::sqrt(p.weight_cross);
    p.amp_ab = ab * s;
    p.amp_ba = ba * s;
    p.paired_phase = wrap_phase(std::arg(ba) - std::arg(ab));
  }
  return p;
}

}  // namespace qrep::oracle
