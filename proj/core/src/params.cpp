#include "qrepeater/params.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <string>

#include "qrepeater/errors.hpp"

namespace qrep {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void check_probability(std::vector<std::string>& issues, std::string_view name, double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    issues.push_back(std::string(name) + " = " + fmt(v) + " outside [0, 1]");
  }
}

}  // namespace

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::SS: return "ss";
    case Scheme::ST: return "st";
    case Scheme::TT: return "tt";
  }
  return "?";
}

Scheme parse_scheme(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "ss") return Scheme::SS;
  if (lower == "st") return Scheme::ST;
  if (lower == "tt") return Scheme::TT;
  throw ValidationError("unknown scheme '" + std::string(text) + "' (expected ss, st or tt)");
}

double attenuation(double distance_km, double loss_db_per_km) {
  std::vector<std::string> issues;
  if (!(distance_km >= 0.0)) issues.push_back("distance_km = " + fmt(distance_km) + " < 0");
  if (!(loss_db_per_km >= 0.0)) {
    issues.push_back("loss_db_per_km = " + fmt(loss_db_per_km) + " < 0");
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return std::pow(10.0, -loss_db_per_km * distance_km / 10.0);
}

double effective_eta(double eta_qm, double eta_fm, double eta_det) {
  std::vector<std::string> issues;
  check_probability(issues, "eta_qm", eta_qm);
  check_probability(issues, "eta_fm", eta_fm);
  check_probability(issues, "eta_det", eta_det);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return eta_qm * eta_fm * eta_det;
}

double effective_eta(const SimParams& p) { return effective_eta(p.eta_qm, p.eta_fm, p.eta_det); }

double single_herald_prob(const SimParams& p) {
  return 2.0 * p.p_tps * p.eta_det * attenuation(p.link_length_km / 2.0, p.loss_db_per_km);
}

double pair_herald_prob(const SimParams& p) {
  const double x = p.p_tps * p.eta_det * attenuation(p.link_length_km / 2.0, p.loss_db_per_km);
  return x * x / 2.0;
}

double elementary_trial_time(const SimParams& p) {
  return static_cast<double>(p.N) * p.delta_t + km_to_m(p.link_length_km) / p.light_speed_m_per_s;
}

std::vector<std::string> check(const SimParams& p) {
  std::vector<std::string> issues;
  check_probability(issues, "p_tps", p.p_tps);
  check_probability(issues, "eta_det", p.eta_det);
  check_probability(issues, "eta_qm", p.eta_qm);
  check_probability(issues, "eta_fm", p.eta_fm);
  if (p.M < 1) issues.push_back("M >= 1 required (got " + std::to_string(p.M) + ")");
  if (p.N < 1) issues.push_back("N >= 1 required (got " + std::to_string(p.N) + ")");
  if (!(p.delta_t >= 0.0)) issues.push_back("delta_t = " + fmt(p.delta_t) + " < 0");
  if (!(p.delta_f >= 0.0)) issues.push_back("delta_f = " + fmt(p.delta_f) + " < 0");
  if (!(p.loss_db_per_km >= 0.0)) {
    issues.push_back("loss_db_per_km = " + fmt(p.loss_db_per_km) + " < 0");
  }
  if (!(p.link_length_km >= 0.0)) {
    issues.push_back("link_length_km = " + fmt(p.link_length_km) + " < 0");
  }
  if (!(p.light_speed_m_per_s > 0.0)) {
    issues.push_back("light_speed_m_per_s = " + fmt(p.light_speed_m_per_s) + " must be > 0");
  }
  // q is only meaningful once its ingredients are sane.
  if (issues.empty()) {
    const double q = single_herald_prob(p);
    if (q > 1.0) issues.push_back("q = " + fmt(q) + " > 1");
    if (!(elementary_trial_time(p) > 0.0)) {
      issues.push_back("trial time N*delta_t + L/c must be > 0");
    }
  }
  return issues;
}

const SimParams& validate(const SimParams& p) {
  auto issues = check(p);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return p;
}

namespace presets {

SimParams elementary_comparison(std::int64_t frequency_modes) {
  SimParams p;
  p.M = frequency_modes;
  p.N = 10;
  p.p_tps = 0.01;
  p.eta_det = 0.9;
  p.eta_qm = 0.5;
  p.eta_fm = 0.9;
  p.delta_t = 620e-9;
  p.loss_db_per_km = 0.2;
  return p;
}

SimParams chain_realistic() {
  SimParams p;
  p.M = 100;
  p.N = 30;
  p.p_tps = 0.01;
  p.eta_det = 0.9;
  p.eta_qm = 0.5;
  p.eta_fm = 0.9;
  return p;
}

SimParams chain_ideal() {
  SimParams p = chain_realistic();
  p.eta_det = 0.95;
  p.eta_qm = 0.9;
  p.eta_fm = 0.95;
  return p;
}

}  // namespace presets

}  // namespace qrep
