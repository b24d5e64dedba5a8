#include "qrepeater/phase_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qrepeater/errors.hpp"

namespace qrep {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool same_sum(const std::vector<double>& a, const std::vector<double>& b) {
  const double ref = a[0] + b[0];
  for (std::size_t m = 1; m < a.size(); ++m) {
    if (std::abs(a[m] + b[m] - ref) > 1e-12 * std::abs(ref)) return false;
  }
  return true;
}

void check_light_speed(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("light speed must be > 0");
}

}  // namespace

std::vector<std::string> check(const PhaseConfig& c) {
  std::vector<std::string> issues;
  const std::size_t n = c.f_idler.size();
  if (n == 0) issues.push_back("at least one frequency mode required");
  if (c.f_signal_a.size() != n || c.f_signal_b.size() != n) {
    issues.push_back("f_idler, f_signal_a and f_signal_b must have the same length");
  }
  for (const auto* v : {&c.f_idler, &c.f_signal_a, &c.f_signal_b}) {
    for (double f : *v) {
      if (!(f > 0.0) || !std::isfinite(f)) {
        issues.push_back("frequencies must be > 0");
        break;
      }
    }
  }
  const std::pair<const char*, double> lengths[] = {
      {"L_Ai", c.L_Ai}, {"L_Bi", c.L_Bi}, {"L_As", c.L_As}, {"L_Bs", c.L_Bs}};
  for (const auto& [name, v] : lengths) {
    if (!(v >= 0.0) || !std::isfinite(v)) issues.push_back(std::string(name) + " must be >= 0");
  }
  if (!(c.light_speed > 0.0) || !std::isfinite(c.light_speed)) issues.push_back("light_speed must be > 0");
  if (issues.empty() && n > 1) {
    if (!same_sum(c.f_idler, c.f_signal_a)) issues.push_back("f_idler + f_signal_a varies across modes");
    if (!same_sum(c.f_idler, c.f_signal_b)) issues.push_back("f_idler + f_signal_b varies across modes");
  }
  return issues;
}

const PhaseConfig& validate(const PhaseConfig& config) {
  auto issues = check(config);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return config;
}

PhaseConfig uniform_phase_config(double f_idler, double f_signal) {
  PhaseConfig c;
  c.f_idler = {f_idler};
  c.f_signal_a = {f_signal};
  c.f_signal_b = {f_signal};
  return c;
}

double wrap_phase(double x) {
  double r = std::remainder(x, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

double relative_phase_ss_unwrapped(const PhaseConfig& config, std::size_t m) {
  validate(config);
  if (m >= config.modes()) {
    throw ValidationError("mode index " + std::to_string(m) + " out of range");
  }
  const double delta_li = config.L_Bi - config.L_Ai;
  const double path = config.f_idler[m] * delta_li + config.f_signal_b[m] * config.L_Bs -
                      config.f_signal_a[m] * config.L_As;
  return kTwoPi / config.light_speed * path + (config.theta_b - config.theta_a);
}

double relative_phase_ss(const PhaseConfig& config, std::size_t m) {
  return wrap_phase(relative_phase_ss_unwrapped(config, m));
}

double relative_phase_st_unwrapped(double m, double m_prime, double delta_f, double delta_Li, double delta_Ls,
                                   double light_speed) {
  check_light_speed(light_speed);
  return kTwoPi * (m - m_prime) * delta_f * (delta_Li - delta_Ls) / light_speed;
}

double relative_phase_st(double m, double m_prime, double delta_f, double delta_Li, double delta_Ls,
                         double light_speed) {
  return wrap_phase(relative_phase_st_unwrapped(m, m_prime, delta_f, delta_Li, delta_Ls, light_speed));
}

double relative_phase_st(double freq_separation, double path_difference, double light_speed) {
  return relative_phase_st(1.0, 0.0, freq_separation, path_difference, 0.0, light_speed);
}

double fidelity_from_sigma(double sigma) {
  if (!(sigma >= 0.0)) throw ValidationError("sigma must be >= 0");
  return 0.5 * (1.0 + std::exp(-0.5 * sigma * sigma));
}

double sigma_for_fidelity(double fidelity) {
  if (!(fidelity > 0.5 && fidelity <= 1.0)) {
    throw ValidationError("target fidelity must lie in (0.5, 1] (got " + std::to_string(fidelity) + ")");
  }
  return std::sqrt(std::max(0.0, -2.0 * std::log(2.0 * fidelity - 1.0)));
}

double displacement_budget(double target_fidelity, double freq_separation, double light_speed) {
  return phase_budget(target_fidelity, freq_separation, light_speed).max_displacement;
}

PhaseBudget phase_budget(double target_fidelity, double freq_separation, double light_speed) {
  if (!(freq_separation > 0.0)) throw ValidationError("frequency separation must be > 0");
  check_light_speed(light_speed);
  PhaseBudget b;
  b.sigma = sigma_for_fidelity(target_fidelity);
  b.fidelity = target_fidelity;
  b.freq_separation = freq_separation;
  b.max_displacement = b.sigma * light_speed / (kTwoPi * freq_separation);
  return b;
}

}  // namespace qrep
