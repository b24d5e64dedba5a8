#include "qrepeater/oracle/verify.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "qrepeater/chain_model.hpp"
#include "qrepeater/link_model.hpp"
#include "qrepeater/oracle/fock.hpp"
#include "qrepeater/oracle/mc_chain.hpp"
#include "qrepeater/oracle/renewal.hpp"
#include "qrepeater/oracle/sbsa.hpp"
#include "qrepeater/phase_model.hpp"

namespace qrep::oracle {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Check within(std::string name, double expected, double got, double tol) {
  return {std::move(name), num(expected), num(got), "abs " + num(tol), std::abs(got - expected) <= tol};
}

Check within_se(std::string name, double expected, const MCEstimate& est, double k) {
  const double tol = k * est.std_error;
  return {std::move(name), num(expected), num(est.mean) + " +- " + num(est.std_error),
          num(k) + " std errors", std::abs(est.mean - expected) <= tol};
}

Check count_check(std::string name, int cases, int failures) {
  return {std::move(name), std::to_string(cases) + " exact matches",
          std::to_string(cases - failures) + " exact matches", "exact", failures == 0};
}

bool same(const RationalMixture& a, const RationalMixture& b) {
  return a.c11 == b.c11 && a.c20 == b.c20 && a.c1 == b.c1 && a.c0 == b.c0;
}

// Enumeration vs closed form on one ST mixture; true on exact agreement.
bool sbsa_matches(const RationalMixture& m, const Rational& eta) {
  const SbsaResult e = enumerate_sbsa(m, m, eta);
  const auto f = swap_formula<Rational>(m, eta);
  if (e.total_probability != 1) return false;
  if (e.success_prob != f.success_prob) return false;
  if (e.state.has_value() != f.state.has_value()) return false;
  return !e.state || same(*e.state, *f.state);
}

void sbsa_checks(std::vector<Check>& out) {
  {
    RationalMixture init;
    init.scheme = Scheme::ST;
    init.c11 = Rational(1, 2);
    init.c20 = Rational(1, 2);
    const SbsaResult r = enumerate_sbsa(init, init, Rational(1, 2));
    const bool state_ok = r.state && r.state->c11 == Rational(4, 9) && r.state->c1 == Rational(4, 9) &&
                          r.state->c0 == Rational(1, 9);
    out.push_back({"sbsa initial {1/2,1/2} eta=1/2", "9/128 -> {4/9, 4/9, 1/9}",
                   r.success_prob.str() + (r.state ? " -> {" + r.state->c11.str() + ", " + r.state->c1.str() +
                                                         ", " + r.state->c0.str() + "}"
                                                   : std::string(" -> none")),
                   "exact", r.success_prob == Rational(9, 128) && state_ok});
  }
  const Rational etas[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
  int cases = 0, fails = 0;
  for (int i = 0; i <= 4; ++i) {
    for (const Rational& eta : etas) {
      RationalMixture m;
      m.scheme = Scheme::ST;
      m.c11 = Rational(i, 4);
      m.c20 = Rational(1) - m.c11;
      ++cases;
      if (!sbsa_matches(m, eta)) ++fails;
    }
  }
  out.push_back(count_check("sbsa vs initial-stage swap formula, grid", cases, fails));

  cases = fails = 0;
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; i + j <= 4; ++j) {
      for (const Rational& eta : etas) {
        RationalMixture m;
        m.scheme = Scheme::ST;
        m.stage = Stage::PostSwap;
        m.c11 = Rational(i, 4);
        m.c1 = Rational(j, 4);
        m.c0 = Rational(1) - m.c11 - m.c1;
        ++cases;
        if (!sbsa_matches(m, eta)) ++fails;
      }
    }
  }
  out.push_back(count_check("sbsa vs post-swap swap formula, grid", cases, fails));
}

void fixed_point_checks(std::vector<Check>& out) {
  for (double eta : {0.3, 0.5, 0.81, 1.0}) {
    Mixture s = swap_step(Scheme::ST, initial_state(Scheme::ST), eta).state.value();
    const Mixture target = st_fixed_point(s);
    double worst = 0.0;
    for (int j = 2; j <= 10; ++j) {
      s = swap_step(Scheme::ST, s, eta).state.value();
      worst = std::max({worst, std::abs(s.c11 - target.c11), std::abs(s.c1 - target.c1),
                        std::abs(s.c0 - target.c0)});
    }
    out.push_back(within("st fixed point rounds 2..10, eta=" + num(eta), 0.0, worst, 1e-12));
  }
}

void pair_expectation_checks(std::vector<Check>& out) {
  double worst = 0.0;
  for (std::int64_t nm = 2; nm <= 40; nm += 2) {
    for (int q_hundredths : {1, 10, 50, 100}) {
      SimParams p;
      p.M = nm;
      p.N = 1;
      p.eta_det = 1.0;
      p.loss_db_per_km = 0.0;
      p.p_tps = q_hundredths / 200.0;
      const double closed = expected_heralds(Scheme::ST, p);
      const Rational exact_value = expected_pairs_exact(nm, Rational(q_hundredths, 100));
      worst = std::max(worst, std::abs(closed - static_cast<double>(exact_value)));
    }
  }
  out.push_back(within("E(K_ST) vs E[floor(K/2)] by convolution", 0.0, worst, 1e-12));
}

PhaseConfig comb_config(int modes, double f0, double df) {
  PhaseConfig c;
  const double total = 2.0 * f0 + modes * df;
  for (int m = 0; m < modes; ++m) {
    c.f_idler.push_back(f0 + m * df);
    c.f_signal_a.push_back(total - c.f_idler.back());
    c.f_signal_b.push_back(total - c.f_idler.back());
  }
  return c;
}

void cbsa_checks(std::vector<Check>& out) {
  const double p = 0.01;
  PhaseConfig sym = comb_config(2, 2e14, 1e10);
  sym.L_Ai = sym.L_Bi = 0.25;
  sym.L_As = sym.L_Bs = 0.5;
  const HeraldedState plus = herald_cbsa(sym, p, {Port::Plus, 0, 0});
  out.push_back(within("cbsa symmetric d+ |a|", 1.0 / std::numbers::sqrt2, std::abs(plus.amp_a), 1e-12));
  out.push_back(within("cbsa symmetric d+ |b|", 1.0 / std::numbers::sqrt2, std::abs(plus.amp_b), 1e-12));
  out.push_back(within("cbsa symmetric d+ phase", 0.0, plus.relative_phase, 1e-10));
  const HeraldedState minus = herald_cbsa(sym, p, {Port::Minus, 0, 0});
  out.push_back(within("cbsa symmetric d- phase", std::numbers::pi, minus.relative_phase, 1e-10));

  PhaseConfig asym = comb_config(2, 2e14, 1e10);
  asym.L_Ai = 1.0e-6;
  asym.L_Bi = 2.3e-6;
  asym.L_As = 0.7e-6;
  asym.L_Bs = 1.9e-6;
  asym.theta_a = 0.3;
  asym.theta_b = 1.1;
  for (int m = 0; m < 2; ++m) {
    const HeraldedState h = herald_cbsa(asym, p, {Port::Plus, m, 0});
    const double expected = relative_phase_ss(asym, static_cast<std::size_t>(m));
    out.push_back(within("cbsa asymmetric phase, mode " + std::to_string(m), expected, h.relative_phase, 1e-10));
  }

  // Pairing two heralds across frequency modes 0 and 3.
  PhaseConfig comb = comb_config(4, 2e14, 2.5e9);
  comb.L_Ai = 0.0;
  comb.L_Bi = 1.0e-3;
  comb.L_As = 0.2e-3;
  comb.L_Bs = 0.5e-3;
  for (double dtheta : {0.0, 1.0}) {
    comb.theta_b = dtheta;
    const PairedState pr = pair_heralds(herald_cbsa(comb, p, {Port::Plus, 0, 0}),
                                        herald_cbsa(comb, p, {Port::Plus, 3, 0}));
    const double expected = relative_phase_st(0, 3, 2.5e9, comb.L_Bi - comb.L_Ai, comb.L_Bs - comb.L_As,
                                              comb.light_speed);
    out.push_back(within("paired phase vs mode-pair formula, dtheta=" + num(dtheta), expected, pr.paired_phase,
                         1e-10));
    if (dtheta == 0.0) {
      out.push_back(within("pair weight cross-node", 0.5, pr.weight_cross, 1e-12));
      out.push_back(within("pair weight A-double", 0.25, pr.weight_a_double, 1e-12));
      out.push_back(within("pair weight B-double", 0.25, pr.weight_b_double, 1e-12));
    }
  }
}

void monte_carlo_checks(std::vector<Check>& out, const VerifyOptions& vo) {
  McOptions mc{vo.episodes, vo.seed, vo.workers};
  for (double p : {0.05, 0.1, 0.5}) {
    out.push_back(within_se("n_ex(" + num(p) + ") vs sampled max of geometrics", n_ex(p), mc_max_geometric(p, mc), 3.0));
  }

  SimParams link = presets::elementary_comparison(100);
  link.link_length_km = 10.0;
  for (Scheme s : {Scheme::ST, Scheme::TT}) {
    out.push_back(within_se("mc_elementary " + std::string(to_string(s)) + " vs closed form",
                            elementary_rate(s, link), mc_elementary(s, link, mc), 4.0));
  }
  out.push_back(within_se("mc_elementary SS vs renewal-reward rate", ss_elementary_rate_exact(link),
                          mc_elementary(Scheme::SS, link, mc), 4.0));

  SimParams chain = presets::chain_realistic();
  chain.link_length_km = 50.0;
  for (Scheme s : {Scheme::SS, Scheme::ST, Scheme::TT}) {
    out.push_back(within_se("mc_chain J=1 " + std::string(to_string(s)) + " vs total_time",
                            total_time(s, 1, chain), mc_chain(s, 1, chain, mc), 3.0));
  }
  SimParams lossless = chain;
  lossless.eta_det = lossless.eta_qm = lossless.eta_fm = 1.0;
  for (Scheme s : {Scheme::SS, Scheme::ST, Scheme::TT}) {
    out.push_back(within_se("mc_chain J=2 " + std::string(to_string(s)) + " lossless memories vs total_time",
                            total_time(s, 2, lossless), mc_chain(s, 2, lossless, mc), 3.0));
  }
}

}  // namespace

std::vector<Check> run_verification(const VerifyOptions& options) {
  std::vector<Check> out;
  sbsa_checks(out);
  fixed_point_checks(out);
  pair_expectation_checks(out);
  cbsa_checks(out);
  monte_carlo_checks(out, options);
  return out;
}

bool all_passed(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return !checks.empty();
}

}  // namespace qrep::oracle
