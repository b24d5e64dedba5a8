#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qrepeater/chain_model.hpp"
#include "qrepeater/errors.hpp"
#include "qrepeater/oracle/fock.hpp"
#include "qrepeater/oracle/mc_chain.hpp"
#include "qrepeater/oracle/renewal.hpp"
#include "qrepeater/oracle/sbsa.hpp"
#include "qrepeater/oracle/verify.hpp"

using namespace qrep;
using namespace qrep::oracle;

namespace {

RationalMixture st_initial(const Rational& c11) {
  RationalMixture m;
  m.scheme = Scheme::ST;
  m.stage = Stage::Initial;
  m.c11 = c11;
  m.c20 = Rational(1) - c11;
  return m;
}

RationalMixture st_post(const Rational& c11, const Rational& c1) {
  RationalMixture m;
  m.scheme = Scheme::ST;
  m.stage = Stage::PostSwap;
  m.c11 = c11;
  m.c1 = c1;
  m.c0 = Rational(1) - c11 - c1;
  return m;
}

PhaseConfig comb(int modes, double f0, double df) {
  PhaseConfig c;
  const double total = 2 * f0 + modes * df;
  for (int m = 0; m < modes; ++m) {
    c.f_idler.push_back(f0 + m * df);
    c.f_signal_a.push_back(total - c.f_idler.back());
    c.f_signal_b.push_back(total - c.f_idler.back());
  }
  return c;
}

}  // namespace

TEST(Sbsa, PureC11) {
  RationalMixture m = st_initial(Rational(1));
  const SbsaResult r = enumerate_sbsa(m, m, Rational(1));
  EXPECT_EQ(r.success_prob, Rational(1, 2));
  ASSERT_TRUE(r.state);
  EXPECT_EQ(r.state->c11, Rational(1));
  EXPECT_EQ(r.total_probability, Rational(1));
}

TEST(Sbsa, InitialHalfHalfAtHalfEta) {
  const RationalMixture m = st_initial(Rational(1, 2));
  const SbsaResult r = enumerate_sbsa(m, m, Rational(1, 2));
  EXPECT_EQ(r.success_prob, Rational(9, 128));
  EXPECT_EQ(r.state->c11, Rational(4, 9));
  EXPECT_EQ(r.state->c1, Rational(4, 9));
  EXPECT_EQ(r.state->c0, Rational(1, 9));
  EXPECT_EQ(r.state->c20, Rational(0));
}

TEST(Sbsa, InitialGridMatchesClosedForm) {
  for (int i = 0; i <= 4; ++i) {
    for (int e = 1; e <= 4; ++e) {
      const RationalMixture m = st_initial(Rational(i, 4));
      const Rational eta(e, 4);
      const SbsaResult r = enumerate_sbsa(m, m, eta);
      const auto f = swap_formula<Rational>(m, eta);
      EXPECT_EQ(r.total_probability, Rational(1));
      EXPECT_EQ(r.success_prob, f.success_prob) << "c11=" << i << "/4 eta=" << e << "/4";
      ASSERT_EQ(r.state.has_value(), f.state.has_value());
      if (r.state) {
        EXPECT_EQ(r.state->c11, f.state->c11);
        EXPECT_EQ(r.state->c1, f.state->c1);
        EXPECT_EQ(r.state->c0, f.state->c0);
      }
    }
  }
}

TEST(Sbsa, PostSwapGridMatchesClosedForm) {
  for (int i = 0; i <= 6; ++i) {
    for (int j = 0; i + j <= 6; ++j) {
      for (const Rational eta : {Rational(1, 3), Rational(2, 5), Rational(1)}) {
        const RationalMixture m = st_post(Rational(i, 6), Rational(j, 6));
        const SbsaResult r = enumerate_sbsa(m, m, eta);
        const auto f = swap_formula<Rational>(m, eta);
        EXPECT_EQ(r.total_probability, Rational(1));
        EXPECT_EQ(r.success_prob, f.success_prob);
        if (r.state && f.state) {
          EXPECT_EQ(r.state->c11, f.state->c11);
          EXPECT_EQ(r.state->c1, f.state->c1);
          EXPECT_EQ(r.state->c0, f.state->c0);
        }
      }
    }
  }
}

TEST(Sbsa, MatchesDoublePrecisionSwapStep) {
  const double eta = 0.5;
  const SwapOutcome d = swap_step(Scheme::ST, initial_state(Scheme::ST), eta);
  const SbsaResult r = enumerate_sbsa(exact(initial_state(Scheme::ST)), exact(initial_state(Scheme::ST)), Rational(eta));
  EXPECT_EQ(Rational(d.success_prob), r.success_prob);
}

TEST(Sbsa, BranchStructure) {
  const RationalMixture m = st_initial(Rational(1, 2));
  const SbsaResult r = enumerate_sbsa(m, m, Rational(3, 4));
  Rational accepted, rejected;
  for (const auto& b : r.branches) {
    if (b.accepted) {
      EXPECT_EQ(b.survivors_b, 1);
      EXPECT_EQ(b.survivors_c, 1);
      ASSERT_TRUE(b.outcome);
      accepted += b.probability;
    } else {
      rejected += b.probability;
    }
    EXPECT_GE(b.probability, 0);
  }
  EXPECT_EQ(accepted, r.success_prob);
  EXPECT_EQ(accepted + rejected, Rational(1));
}

TEST(Sbsa, PlacementsSumToOne) {
  for (const RationalMixture& m : {st_initial(Rational(1, 3)), st_post(Rational(1, 5), Rational(2, 5))}) {
    Rational total;
    for (const auto& p : link_placements(m, true)) total += p.probability;
    EXPECT_EQ(total, Rational(1));
  }
}

TEST(Sbsa, RejectsIllegalInput) {
  RationalMixture bad = st_initial(Rational(1, 2));
  bad.c1 = Rational(1, 4);
  bad.c20 = Rational(1, 4);
  EXPECT_THROW(enumerate_sbsa(bad, bad, Rational(1, 2)), ValidationError);
  RationalMixture unnormalized = st_initial(Rational(1, 2));
  unnormalized.c20 = Rational(1, 3);
  EXPECT_THROW(enumerate_sbsa(unnormalized, unnormalized, Rational(1, 2)), ValidationError);
}

TEST(Cbsa, SymmetricHeralds) {
  PhaseConfig c = comb(2, 2e14, 1e10);
  const HeraldedState plus = herald_cbsa(c, 0.01, {Port::Plus, 1, 0});
  EXPECT_NEAR(plus.amp_a.real(), 1 / std::numbers::sqrt2, 1e-12);
  EXPECT_NEAR(plus.amp_b.real(), 1 / std::numbers::sqrt2, 1e-12);
  EXPECT_NEAR(plus.relative_phase, 0.0, 1e-12);
  EXPECT_NEAR(plus.memory.norm_squared(), 1.0, 1e-12);
  EXPECT_EQ(plus.memory.terms.size(), 2u);

  const HeraldedState minus = herald_cbsa(c, 0.01, {Port::Minus, 1, 0});
  EXPECT_NEAR(std::abs(minus.relative_phase), std::numbers::pi, 1e-12);
  EXPECT_NEAR(std::abs(minus.amp_a - plus.amp_a), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(minus.amp_b + plus.amp_b), 0.0, 1e-12);
  EXPECT_NEAR(minus.outcome_probability, plus.outcome_probability, 1e-15);
}

TEST(Cbsa, AsymmetricMatchesPhaseFormula) {
  PhaseConfig c = comb(3, 1.9e14, 5e9);
  c.L_Ai = 0.4e-6;
  c.L_Bi = 1.7e-6;
  c.L_As = 2.2e-6;
  c.L_Bs = 0.3e-6;
  c.theta_a = -0.4;
  c.theta_b = 2.0;
  for (int m = 0; m < 3; ++m) {
    for (int n = 0; n < 2; ++n) {
      const HeraldedState h = herald_cbsa(c, 0.02, {Port::Plus, m, n}, 2);
      EXPECT_NEAR(h.relative_phase, relative_phase_ss(c, static_cast<std::size_t>(m)), 1e-10);
      const HeraldedState hm = herald_cbsa(c, 0.02, {Port::Minus, m, n}, 2);
      EXPECT_NEAR(std::abs(wrap_phase(hm.relative_phase - h.relative_phase)), std::numbers::pi, 1e-10);
    }
  }
}

TEST(Cbsa, StateNormalizedAndTruncated) {
  PhaseConfig c = comb(2, 2e14, 1e10);
  const AmplitudeState s = fock_state(c, 0.05, 2);
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
  EXPECT_EQ(s.terms.size(), 25u);  // (1 + 4)^2
  const AmplitudeState out = apply_cbsa(propagate(s, c));
  EXPECT_NEAR(out.norm_squared(), 1.0, 1e-12);
}

TEST(Cbsa, Errors) {
  PhaseConfig c = comb(2, 2e14, 1e10);
  EXPECT_THROW(herald_cbsa(c, 0.2, {Port::Plus, 0, 0}), ValidationError);
  EXPECT_THROW(herald_cbsa(c, 0.01, {Port::Plus, 5, 0}), ValidationError);
}

TEST(PairHeralds, WeightsAndPhase) {
  PhaseConfig c = comb(4, 2e14, 2.5e9);
  c.L_Bi = 2e-3;
  c.L_Bs = 0.5e-3;
  for (double dtheta : {0.0, 1.0}) {
    c.theta_b = dtheta;
    const PairedState p =
        pair_heralds(herald_cbsa(c, 0.01, {Port::Plus, 1, 0}), herald_cbsa(c, 0.01, {Port::Plus, 3, 0}));
    EXPECT_NEAR(p.weight_cross, 0.5, 1e-12);
    EXPECT_NEAR(p.weight_a_double, 0.25, 1e-12);
    EXPECT_NEAR(p.weight_b_double, 0.25, 1e-12);
    EXPECT_NEAR(p.weight_cross + p.weight_a_double + p.weight_b_double, 1.0, 1e-12);
    EXPECT_NEAR(p.paired_phase, relative_phase_st(1, 3, 2.5e9, 2e-3, 0.5e-3, c.light_speed), 1e-10);
  }
}

TEST(PairHeralds, EqualPathDifferencesGiveZeroPhase) {
  PhaseConfig c = comb(3, 2e14, 1e10);
  c.L_Bi = 1e-3;
  c.L_Bs = 1e-3;
  c.theta_a = 0.7;
  c.theta_b = 0.7;
  const PairedState p =
      pair_heralds(herald_cbsa(c, 0.01, {Port::Plus, 0, 0}), herald_cbsa(c, 0.01, {Port::Plus, 2, 0}));
  EXPECT_NEAR(p.paired_phase, 0.0, 1e-9);
}

TEST(PairHeralds, RequiresPlusPort) {
  PhaseConfig c = comb(2, 2e14, 1e10);
  EXPECT_THROW(pair_heralds(herald_cbsa(c, 0.01, {Port::Plus, 0, 0}), herald_cbsa(c, 0.01, {Port::Minus, 1, 0})),
               ValidationError);
}

TEST(McChain, MaxGeometricMatchesNEx) {
  for (double p : {0.05, 0.1, 0.5}) {
    const MCEstimate e = mc_max_geometric(p, {100000, 21, 0});
    EXPECT_NEAR(e.mean, n_ex(p), 3.0 * e.std_error) << p;
  }
}

TEST(McChain, CertainHeraldExample) {
  SimParams p;
  p.M = 2;
  p.N = 1;
  p.delta_t = 1e-6;
  p.p_tps = 0.5;
  p.eta_det = p.eta_qm = p.eta_fm = 1.0;
  p.loss_db_per_km = 0.0;
  const MCEstimate e = mc_chain(Scheme::ST, 1, p, {100000, 8, 0});
  EXPECT_NEAR(e.mean, 8e-6, 3.0 * e.std_error);
}

TEST(McChain, MatchesTotalTimeJ1) {
  SimParams p = presets::chain_realistic();
  p.link_length_km = 75.0;
  for (Scheme s : {Scheme::SS, Scheme::ST, Scheme::TT}) {
    const MCEstimate e = mc_chain(s, 1, p, {50000, 31, 0});
    EXPECT_NEAR(e.mean, total_time(s, 1, p), 3.0 * e.std_error) << to_string(s);
  }
}

TEST(McChain, MatchesTotalTimeJ2) {
  SimParams p = presets::chain_ideal();
  p.link_length_km = 25.0;
  p.eta_qm = p.eta_det = p.eta_fm = 1.0;
  for (Scheme s : {Scheme::SS, Scheme::ST, Scheme::TT}) {
    const MCEstimate e = mc_chain(s, 2, p, {20000, 32, 0});
    EXPECT_NEAR(e.mean, total_time(s, 2, p), 3.0 * e.std_error) << to_string(s);
  }
}

TEST(McChain, DeterministicAndBounded) {
  SimParams p = presets::chain_realistic();
  p.link_length_km = 40.0;
  EXPECT_EQ(mc_chain(Scheme::ST, 1, p, {3000, 5, 1}), mc_chain(Scheme::ST, 1, p, {3000, 5, 4}));
  EXPECT_THROW(mc_chain(Scheme::ST, 3, p, {10, 1, 0}), ValidationError);
  EXPECT_THROW(mc_chain(Scheme::ST, 1, p, {0, 1, 0}), ValidationError);
}

TEST(Renewal, ExpectedPairsExact) {
  EXPECT_EQ(expected_pairs_exact(2, Rational(1, 2)), Rational(1, 4));
  EXPECT_EQ(expected_pairs_exact(2, Rational(1)), Rational(1));
  EXPECT_EQ(expected_pairs_exact(3, Rational(1)), Rational(1));
  // K ~ Bin(4, 1/2): floor(K/2) = 1 for K in {2,3}, 2 for K = 4 -> (6+4)/16 + 2/16
  EXPECT_EQ(expected_pairs_exact(4, Rational(1, 2)), Rational(12, 16));
  EXPECT_NEAR(expected_pairs_dp(4, 0.5), 0.75, 1e-15);
}

TEST(Renewal, SsRateForcedCase) {
  SimParams p;
  p.M = 1;
  p.N = 1;
  p.delta_t = 1.0;
  p.p_tps = 0.5;
  p.eta_det = p.eta_qm = p.eta_fm = 1.0;
  p.loss_db_per_km = 0.0;
  EXPECT_NEAR(ss_elementary_rate_exact(p), 0.5, 1e-15);
}

TEST(Verify, FullSuitePasses) {
  const auto checks = run_verification({1, 5000, 0});
  EXPECT_GT(checks.size(), 20u);
  for (const auto& c : checks) EXPECT_TRUE(c.pass) << c.name << ": expected " << c.expected << " got " << c.got;
  EXPECT_TRUE(all_passed(checks));
  EXPECT_FALSE(all_passed({}));
}
