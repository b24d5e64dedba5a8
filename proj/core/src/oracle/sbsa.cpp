#include "qrepeater/oracle/sbsa.hpp"

#include "qrepeater/errors.hpp"

namespace qrep::oracle {

namespace {

void check_link(const RationalMixture& m) {
  std::vector<std::string> issues;
  if (m.scheme != Scheme::ST) issues.push_back("SBSA enumeration expects ST mixtures");
  for (Component c : {Component::C11, Component::C20, Component::C1, Component::C0}) {
    if (m[c] < 0) issues.push_back(std::string(to_string(c)) + " is negative");
    if (m[c] != 0 && !is_legal_label(m.scheme, m.stage, c)) {
      issues.push_back(std::string(to_string(c)) + " is not legal for this stage");
    }
  }
  if (m.sum() != 1) issues.push_back("coefficients must sum to exactly 1");
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

void add_placement(std::vector<ExcitationConfig>& out, const Rational& prob,
                   std::initializer_list<std::pair<Memory, Bin>> photons) {
  if (prob == 0) return;
  ExcitationConfig c;
  c.probability = prob;
  for (auto [m, b] : photons) ++c.at(m, b);
  out.push_back(c);
}

}  // namespace

RationalMixture exact(const Mixture& m) {
  RationalMixture r;
  r.scheme = m.scheme;
  r.stage = m.stage;
  r.c11 = Rational(m.c11);
  r.c20 = Rational(m.c20);
  r.c1 = Rational(m.c1);
  r.c0 = Rational(m.c0);
  return r;
}

int ExcitationConfig::count(Memory m) const {
  const auto& p = photons[static_cast<int>(m)];
  return p[0] + p[1];
}

std::vector<ExcitationConfig> link_placements(const RationalMixture& link, bool first_link) {
  const Memory outer = first_link ? Memory::A : Memory::D;
  const Memory inner = first_link ? Memory::B : Memory::C;
  const Rational half(1, 2), quarter(1, 4);
  std::vector<ExcitationConfig> out;
  add_placement(out, link.c11 * half, {{outer, Bin::Early}, {inner, Bin::Late}});
  add_placement(out, link.c11 * half, {{outer, Bin::Late}, {inner, Bin::Early}});
  add_placement(out, link.c20 * half, {{inner, Bin::Early}, {inner, Bin::Late}});
  add_placement(out, link.c20 * half, {{outer, Bin::Early}, {outer, Bin::Late}});
  add_placement(out, link.c1 * quarter, {{inner, Bin::Early}});
  add_placement(out, link.c1 * quarter, {{inner, Bin::Late}});
  add_placement(out, link.c1 * quarter, {{outer, Bin::Early}});
  add_placement(out, link.c1 * quarter, {{outer, Bin::Late}});
  add_placement(out, link.c0, {});
  return out;
}

SbsaResult enumerate_sbsa(const RationalMixture& state_ab, const RationalMixture& state_cd, const Rational& eta) {
  check_link(state_ab);
  check_link(state_cd);
  if (eta < 0 || eta > 1) throw ValidationError("eta must lie in [0, 1]");

  const Rational half(1, 2);
  SbsaResult res;
  Rational acc11, acc1, acc0;

  for (const ExcitationConfig& ab : link_placements(state_ab, true)) {
    for (const ExcitationConfig& cd : link_placements(state_cd, false)) {
      ExcitationConfig joint;
      for (int m = 0; m < 4; ++m) {
        for (int b = 0; b < 2; ++b) joint.photons[m][b] = ab.photons[m][b] + cd.photons[m][b];
      }
      joint.probability = ab.probability * cd.probability;

      const int nb = joint.count(Memory::B);
      const int nc = joint.count(Memory::C);
      const int retrieved = nb + nc;
      // Photons 0..nb-1 come from B, the rest from C.
      for (unsigned mask = 0; mask < (1u << retrieved); ++mask) {
        Rational survival(1);
        int sb = 0, sc = 0;
        for (int k = 0; k < retrieved; ++k) {
          const bool alive = (mask >> k) & 1u;
          survival *= alive ? eta : Rational(1) - eta;
          if (alive) ++(k < nb ? sb : sc);
        }
        const Rational p = joint.probability * survival;
        SbsaBranch branch;
        branch.placement = joint;
        branch.survivors_b = sb;
        branch.survivors_c = sc;
        if (sb == 1 && sc == 1) {
          const int outer = (joint.count(Memory::A) > 0 ? 1 : 0) + (joint.count(Memory::D) > 0 ? 1 : 0);
          const Component cls = outer == 2 ? Component::C11 : outer == 1 ? Component::C1 : Component::C0;
          SbsaBranch ok = branch;
          ok.accepted = true;
          ok.outcome = cls;
          ok.probability = p * half;
          (cls == Component::C11 ? acc11 : cls == Component::C1 ? acc1 : acc0) += ok.probability;
          res.branches.push_back(std::move(ok));
          branch.probability = p * half;  // Bell state not identified
        } else {
          branch.probability = p;
        }
        res.branches.push_back(std::move(branch));
      }
    }
  }

  for (const SbsaBranch& b : res.branches) res.total_probability += b.probability;
  res.success_prob = acc11 + acc1 + acc0;
  if (res.success_prob != 0) {
    RationalMixture out;
    out.scheme = Scheme::ST;
    out.stage = Stage::PostSwap;
    out.c11 = acc11 / res.success_prob;
    out.c1 = acc1 / res.success_prob;
    out.c0 = acc0 / res.success_prob;
    res.state = out;
  }
  return res;
}

}  // namespace qrep::oracle
