#include "qrepeater/mixture.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "qrepeater/errors.hpp"

namespace qrep {

namespace {
constexpr std::array<Component, 4> kComponents{Component::C11, Component::C20, Component::C1,
                                               Component::C0};
}

std::string_view to_string(Component c) {
  switch (c) {
    case Component::C11: return "c11";
    case Component::C20: return "c20";
    case Component::C1: return "c1";
    case Component::C0: return "c0";
  }
  return "?";
}

bool is_legal_label(Scheme scheme, Stage stage, Component c) {
  switch (scheme) {
    case Scheme::SS: return c == Component::C1 || c == Component::C0;
    case Scheme::TT: return c == Component::C11;
    case Scheme::ST:
      if (stage == Stage::Initial) return c == Component::C11 || c == Component::C20;
      return c == Component::C11 || c == Component::C1 || c == Component::C0;
  }
  return false;
}

void check_mixture(const Mixture& m) {
  std::vector<std::string> issues;
  for (Component c : kComponents) {
    const double v = m[c];
    if (!(v >= 0.0)) issues.push_back(std::string(to_string(c)) + " is negative");
    if (v != 0.0 && !is_legal_label(m.scheme, m.stage, c)) {
      issues.push_back(std::string(to_string(c)) + " is not a legal component for " + describe(m));
    }
  }
  if (std::abs(m.sum() - 1.0) > 1e-12) issues.push_back("coefficients of " + describe(m) + " do not sum to 1");
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

Mixture make_ss(double alpha) {
  Mixture m;
  m.scheme = Scheme::SS;
  m.stage = Stage::Initial;
  m.c1 = alpha;
  m.c0 = 1.0 - alpha;
  return m;
}

Mixture make_st_initial(double c11, double c20) {
  Mixture m;
  m.scheme = Scheme::ST;
  m.stage = Stage::Initial;
  m.c11 = c11;
  m.c20 = c20;
  return m;
}

Mixture make_st_post_swap(double c11, double c1, double c0) {
  Mixture m;
  m.scheme = Scheme::ST;
  m.stage = Stage::PostSwap;
  m.c11 = c11;
  m.c1 = c1;
  m.c0 = c0;
  return m;
}

Mixture make_tt() {
  Mixture m;
  m.scheme = Scheme::TT;
  m.stage = Stage::Initial;
  m.c11 = 1.0;
  return m;
}

std::string describe(const Mixture& m) {
  std::ostringstream os;
  os.precision(17);
  os << to_string(m.scheme) << (m.stage == Stage::Initial ? " initial" : " post-swap") << " {";
  bool first = true;
  for (Component c : kComponents) {
    if (!is_legal_label(m.scheme, m.stage, c) && m[c] == 0.0) continue;
    if (!first) os << ", ";
    os << to_string(c) << ": " << m[c];
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace qrep
