#pragma once

#include <optional>
#include <string>

#include "qrepeater/params.hpp"

namespace qrep {

enum class Stage { Initial, PostSwap };

enum class Component { C11, C20, C1, C0 };

std::string_view to_string(Component c);

// Diagonal mixture of memory-excitation classes between two memories:
//   c11  one excitation in each memory
//   c20  two excitations in one memory, none in the other
//   c1   one excitation shared across the two memories
//   c0   vacuum
// Legal labels per scheme/stage:
//   SS            {c1, c0}
//   ST initial    {c11, c20}
//   ST post-swap  {c11, c1, c0}
//   TT            {c11}
template <class T>
struct BasicMixture {
  Scheme scheme = Scheme::ST;
  Stage stage = Stage::Initial;
  T c11{};
  T c20{};
  T c1{};
  T c0{};

  T sum() const { return c11 + c20 + c1 + c0; }

  const T& operator[](Component c) const {
    switch (c) {
      case Component::C11: return c11;
      case Component::C20: return c20;
      case Component::C1: return c1;
      case Component::C0: return c0;
    }
    return c0;
  }

  friend bool operator==(const BasicMixture&, const BasicMixture&) = default;
};

using Mixture = BasicMixture<double>;

bool is_legal_label(Scheme scheme, Stage stage, Component c);

// Throws ValidationError if a coefficient is negative, an illegal label is
// nonzero, or the coefficients do not sum to 1 within 1e-12.
void check_mixture(const Mixture& m);

Mixture make_ss(double alpha);
Mixture make_st_initial(double c11, double c20);
Mixture make_st_post_swap(double c11, double c1, double c0);
Mixture make_tt();

std::string describe(const Mixture& m);

template <class T>
struct BasicSwapOutcome {
  T success_prob{};
  // Absent when success_prob is zero.
  std::optional<BasicMixture<T>> state;
};

using SwapOutcome = BasicSwapOutcome<double>;

// Closed-form swap of two identical link states, generic over the scalar
// type so the same expressions can be evaluated in exact arithmetic.
//   SS: p = a eta (1 - a eta / 2),  a' = a / (2 - a eta)
//   ST initial (a = c11, b = c20):
//     p = eta^2 a^2 / 2 + eta^2 (1 - eta) a b + eta^2 (1 - eta)^2 b^2 / 2
//   ST post-swap (a = c11, b = c1):
//     p = eta^2 a^2 / 2 + eta^2 a b / 2 + eta^2 b^2 / 8
//   TT: p = eta^2 / 2, state unchanged.
// The post-swap coefficients are each term of p divided by p.
template <class T>
BasicSwapOutcome<T> swap_formula(const BasicMixture<T>& s, const T& eta) {
  const T one(1), two(2), eight(8);
  BasicSwapOutcome<T> out;
  BasicMixture<T> next;
  next.scheme = s.scheme;
  next.stage = Stage::PostSwap;
  switch (s.scheme) {
    case Scheme::SS: {
      const T& a = s.c1;
      out.success_prob = a * eta * (one - a * eta / two);
      if (out.success_prob == T(0)) return out;
      next.c1 = a / (two - a * eta);
      next.c0 = one - next.c1;
      break;
    }
    case Scheme::TT: {
      out.success_prob = eta * eta / two;
      if (out.success_prob == T(0)) return out;
      next.c11 = one;
      break;
    }
    case Scheme::ST: {
      const T e2 = eta * eta;
      T t11, t1, t0;
      if (s.stage == Stage::Initial) {
        const T& a = s.c11;
        const T& b = s.c20;
        const T loss = one - eta;
        t11 = e2 * a * a / two;
        t1 = e2 * loss * a * b;
        t0 = e2 * loss * loss * b * b / two;
      } else {
        const T& a = s.c11;
        const T& b = s.c1;
        t11 = e2 * a * a / two;
        t1 = e2 * a * b / two;
        t0 = e2 * b * b / eight;
      }
      out.success_prob = t11 + t1 + t0;
      if (out.success_prob == T(0)) return out;
      next.c11 = t11 / out.success_prob;
      next.c1 = t1 / out.success_prob;
      next.c0 = t0 / out.success_prob;
      break;
    }
  }
  out.state = next;
  return out;
}

}  // namespace qrep
