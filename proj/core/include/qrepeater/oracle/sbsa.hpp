#pragma once

#include <array>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qrepeater/mixture.hpp"

namespace qrep::oracle {

using Rational = boost::multiprecision::cpp_rational;
using RationalMixture = BasicMixture<Rational>;

// Exact copy of a double-valued mixture (every double is a dyadic rational).
RationalMixture exact(const Mixture& m);

// Memories of two adjacent ST links A-B and C-D; B and C are swapped.
enum class Memory { A, B, C, D };
enum class Bin { Early, Late };

struct ExcitationConfig {
  std::array<std::array<int, 2>, 4> photons{};  // [memory][bin]
  Rational probability;

  int count(Memory m) const;
  int& at(Memory m, Bin b) { return photons[static_cast<int>(m)][static_cast<int>(b)]; }
};

// All placements of one link's excitations with their probabilities.
//   c11: one photon in each memory, (outer early, inner late) or the reverse
//   c20: both bins in the inner or in the outer memory
//   c1:  one photon, inner or outer, either bin
//   c0:  empty
std::vector<ExcitationConfig> link_placements(const RationalMixture& link, bool first_link);

struct SbsaBranch {
  ExcitationConfig placement;  // both links; probability of the placement alone
  int survivors_b = 0;
  int survivors_c = 0;
  bool accepted = false;
  std::optional<Component> outcome;  // class of the outer memories when accepted
  Rational probability;              // placement x survival x Bell identification
};

struct SbsaResult {
  Rational success_prob;
  std::optional<RationalMixture> state;  // absent when success_prob is 0
  std::vector<SbsaBranch> branches;
  Rational total_probability;            // accepted plus rejected, exactly 1
};

// Exhaustive enumeration of one swap between two ST links. Every retrieved
// inner photon survives independently with probability eta. The swap is
// accepted iff exactly one photon from B and exactly one from C survive,
// followed by a 1/2 Bell-identification factor. Accepted branches are
// classified by the outer memories: both excited -> c11, one -> c1, none -> c0.
SbsaResult enumerate_sbsa(const RationalMixture& state_ab, const RationalMixture& state_cd, const Rational& eta);

}  // namespace qrep::oracle
