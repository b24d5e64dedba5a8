#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qrep {

// Raised when inputs violate a documented precondition. Carries every
// violated constraint, not just the first one.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<std::string> issues);
  explicit ValidationError(const std::string& issue)
      : ValidationError(std::vector<std::string>{issue}) {}

  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

// A configuration for which some round has zero success probability, so the
// expected waiting time is infinite.
class UnreachableError : public std::runtime_error {
 public:
  UnreachableError(int round, const std::string& what)
      : std::runtime_error(what), round_(round) {}

  // Round index h of the failing probability p^(h); -1 when not tied to a round.
  int round() const noexcept { return round_; }

 private:
  int round_;
};

}  // namespace qrep
