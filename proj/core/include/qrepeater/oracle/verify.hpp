#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qrep::oracle {

struct Check {
  std::string name;
  std::string expected;
  std::string got;
  std::string tolerance;
  bool pass = false;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::uint64_t episodes = 20000;
  unsigned workers = 0;
};

// Runs every oracle against the closed forms it validates.
std::vector<Check> run_verification(const VerifyOptions& options = {});

bool all_passed(const std::vector<Check>& checks);

}  // namespace qrep::oracle
