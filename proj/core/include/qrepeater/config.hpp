#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "qrepeater/params.hpp"

namespace qrep {

// One SimParams field as it appears in config files and on the command line.
struct ParamField {
  std::string_view name;
  bool integral;
  double SimParams::*real;
  std::int64_t SimParams::*integer;
};

// All SimParams fields, in declaration order.
std::span<const ParamField> param_fields();

// Parses a flat JSON object whose keys are SimParams field names. Keys not
// present keep the value from `base`; unknown keys and wrong types are
// rejected with ValidationError. The result is not range-validated.
SimParams params_from_json(std::string_view json_text, const SimParams& base = {});
SimParams load_params_file(const std::filesystem::path& path, const SimParams& base = {});

// Serializes every field, integers as integers and reals at full precision.
std::string params_to_json(const SimParams& p);

// Sets one field by name from its textual value; throws ValidationError for
// unknown names or unparsable values.
void set_param(SimParams& p, std::string_view name, std::string_view value);

}  // namespace qrep
