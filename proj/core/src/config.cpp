#include "qrepeater/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qrepeater/errors.hpp"

namespace qrep {

namespace {

using nlohmann::json;

constexpr std::array<ParamField, 11> kFields{{
    {"p_tps", false, &SimParams::p_tps, nullptr},
    {"M", true, nullptr, &SimParams::M},
    {"N", true, nullptr, &SimParams::N},
    {"delta_t", false, &SimParams::delta_t, nullptr},
    {"delta_f", false, &SimParams::delta_f, nullptr},
    {"eta_det", false, &SimParams::eta_det, nullptr},
    {"eta_qm", false, &SimParams::eta_qm, nullptr},
    {"eta_fm", false, &SimParams::eta_fm, nullptr},
    {"loss_db_per_km", false, &SimParams::loss_db_per_km, nullptr},
    {"link_length_km", false, &SimParams::link_length_km, nullptr},
    {"light_speed_m_per_s", false, &SimParams::light_speed_m_per_s, nullptr},
}};

const ParamField* find_field(std::string_view name) {
  for (const auto& f : kFields) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

}  // namespace

std::span<const ParamField> param_fields() { return kFields; }

SimParams params_from_json(std::string_view json_text, const SimParams& base) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config must be a flat JSON object");

  SimParams out = base;
  std::vector<std::string> issues;
  for (const auto& [key, value] : doc.items()) {
    const ParamField* f = find_field(key);
    if (f == nullptr) {
      issues.push_back("unknown config key '" + key + "'");
      continue;
    }
    if (f->integral) {
      if (!value.is_number_integer()) {
        issues.push_back("config key '" + key + "' must be an integer");
        continue;
      }
      out.*(f->integer) = value.get<std::int64_t>();
    } else {
      if (!value.is_number()) {
        issues.push_back("config key '" + key + "' must be a number");
        continue;
      }
      out.*(f->real) = value.get<double>();
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return out;
}

SimParams load_params_file(const std::filesystem::path& path, const SimParams& base) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return params_from_json(buf.str(), base);
}

std::string params_to_json(const SimParams& p) {
  // nlohmann::ordered_json keeps declaration order, so output is stable.
  nlohmann::ordered_json doc;
  for (const auto& f : kFields) {
    if (f.integral) {
      doc[std::string(f.name)] = p.*(f.integer);
    } else {
      doc[std::string(f.name)] = p.*(f.real);
    }
  }
  return doc.dump();
}

void set_param(SimParams& p, std::string_view name, std::string_view value) {
  const ParamField* f = find_field(name);
  if (f == nullptr) throw ValidationError("unknown parameter '" + std::string(name) + "'");
  const char* first = value.data();
  const char* last = value.data() + value.size();
  if (f->integral) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
      throw ValidationError("parameter '" + std::string(name) + "' expects an integer, got '" +
                            std::string(value) + "'");
    }
    p.*(f->integer) = v;
  } else {
    double v = 0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
      throw ValidationError("parameter '" + std::string(name) + "' expects a number, got '" +
                            std::string(value) + "'");
    }
    p.*(f->real) = v;
  }
}

}  // namespace qrep
