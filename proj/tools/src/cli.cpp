#include "qrepeater/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qrepeater/chain_model.hpp"
#include "qrepeater/config.hpp"
#include "qrepeater/errors.hpp"
#include "qrepeater/link_model.hpp"
#include "qrepeater/oracle/mc_chain.hpp"
#include "qrepeater/oracle/renewal.hpp"
#include "qrepeater/oracle/verify.hpp"
#include "qrepeater/phase_model.hpp"

namespace qrep::cli {

namespace {

using nlohmann::ordered_json;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Flags shared by every subcommand that takes a parameter set.
struct ParamOptions {
  std::string config;
  std::string preset;
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> overrides;
};

struct McFlags {
  std::uint64_t seed = 1;
  std::uint64_t episodes = 100000;
  unsigned workers = 0;
};

void add_param_flags(CLI::App* sub, ParamOptions& po, const std::string& default_preset) {
  po.preset = default_preset;
  sub->add_option("--config", po.config, "JSON file with SimParams fields")->check(CLI::ExistingFile);
  sub->add_option("--preset", po.preset, "base parameter set")
      ->check(CLI::IsMember({"elementary", "elementary-m10", "chain-realistic", "chain-ideal"}))
      ->capture_default_str();
  for (const ParamField& f : param_fields()) {
    const std::string name(f.name);
    CLI::Option* opt = sub->add_option("--" + name, po.values[name], "override " + name);
    po.overrides.emplace_back(name, opt);
  }
}

void add_mc_flags(CLI::App* sub, McFlags& mc) {
  sub->add_option("--seed", mc.seed, "Monte Carlo seed")->capture_default_str();
  sub->add_option("--episodes", mc.episodes, "Monte Carlo episodes")->capture_default_str();
  sub->add_option("--workers", mc.workers, "worker threads (0: all cores)")->capture_default_str();
}

SimParams preset_params(const std::string& name) {
  if (name == "elementary-m10") return presets::elementary_comparison(10);
  if (name == "chain-realistic") return presets::chain_realistic();
  if (name == "chain-ideal") return presets::chain_ideal();
  return presets::elementary_comparison(100);
}

SimParams resolve_params(const ParamOptions& po, std::ostream& err) {
  SimParams p = preset_params(po.preset);
  if (!po.config.empty()) p = load_params_file(po.config, p);
  for (const auto& [name, opt] : po.overrides) {
    if (opt->count() == 0) continue;
    const std::string& value = po.values.at(name);
    set_param(p, name, value);
    err << "override " << name << " = " << value << "\n";
  }
  validate(p);
  err << "preset: " << po.preset << "\n";
  if (!po.config.empty()) err << "config: " << po.config << "\n";
  err << "parameters: " << params_to_json(p) << "\n";
  return p;
}

McOptions mc_options(const McFlags& f, std::ostream& err) {
  if (f.episodes < 1) throw ValidationError("--episodes must be >= 1");
  err << "seed: " << f.seed << "\nepisodes: " << f.episodes << "\n";
  return McOptions{f.episodes, f.seed, f.workers};
}

std::vector<double> distance_grid(double start, double end, double step) {
  std::vector<std::string> issues;
  if (!(start >= 0.0)) issues.push_back("distance start must be >= 0");
  if (!(end >= start)) issues.push_back("distance end must be >= start");
  if (!(step > 0.0)) issues.push_back("distance step must be > 0");
  if (!issues.empty()) throw ValidationError(std::move(issues));
  const auto count = static_cast<std::int64_t>(std::floor((end - start) / step + 1e-9));
  std::vector<double> grid;
  for (std::int64_t i = 0; i <= count; ++i) grid.push_back(start + static_cast<double>(i) * step);
  return grid;
}

std::vector<Scheme> parse_schemes(const std::vector<std::string>& names) {
  std::vector<Scheme> out;
  for (const std::string& n : names) {
    if (n == "all") {
      out.insert(out.end(), {Scheme::SS, Scheme::ST, Scheme::TT});
    } else {
      out.push_back(parse_scheme(n));
    }
  }
  if (out.empty()) out = {Scheme::SS, Scheme::ST, Scheme::TT};
  return out;
}

std::vector<int> j_range(int j_min, int j_max) {
  if (j_min < 1 || j_max < j_min) throw ValidationError("J range requires 1 <= j-min <= j-max");
  std::vector<int> js;
  for (int j = j_min; j <= j_max; ++j) js.push_back(j);
  return js;
}

struct SweepFlags {
  std::vector<std::string> schemes{"all"};
  double start = 0.0;
  double end = 400.0;
  double step = 10.0;
};

struct ChainFlags {
  int j_min = 1;
  int j_max = 5;
  bool full_table = false;
};

void elementary_sweep(const SimParams& base, const SweepFlags& sf, const std::string& ss_method,
                      const McOptions& mc, std::ostream& os) {
  os << "distance_km,scheme,rate_per_s,std_error,method\n";
  const auto schemes = parse_schemes(sf.schemes);
  for (double d : distance_grid(sf.start, sf.end, sf.step)) {
    SimParams p = base;
    p.link_length_km = d;
    for (Scheme s : schemes) {
      double rate = 0.0, se = 0.0;
      std::string method = "analytic";
      if (s != Scheme::SS) {
        rate = elementary_rate(s, p);
      } else if (ss_method == "renewal") {
        rate = oracle::ss_elementary_rate_exact(p);
        method = "renewal";
      } else {
        const MCEstimate e = mc_elementary(s, p, mc);
        rate = e.mean;
        se = e.std_error;
        method = "mc";
      }
      os << num(d) << ',' << to_string(s) << ',' << num(rate) << ',' << num(se) << ',' << method << '\n';
    }
  }
}

void chain_sweep(const SimParams& base, const SweepFlags& sf, const ChainFlags& cf, std::ostream& os,
                 std::ostream& err) {
  const auto js = j_range(cf.j_min, cf.j_max);
  const auto schemes = parse_schemes(sf.schemes);
  os << (cf.full_table ? "total_distance_km,scheme,j,rate_per_s\n" : "total_distance_km,scheme,best_j,rate_per_s\n");
  for (double d : distance_grid(sf.start, sf.end, sf.step)) {
    for (Scheme s : schemes) {
      LinkOptimization opt;
      try {
        opt = optimize_links(s, d, js, base);
      } catch (const UnreachableError& e) {
        err << "warning: " << to_string(s) << " at " << num(d) << " km: " << e.what() << "\n";
        opt.table.clear();
        for (int j : js) opt.table.push_back(LinkCountEntry{j, std::ldexp(d, -j), 0.0, 0.0, e.what()});
      }
      if (cf.full_table) {
        for (const auto& row : opt.table) {
          os << num(d) << ',' << to_string(s) << ',' << row.rounds << ',' << num(row.rate) << '\n';
        }
      } else {
        os << num(d) << ',' << to_string(s) << ',' << opt.best_rounds << ',' << num(opt.best_rate) << '\n';
      }
    }
  }
}

void optimize_report(const SimParams& base, const SweepFlags& sf, const ChainFlags& cf, std::ostream& os) {
  const auto js = j_range(cf.j_min, cf.j_max);
  ordered_json doc;
  doc["j_range"] = js;
  doc["parameters"] = ordered_json::parse(params_to_json(base));
  doc["results"] = ordered_json::array();
  for (double d : distance_grid(sf.start, sf.end, sf.step)) {
    for (Scheme s : parse_schemes(sf.schemes)) {
      ordered_json r;
      r["total_distance_km"] = d;
      r["scheme"] = std::string(to_string(s));
      ordered_json table = ordered_json::array();
      try {
        const LinkOptimization opt = optimize_links(s, d, js, base);
        r["best_j"] = opt.best_rounds;
        r["best_rate_per_s"] = opt.best_rate;
        for (const auto& row : opt.table) {
          ordered_json t;
          t["j"] = row.rounds;
          t["link_length_km"] = row.link_length_km;
          if (row.error) {
            t["error"] = *row.error;
          } else {
            t["total_time_s"] = row.total_time;
            t["rate_per_s"] = row.rate;
          }
          table.push_back(std::move(t));
        }
      } catch (const UnreachableError& e) {
        r["best_j"] = nullptr;
        r["best_rate_per_s"] = 0.0;
        r["error"] = e.what();
      }
      r["table"] = std::move(table);
      doc["results"].push_back(std::move(r));
    }
  }
  os << doc.dump(2) << '\n';
}

void mc_report(const SimParams& p, const std::string& target, const std::string& scheme_name, int rounds,
               const McOptions& mc, std::ostream& os) {
  const Scheme s = parse_scheme(scheme_name);
  ordered_json doc;
  doc["target"] = target;
  doc["scheme"] = std::string(to_string(s));
  MCEstimate e;
  if (target == "chain") {
    e = oracle::mc_chain(s, rounds, p, mc);
    doc["rounds"] = rounds;
    doc["quantity"] = "total_time_s";
    doc["reference"] = total_time(s, rounds, p);
  } else {
    e = mc_elementary(s, p, mc);
    doc["quantity"] = "rate_per_s";
    doc["reference"] = s == Scheme::SS ? oracle::ss_elementary_rate_exact(p) : elementary_rate(s, p);
  }
  doc["mean"] = e.mean;
  doc["std_error"] = e.std_error;
  doc["episodes"] = e.episodes;
  doc["seed"] = e.seed;
  os << doc.dump(2) << '\n';
}

bool verify_report(const McFlags& f, std::ostream& os) {
  const auto checks = oracle::run_verification({f.seed, f.episodes, f.workers});
  os << "result | check | expected | got | tolerance\n";
  for (const auto& c : checks) {
    os << (c.pass ? "PASS" : "FAIL") << " | " << c.name << " | " << c.expected << " | " << c.got << " | "
       << c.tolerance << '\n';
  }
  const bool ok = oracle::all_passed(checks);
  os << (ok ? "all checks passed" : "verification FAILED") << '\n';
  return ok;
}

void phase_report(double fidelity, double sep_ghz, double c, double path_mm, bool has_path, std::ostream& os) {
  const double sep_hz = sep_ghz * 1e9;
  const PhaseBudget b = phase_budget(fidelity, sep_hz, c);
  ordered_json doc;
  doc["fidelity"] = fidelity;
  doc["freq_separation_hz"] = sep_hz;
  doc["light_speed_m_per_s"] = c;
  doc["sigma_rad"] = b.sigma;
  doc["displacement_m"] = b.max_displacement;
  doc["displacement_mm"] = b.max_displacement * 1e3;
  if (has_path) {
    doc["path_difference_mm"] = path_mm;
    doc["paired_phase_rad"] = relative_phase_st(sep_hz, path_mm * 1e-3, c);
  }
  os << doc.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiplexed quantum-repeater rate and phase-budget calculator", "qrep"};
  app.require_subcommand(1);
  std::string output;

  auto add_output = [&output](CLI::App* sub) {
    sub->add_option("--output,-o", output, "write results to this file instead of stdout");
  };

  // elementary-sweep
  ParamOptions el_params;
  McFlags el_mc;
  SweepFlags el_sweep;
  std::string ss_method = "mc";
  CLI::App* el = app.add_subcommand("elementary-sweep", "elementary-link rate vs node distance (CSV)");
  add_param_flags(el, el_params, "elementary");
  add_mc_flags(el, el_mc);
  add_output(el);
  el->add_option("--scheme", el_sweep.schemes, "ss, st, tt or all (comma separated)")->delimiter(',');
  el->add_option("--distance-start", el_sweep.start, "km")->capture_default_str();
  el->add_option("--distance-end", el_sweep.end, "km")->capture_default_str();
  el->add_option("--distance-step", el_sweep.step, "km")->capture_default_str();
  el->add_option("--ss-method", ss_method, "SS rate: Monte Carlo or exact renewal-reward")
      ->check(CLI::IsMember({"mc", "renewal"}))
      ->capture_default_str();

  // chain-sweep and optimize share their flags
  ParamOptions ch_params, op_params;
  SweepFlags ch_sweep, op_sweep;
  ChainFlags ch_flags, op_flags;
  auto add_chain_flags = [&](CLI::App* sub, ParamOptions& po, SweepFlags& sf, ChainFlags& cf) {
    sf.end = 800.0;
    add_param_flags(sub, po, "chain-realistic");
    add_output(sub);
    sub->add_option("--scheme", sf.schemes, "ss, st, tt or all (comma separated)")->delimiter(',');
    sub->add_option("--total-distance-start", sf.start, "km")->capture_default_str();
    sub->add_option("--total-distance-end", sf.end, "km")->capture_default_str();
    sub->add_option("--total-distance-step", sf.step, "km")->capture_default_str();
    sub->add_option("--j-min", cf.j_min, "fewest swap rounds")->capture_default_str();
    sub->add_option("--j-max", cf.j_max, "most swap rounds")->capture_default_str();
    sub->add_flag("--full-table", cf.full_table, "one row per (distance, J)");
  };
  CLI::App* ch = app.add_subcommand("chain-sweep", "best repeater-chain rate vs total distance (CSV)");
  add_chain_flags(ch, ch_params, ch_sweep, ch_flags);
  CLI::App* op = app.add_subcommand("optimize", "per-J rate table and best J (JSON)");
  add_chain_flags(op, op_params, op_sweep, op_flags);

  // phase-budget
  double fidelity = 0.99, sep_ghz = 10.0, light_speed = kVacuumLightSpeed, path_mm = 0.0;
  CLI::App* ph = app.add_subcommand("phase-budget", "path-stability budget for a target fidelity (JSON)");
  add_output(ph);
  ph->add_option("--fidelity", fidelity, "target fidelity in (0.5, 1]")->capture_default_str();
  ph->add_option("--freq-separation-ghz", sep_ghz, "(m - m') delta_f in GHz")->capture_default_str();
  ph->add_option("--light-speed", light_speed, "m/s")->capture_default_str();
  CLI::Option* path_opt = ph->add_option("--path-difference-mm", path_mm, "also report the paired phase");

  // mc
  ParamOptions mc_params;
  McFlags mc_flags;
  std::string mc_target = "elementary", mc_scheme = "st";
  int mc_rounds = 1;
  CLI::App* mc = app.add_subcommand("mc", "single Monte Carlo estimate with its closed-form reference (JSON)");
  add_param_flags(mc, mc_params, "elementary");
  add_mc_flags(mc, mc_flags);
  add_output(mc);
  mc->add_option("--target", mc_target, "elementary rate or chain total time")
      ->check(CLI::IsMember({"elementary", "chain"}))
      ->capture_default_str();
  mc->add_option("--scheme", mc_scheme, "ss, st or tt")->capture_default_str();
  mc->add_option("--rounds", mc_rounds, "J for --target chain (1 or 2)")->capture_default_str();

  // verify
  McFlags vf_flags;
  vf_flags.episodes = 20000;
  CLI::App* vf = app.add_subcommand("verify", "run every oracle check (table)");
  add_mc_flags(vf, vf_flags);
  add_output(vf);

  std::vector<const char*> argv{"qrep"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kUsageOrValidation;
  }

  std::ostringstream body;
  int code = kOk;
  try {
    if (*el) {
      err << "command: elementary-sweep\n";
      const SimParams p = resolve_params(el_params, err);
      const McOptions opts = mc_options(el_mc, err);
      elementary_sweep(p, el_sweep, ss_method, opts, body);
    } else if (*ch) {
      err << "command: chain-sweep\n";
      chain_sweep(resolve_params(ch_params, err), ch_sweep, ch_flags, body, err);
    } else if (*op) {
      err << "command: optimize\n";
      optimize_report(resolve_params(op_params, err), op_sweep, op_flags, body);
    } else if (*ph) {
      err << "command: phase-budget\nfidelity: " << num(fidelity) << "\nfreq_separation_ghz: " << num(sep_ghz)
          << "\nlight_speed: " << num(light_speed) << "\n";
      phase_report(fidelity, sep_ghz, light_speed, path_mm, path_opt->count() > 0, body);
    } else if (*mc) {
      err << "command: mc\n";
      const SimParams p = resolve_params(mc_params, err);
      const McOptions opts = mc_options(mc_flags, err);
      mc_report(p, mc_target, mc_scheme, mc_rounds, opts, body);
    } else if (*vf) {
      err << "command: verify\n";
      mc_options(vf_flags, err);
      if (!verify_report(vf_flags, body)) code = kVerifyFailed;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageOrValidation;
  }

  if (output.empty()) {
    out << body.str();
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!(f << body.str())) {
      err << "error: cannot write " << output << "\n";
      return kUsageOrValidation;
    }
    err << "wrote " << output << "\n";
  }
  return code;
}

}  // namespace qrep::cli
