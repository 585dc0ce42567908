/**
 * @file cli.hpp
 * @brief Command-line front end: distributions, relay matrices and sweeps.
 *
 *   ltnc dist   --k 100 [--c 0.05 --delta 0.5] [--out mu.csv]
 *   ltnc matrix --k1 50 --k2 50 --which P|Po [--out p.csv]
 *   ltnc sweep  --scenario merged --scenario multiplex --k1 100 --k2 100 --out dir
 *
 * Exit codes: 0 success, 2 usage or configuration error, 1 runtime failure.
 * Kept header-only so the test suites can drive it in-process.
 */

#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ltnc/degree_distribution.hpp"
#include "ltnc/errors.hpp"
#include "ltnc/joint_degree_matrix.hpp"
#include "ltnc/relay.hpp"
#include "ltnc/sim.hpp"

namespace ltnc::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Bad flags, config values or config syntax (exit 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output could not be written (exit 1).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed CSV number format: 12 significant digits.
inline std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace detail {

inline std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

inline std::string lower(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

inline std::size_t parse_count(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw UsageError("field '" + field + "': expected a non-negative integer, got '" + text + "'");
  try {
    return static_cast<std::size_t>(std::stoull(t));
  } catch (const std::exception&) {
    throw UsageError("field '" + field + "': integer out of range: '" + text + "'");
  }
}

inline double parse_real(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size() || !std::isfinite(v))
    throw UsageError("field '" + field + "': expected a number, got '" + text + "'");
  return v;
}

inline std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  return f;
}

inline void finish(std::ofstream& f, const std::filesystem::path& path) {
  f.flush();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace detail

/**
 * Degree set syntax: comma- or '+'-separated items, each a degree or an
 * inclusive range "a..b". The bound "N" stands for floor(K/2). "none" or
 * an empty string is the empty set.
 */
inline std::set<std::size_t> parse_degree_set(const std::string& text, std::size_t k) {
  std::set<std::size_t> out;
  const std::string t = detail::trim(text);
  if (t.empty() || detail::lower(t) == "none") return out;
  auto bound = [&](const std::string& s) -> std::size_t {
    const std::string b = detail::trim(s);
    if (b == "N" || b == "n") return k / 2;
    return detail::parse_count("restricted-degrees", b);
  };
  if (t.back() == ',' || t.back() == '+')
    throw UsageError("field 'restricted-degrees': trailing separator in '" + text + "'");
  std::string item;
  std::stringstream ss(t);
  while (std::getline(ss, item, ',')) {
    if (detail::trim(item).empty()) throw UsageError("field 'restricted-degrees': empty item in '" + text + "'");
    std::stringstream parts(item);
    std::string piece;
    while (std::getline(parts, piece, '+')) {
      piece = detail::trim(piece);
      if (piece.empty()) throw UsageError("field 'restricted-degrees': empty item in '" + text + "'");
      const auto dots = piece.find("..");
      if (dots == std::string::npos) {
        out.insert(bound(piece));
        continue;
      }
      const std::size_t lo = bound(piece.substr(0, dots));
      const std::size_t hi = bound(piece.substr(dots + 2));
      if (hi < lo) throw UsageError("field 'restricted-degrees': empty range '" + piece + "'");
      for (std::size_t d = lo; d <= hi; ++d) out.insert(d);
    }
  }
  return out;
}

/// Compact label for a degree set, e.g. "2..7+9"; "none" when empty.
inline std::string format_degree_set(const std::set<std::size_t>& s) {
  if (s.empty()) return "none";
  std::string out;
  auto it = s.begin();
  while (it != s.end()) {
    const std::size_t lo = *it;
    std::size_t hi = lo;
    auto nx = std::next(it);
    while (nx != s.end() && *nx == hi + 1) {
      hi = *nx;
      ++nx;
    }
    if (!out.empty()) out += '+';
    out += std::to_string(lo);
    if (hi > lo) out += ".." + std::to_string(hi);
    it = nx;
  }
  return out;
}

struct ScenarioChoice {
  Scenario scenario = Scenario::Merged;
  std::optional<std::string> restricted;  // inline "nonuniform:<set>"
};

inline ScenarioChoice parse_scenario(const std::string& text) {
  const std::string t = detail::trim(text);
  const auto colon = t.find(':');
  const std::string name = detail::lower(t.substr(0, colon));
  ScenarioChoice choice;
  if (name == "standard" || name == "standardlt" || name == "standard-lt")
    choice.scenario = Scenario::StandardLT;
  else if (name == "multiplex" || name == "timemultiplex" || name == "time-multiplex")
    choice.scenario = Scenario::TimeMultiplex;
  else if (name == "merged")
    choice.scenario = Scenario::Merged;
  else if (name == "nonuniform" || name == "non-uniform")
    choice.scenario = Scenario::NonUniform;
  else
    throw UsageError("field 'scenario': unknown scenario '" + text + "'");
  if (colon != std::string::npos) {
    if (choice.scenario != Scenario::NonUniform)
      throw UsageError("field 'scenario': only nonuniform takes a degree set, got '" + text + "'");
    choice.restricted = t.substr(colon + 1);
  }
  return choice;
}

inline std::string scenario_label(const ScenarioConfig& cfg) {
  if (cfg.scenario == Scenario::NonUniform)
    return std::string("nonuniform:") + format_degree_set(cfg.restricted_degrees);
  return to_string(cfg.scenario);
}

inline AckMode parse_ack_mode(const std::string& text) {
  const std::string t = detail::lower(detail::trim(text));
  if (t == "none") return AckMode::None;
  if (t == "stop-on-s1" || t == "stop-relaying-on-s1-decode" || t == "stop") return AckMode::StopRelayingOnS1Decode;
  throw UsageError("field 'ack-mode': expected 'none' or 'stop-on-s1', got '" + text + "'");
}

// ---- file writers ---------------------------------------------------------

inline void write_distribution_csv(std::ostream& os, const DegreeDistribution& dist) {
  os << "d,prob\n";
  for (std::size_t d = 0; d <= dist.k(); ++d) os << d << ',' << format_number(dist[d]) << '\n';
}

/// All (K+1)(K1+1) cells in row-major order.
inline void write_matrix_csv(std::ostream& os, const JointDegreeMatrix& m) {
  os << "i,j,p\n";
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) os << i << ',' << j << ',' << format_number(m(i, j)) << '\n';
}

/// Per S1 degree j = 1..K1: column sum of P_o, available mu_K1(j), usage probability.
inline void write_feasibility_csv(std::ostream& os, const MergePlan& plan) {
  os << "j,column_sum,mu_k1,p_using\n";
  for (std::size_t j = 1; j <= plan.k1(); ++j)
    os << j << ',' << format_number(plan.p_s1()[j]) << ',' << format_number(plan.mu_k1()[j]) << ','
       << format_number(plan.p_using()[j]) << '\n';
}

inline void write_results_csv(std::ostream& os, const std::vector<SweepResult>& results) {
  os << "scenario,k1,k2,c,delta,overhead,trials,successes,success_rate,ci_low,ci_high,seed\n";
  for (const auto& r : results) {
    const auto& cfg = r.config;
    const std::string label = scenario_label(cfg);
    for (std::size_t g = 0; g < cfg.overhead_grid.size(); ++g) {
      os << label << ',' << cfg.k1 << ',' << cfg.k2 << ',' << format_number(cfg.c) << ','
         << format_number(cfg.delta) << ',' << format_number(cfg.overhead_grid[g]) << ',' << r.trials << ','
         << r.successes[g] << ',' << format_number(r.success_rate[g]) << ',' << format_number(r.ci[g].low) << ','
         << format_number(r.ci[g].high) << ',' << cfg.seed << '\n';
    }
  }
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline nlohmann::ordered_json summary_json(const std::vector<SweepResult>& results, const std::string& results_file) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json manifest;
  manifest["tool"] = "ltnc";
  manifest["version"] = kToolVersion;
  manifest["timestamp"] = utc_timestamp();
  manifest["results_file"] = results_file;
  if (!results.empty()) {
    const auto& c0 = results.front().config;
    manifest["seed"] = c0.seed;
    manifest["overhead_grid"] = c0.overhead_grid;
  }
  j["manifest"] = manifest;
  auto& arr = j["scenarios"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    const auto& cfg = r.config;
    nlohmann::ordered_json s;
    s["scenario"] = scenario_label(cfg);
    s["k1"] = cfg.k1;
    s["k2"] = cfg.k2;
    s["c"] = cfg.c;
    s["delta"] = cfg.delta;
    s["trials"] = r.trials;
    s["seed"] = cfg.seed;
    s["ack_mode"] = to_string(cfg.ack_mode);
    s["restricted_degrees"] = std::vector<std::size_t>(cfg.restricted_degrees.begin(), cfg.restricted_degrees.end());
    s["max_overhead"] = cfg.effective_max_overhead();
    s["erasure_s1_relay"] = cfg.erasure_s1_relay;
    s["erasure_relay_sink"] = cfg.erasure_relay_sink;
    if (auto o = overhead_at_success(r, 0.9))
      s["overhead_at_90"] = *o;
    else
      s["overhead_at_90"] = nullptr;
    s["duration_seconds"] = r.duration_seconds;
    arr.push_back(s);
  }
  return j;
}

// ---- sweep options and config files ----------------------------------------

struct SweepOptions {
  std::vector<std::string> scenarios{"merged"};
  std::size_t k1 = 100;
  std::size_t k2 = 100;
  double c = 0.05;
  double delta = 0.5;
  double overhead_min = 1.0;
  double overhead_max = 1.6;
  double overhead_step = 0.02;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::string ack_mode = "none";
  std::string restricted_degrees;
  std::string out = "sweep-out";
  std::size_t threads = 0;
  std::size_t payload_size = 32;
  double max_overhead = 0.0;
  double erasure_s1_relay = 0.0;
  double erasure_relay_sink = 0.0;
};

/// Applies one `key = value` entry; throws UsageError naming the field.
inline void apply_option(SweepOptions& o, const std::string& key, const std::string& value,
                         bool& scenarios_from_file) {
  using detail::parse_count;
  using detail::parse_real;
  if (key == "scenario") {
    if (!scenarios_from_file) o.scenarios.clear();
    scenarios_from_file = true;
    o.scenarios.push_back(detail::trim(value));
  } else if (key == "k1") {
    o.k1 = parse_count(key, value);
  } else if (key == "k2") {
    o.k2 = parse_count(key, value);
  } else if (key == "c") {
    o.c = parse_real(key, value);
  } else if (key == "delta") {
    o.delta = parse_real(key, value);
  } else if (key == "overhead-min") {
    o.overhead_min = parse_real(key, value);
  } else if (key == "overhead-max") {
    o.overhead_max = parse_real(key, value);
  } else if (key == "overhead-step") {
    o.overhead_step = parse_real(key, value);
  } else if (key == "trials") {
    o.trials = parse_count(key, value);
  } else if (key == "seed") {
    o.seed = parse_count(key, value);
  } else if (key == "ack-mode") {
    o.ack_mode = detail::trim(value);
  } else if (key == "restricted-degrees") {
    o.restricted_degrees = detail::trim(value);
  } else if (key == "out") {
    o.out = detail::trim(value);
  } else if (key == "threads") {
    o.threads = parse_count(key, value);
  } else if (key == "payload-size") {
    o.payload_size = parse_count(key, value);
  } else if (key == "max-overhead") {
    o.max_overhead = parse_real(key, value);
  } else if (key == "erasure-s1-relay") {
    o.erasure_s1_relay = parse_real(key, value);
  } else if (key == "erasure-relay-sink") {
    o.erasure_relay_sink = parse_real(key, value);
  } else {
    throw UsageError("unknown key '" + key + "'");
  }
}

/**
 * Flat `key = value` file; keys are the sweep flag names without dashes.
 * '#' starts a comment. `scenario` may repeat.
 */
inline void load_config(std::istream& is, const std::string& name, SweepOptions& o) {
  std::string line;
  std::size_t lineno = 0;
  bool scenarios_from_file = false;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(name + ":" + std::to_string(lineno) + ": expected 'key = value', got '" + line + "'");
    std::string key = detail::trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    try {
      apply_option(o, key, line.substr(eq + 1), scenarios_from_file);
    } catch (const UsageError& e) {
      throw UsageError(name + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

inline void load_config_file(const std::string& path, SweepOptions& o) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read config file '" + path + "'");
  load_config(f, path, o);
}

/// Resolves options into one validated config per requested scenario.
inline std::vector<ScenarioConfig> resolve_sweep(const SweepOptions& o) {
  if (o.trials < 1) throw UsageError("field 'trials': must be >= 1");
  if (o.scenarios.empty()) throw UsageError("field 'scenario': at least one scenario is required");
  if (!(o.overhead_step > 0.0)) throw UsageError("field 'overhead-step': must be > 0");
  if (o.overhead_min < 1.0) throw UsageError("field 'overhead-min': must be >= 1");
  if (o.overhead_max < o.overhead_min) throw UsageError("field 'overhead-max': must be >= overhead-min");

  ScenarioConfig base;
  base.k1 = o.k1;
  base.k2 = o.k2;
  base.c = o.c;
  base.delta = o.delta;
  base.overhead_grid = make_grid(o.overhead_min, o.overhead_max, o.overhead_step);
  base.trials = o.trials;
  base.seed = o.seed;
  base.ack_mode = parse_ack_mode(o.ack_mode);
  base.payload_size = o.payload_size;
  base.max_overhead = o.max_overhead;
  base.erasure_s1_relay = o.erasure_s1_relay;
  base.erasure_relay_sink = o.erasure_relay_sink;
  base.threads = o.threads;

  std::vector<ScenarioConfig> out;
  for (const auto& s : o.scenarios) {
    const ScenarioChoice choice = parse_scenario(s);
    ScenarioConfig cfg = base;
    cfg.scenario = choice.scenario;
    if (choice.scenario == Scenario::NonUniform)
      cfg.restricted_degrees = parse_degree_set(choice.restricted.value_or(o.restricted_degrees), cfg.k());
    try {
      cfg.validate();
    } catch (const ParameterError& e) {
      throw UsageError(e.what());
    }
    out.push_back(std::move(cfg));
  }
  return out;
}

/// Runs the sweeps and writes results.csv and summary.json into `dir`, both
/// only after every scenario finished.
inline void run_sweeps_to(const std::vector<ScenarioConfig>& configs, const std::filesystem::path& dir,
                          std::ostream& log) {
  std::vector<SweepResult> results;
  for (const auto& cfg : configs) {
    results.push_back(run_sweep(cfg));
    const auto& r = results.back();
    const auto o = overhead_at_success(r, 0.9);
    log << scenario_label(cfg) << ": " << r.trials << " trials in " << format_number(r.duration_seconds)
        << " s, overhead at 90% = " << (o ? format_number(*o) : std::string("not reached")) << '\n';
  }

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

  const auto csv_path = dir / "results.csv";
  const auto json_path = dir / "summary.json";
  const auto csv_tmp = dir / "results.csv.tmp";
  const auto json_tmp = dir / "summary.json.tmp";
  {
    auto f = detail::open_for_write(csv_tmp);
    write_results_csv(f, results);
    detail::finish(f, csv_tmp);
  }
  {
    auto f = detail::open_for_write(json_tmp);
    f << summary_json(results, "results.csv").dump(2) << '\n';
    detail::finish(f, json_tmp);
  }
  std::filesystem::rename(csv_tmp, csv_path, ec);
  if (!ec) std::filesystem::rename(json_tmp, json_path, ec);
  if (ec) throw IoError("cannot move results into place: " + ec.message());
}

// ---- entry point -----------------------------------------------------------

inline std::optional<std::string> find_config_arg(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

template <class Fn>
void write_output(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(out);
    return;
  }
  auto f = detail::open_for_write(path);
  fn(f);
  detail::finish(f, path);
}

inline int run(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"LT codes with network coding at a relay: distributions, matrices and Monte Carlo sweeps", "ltnc"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  std::size_t dist_k = 0;
  double dist_c = 0.05;
  double dist_delta = 0.5;
  std::string dist_out;
  auto* dist = app.add_subcommand("dist", "Write the robust soliton distribution as CSV (d,prob)");
  dist->add_option("--k", dist_k, "Number of source packets")->required();
  dist->add_option("--c", dist_c, "RSD constant c");
  dist->add_option("--delta", dist_delta, "RSD failure bound delta");
  dist->add_option("--out", dist_out, "Output CSV path (default: stdout)");

  std::size_t mat_k1 = 0;
  std::size_t mat_k2 = 0;
  double mat_c = 0.05;
  double mat_delta = 0.5;
  std::string mat_which = "P";
  std::string mat_out;
  std::string mat_feasibility;
  auto* matrix = app.add_subcommand("matrix", "Write the ideal (P) or feasible (Po) joint degree matrix as CSV (i,j,p)");
  matrix->add_option("--k1", mat_k1, "S1 block size")->required();
  matrix->add_option("--k2", mat_k2, "S2 block size")->required();
  matrix->add_option("--c", mat_c, "RSD constant c");
  matrix->add_option("--delta", mat_delta, "RSD failure bound delta");
  matrix->add_option("--which", mat_which, "P or Po");
  matrix->add_option("--out", mat_out, "Output CSV path (default: stdout)");
  matrix->add_option("--feasibility-out", mat_feasibility,
                     "Po feasibility report path (default: <out stem>_feasibility.csv)");

  SweepOptions opts;
  const auto config_path = find_config_arg(args);
  std::string config_flag;
  auto* sweep = app.add_subcommand("sweep", "Run Monte Carlo sweeps over an overhead grid");
  sweep->add_option("--config", config_flag, "Flat key = value file; flags override its values");
  sweep->add_option("--scenario", opts.scenarios,
                    "standard | multiplex | merged | nonuniform[:degrees] (repeatable)");
  sweep->add_option("--k1", opts.k1, "S1 block size");
  sweep->add_option("--k2", opts.k2, "S2 block size");
  sweep->add_option("--c", opts.c, "RSD constant c");
  sweep->add_option("--delta", opts.delta, "RSD failure bound delta");
  sweep->add_option("--overhead-min", opts.overhead_min, "First grid point");
  sweep->add_option("--overhead-max", opts.overhead_max, "Last grid point");
  sweep->add_option("--overhead-step", opts.overhead_step, "Grid spacing");
  sweep->add_option("--trials", opts.trials, "Trials per scenario");
  sweep->add_option("--seed", opts.seed, "Master seed");
  sweep->add_option("--ack-mode", opts.ack_mode, "none | stop-on-s1");
  sweep->add_option("--restricted-degrees", opts.restricted_degrees,
                    "Degrees sampled from a single source, e.g. 2,3,4 or 2..N (N = floor(K/2))");
  sweep->add_option("--out", opts.out, "Output directory for results.csv and summary.json");
  sweep->add_option("--threads", opts.threads, "Worker threads (0 = all cores)");
  sweep->add_option("--payload-size", opts.payload_size, "Bytes per message");
  sweep->add_option("--max-overhead", opts.max_overhead, "Stop trials at this overhead (default: grid max + 0.5)");
  sweep->add_option("--erasure-s1-relay", opts.erasure_s1_relay, "Erasure probability S1 -> relay (extension)");
  sweep->add_option("--erasure-relay-sink", opts.erasure_relay_sink, "Erasure probability relay -> sink (extension)");

  try {
    if (config_path) load_config_file(*config_path, opts);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const UsageError& e) {
    err << "ltnc: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*dist) {
      const auto mu = build_rsd(dist_k, dist_c, dist_delta);
      write_output(dist_out, out, [&](std::ostream& os) { write_distribution_csv(os, mu); });
    } else if (*matrix) {
      const std::string which = detail::lower(mat_which);
      if (which != "p" && which != "po") throw UsageError("field 'which': expected P or Po, got '" + mat_which + "'");
      if (which == "p") {
        const auto p = build_ideal_p(mat_k1, mat_k2, mat_c, mat_delta);
        write_output(mat_out, out, [&](std::ostream& os) { write_matrix_csv(os, p); });
      } else {
        const auto plan = MergePlan::build(mat_k1, mat_k2, mat_c, mat_delta);
        write_output(mat_out, out, [&](std::ostream& os) { write_matrix_csv(os, plan.po()); });
        std::string side = mat_feasibility;
        if (side.empty() && !mat_out.empty() && mat_out != "-") {
          std::filesystem::path p(mat_out);
          side = (p.parent_path() / (p.stem().string() + "_feasibility.csv")).string();
        }
        if (!side.empty()) write_output(side, out, [&](std::ostream& os) { write_feasibility_csv(os, plan); });
      }
    } else if (*sweep) {
      run_sweeps_to(resolve_sweep(opts), opts.out, err);
    }
  } catch (const UsageError& e) {
    err << "ltnc: " << e.what() << '\n';
    return 2;
  } catch (const ParameterError& e) {
    err << "ltnc: invalid parameter: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "ltnc: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(std::move(args), out, err);
}

}  // namespace ltnc::cli
