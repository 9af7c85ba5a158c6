// Copyright 2026 The simon-qubo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end. run_cli() is the whole program; tools/ only wraps
// it in main() so tests can drive every subcommand in-process.
//
// Exit codes: 0 success, 1 no unique ground pair, 2 config error,
// 3 compute error, 4 I/O error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "simon_qubo/analysis.hpp"
#include "simon_qubo/errors.hpp"
#include "simon_qubo/exact_solvers.hpp"
#include "simon_qubo/io.hpp"
#include "simon_qubo/oracle_qubo.hpp"
#include "simon_qubo/sampler.hpp"

namespace simon_qubo::cli {

enum ExitCode : int {
  kOk = 0,
  kNoUniquePair = 1,
  kConfigError = 2,
  kComputeError = 3,
  kIoError = 4,
};

// "5,10,20" or an inclusive range "start:stop[:step]".
inline std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw ConfigError("");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("not an integer: '" + s + "' in '" + text + "'");
    }
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3) throw ConfigError("range must be start:stop[:step]");
    const int start = to_int(parts[0]), stop = to_int(parts[1]);
    const int step = parts.size() == 3 ? to_int(parts[2]) : 1;
    if (step <= 0 || stop < start) throw ConfigError("range '" + text + "' is empty or has a nonpositive step");
    for (int v = start; v <= stop; v += step) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) {
    if (!p.empty()) out.push_back(to_int(p));
  }
  return out;
}

inline std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) {
    if (!p.empty()) out.push_back(p);
  }
  return out;
}

namespace detail {

struct Globals {
  std::string out;
  std::string format;
  std::uint64_t seed = 0;
  bool quiet = false;
};

struct ModelArgs {
  int n = 0;
  std::string scheme = "balanced";
  double magnitude = 2.0;
  std::string penalties;  // explicit comma-separated list, overrides scheme
  std::string qubo_path;
};

struct ScheduleArgs {
  double beta_start = 0.1;
  double beta_end = 5.0;
  int sweeps = 200;
  std::string interpolation = "geometric";

  AnnealSchedule schedule() const {
    AnnealSchedule s{beta_start, beta_end, sweeps, parse_interpolation(interpolation)};
    s.validate();
    return s;
  }

  std::string describe() const {
    return "beta_start=" + format_number(beta_start) + " beta_end=" + format_number(beta_end) +
           " sweeps=" + std::to_string(sweeps) + " interpolation=" + interpolation;
  }
};

inline void add_schedule_flags(CLI::App* sub, ScheduleArgs& s) {
  sub->add_option("--sweeps", s.sweeps, "Metropolis sweeps per shot")->capture_default_str();
  sub->add_option("--beta-start", s.beta_start, "initial inverse temperature")->capture_default_str();
  sub->add_option("--beta-end", s.beta_end, "final inverse temperature")->capture_default_str();
  sub->add_option("--interpolation", s.interpolation, "geometric or linear")->capture_default_str();
}

inline PenaltyConfig make_penalties(const OracleSpec& spec, const ModelArgs& m, std::uint64_t seed) {
  if (!m.penalties.empty()) {
    std::vector<double> values;
    for (const auto& p : split_csv(m.penalties)) {
      try {
        values.push_back(std::stod(p));
      } catch (const std::exception&) {
        throw ConfigError("not a number in --penalties: '" + p + "'");
      }
    }
    return PenaltyConfig::explicit_values(std::move(values));
  }
  return PenaltyConfig::make(parse_scheme(m.scheme), spec, m.magnitude, seed);
}

inline std::string describe_model(const ModelArgs& m) {
  if (!m.qubo_path.empty()) return "qubo=" + m.qubo_path;
  std::string s = "n=" + std::to_string(m.n);
  if (!m.penalties.empty()) return s + " penalties=" + m.penalties;
  return s + " scheme=" + m.scheme + " magnitude=" + format_number(m.magnitude);
}

inline QuboModel resolve_model(const ModelArgs& m, std::uint64_t seed) {
  if (!m.qubo_path.empty()) return load_qubo(m.qubo_path);
  if (m.n == 0) throw ConfigError("give either a QUBO file or --n");
  const OracleSpec spec(m.n);
  return build_qubo(spec, make_penalties(spec, m, seed));
}

inline void emit(const Globals& g, const std::string& text, std::ostream& out) {
  if (g.out.empty() || g.out == "-") {
    out << text;
  } else {
    write_file(g.out, text);
  }
}

inline std::string choose_format(const Globals& g, const std::string& fallback) {
  const std::string f = g.format.empty() ? fallback : g.format;
  if (f != "json" && f != "csv") throw ConfigError("--format must be json or csv");
  return f;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Penalized XOR-chain QUBO laboratory for Simon's period-finding problem", "simon_qubo"};
  app.require_subcommand(1);
  app.fallthrough();

  detail::Globals g;
  app.add_option("--out", g.out, "output path (default: standard output)");
  app.add_option("--format", g.format, "json or csv");
  app.add_option("--seed", g.seed, "master seed for all randomness")->capture_default_str();
  app.add_flag("--quiet", g.quiet, "suppress informational messages");

  detail::ModelArgs model_args;
  detail::ScheduleArgs sched_args;

  auto* build = app.add_subcommand("build", "write the penalized QUBO as JSON");
  build->add_option("--n", model_args.n, "oracle input size")->required();
  build->add_option("--scheme", model_args.scheme, "zero, uniform, balanced or random")->capture_default_str();
  build->add_option("--magnitude", model_args.magnitude, "penalty magnitude")->capture_default_str();
  build->add_option("--penalties", model_args.penalties, "explicit comma-separated penalties");

  int cap = kDefaultEnumerationCap;
  auto* spectrum = app.add_subcommand("spectrum", "enumerate the full energy spectrum of a QUBO file");
  spectrum->add_option("qubo", model_args.qubo_path, "QUBO JSON file")->required();
  spectrum->add_option("--cap", cap, "maximum number of variables to enumerate")->capture_default_str();

  std::size_t max_states = kDefaultMaxGroundStates;
  auto* solve = app.add_subcommand("solve", "exact ground states by chain dynamic programming");
  solve->add_option("qubo", model_args.qubo_path, "QUBO JSON file")->required();
  solve->add_option("--max-states", max_states, "largest ground set to list")->capture_default_str();

  std::uint64_t shots = 4000;
  double bias = 0.0;
  unsigned threads = 1;
  auto* samp = app.add_subcommand("sample", "anneal a QUBO shot by shot");
  samp->add_option("qubo", model_args.qubo_path, "QUBO JSON file (or use --n)");
  samp->add_option("--n", model_args.n, "oracle input size");
  samp->add_option("--scheme", model_args.scheme, "penalty scheme")->capture_default_str();
  samp->add_option("--magnitude", model_args.magnitude, "penalty magnitude")->capture_default_str();
  samp->add_option("--penalties", model_args.penalties, "explicit comma-separated penalties");
  samp->add_option("--shots", shots, "number of shots")->capture_default_str();
  samp->add_option("--bias", bias, "per-bit field favoring 0s (0 = off)")->capture_default_str();
  samp->add_option("--threads", threads, "worker threads (0 = all cores)")->capture_default_str();
  detail::add_schedule_flags(samp, sched_args);

  std::string n_list = "5:50:5";
  std::string schemes = "balanced,random,uniform";
  int retries = 1;
  bool record_time = false;
  std::string fit_out;
  auto* exper = app.add_subcommand("experiment", "penalty-scheme success rates over problem sizes");
  exper->add_option("--n", n_list, "sizes: list a,b,c or range start:stop[:step]")->capture_default_str();
  exper->add_option("--schemes", schemes, "comma-separated subset of balanced,random,uniform")->capture_default_str();
  exper->add_option("--shots", shots, "shots per configuration")->capture_default_str();
  exper->add_option("--magnitude", model_args.magnitude, "penalty magnitude")->capture_default_str();
  exper->add_option("--retries", retries, "attempts per configuration until both states are seen")
      ->capture_default_str();
  exper->add_option("--bias", bias, "per-bit field favoring 0s (0 = off)")->capture_default_str();
  exper->add_option("--threads", threads, "worker threads (0 = all cores)")->capture_default_str();
  exper->add_flag("--record-time", record_time, "fill wall_time_s (output is then not byte-reproducible)");
  exper->add_option("--fit-out", fit_out, "write exponential/Gaussian fits of balanced rows to this JSON file");
  detail::add_schedule_flags(exper, sched_args);

  int repetitions = 3;
  std::string solvers = "dp,enum,sampler";
  std::uint64_t batch_shots = 100;
  auto* bench = app.add_subcommand("bench", "median solver wall times");
  bench->add_option("--n", n_list, "sizes: list or range")->capture_default_str();
  bench->add_option("--repetitions", repetitions, "runs per (n, solver)")->capture_default_str();
  bench->add_option("--solvers", solvers, "comma-separated subset of dp,enum,sampler")->capture_default_str();
  bench->add_option("--cap", cap, "enumeration variable cap")->capture_default_str();
  bench->add_option("--batch-shots", batch_shots, "sampler shots per batch")->capture_default_str();
  detail::add_schedule_flags(bench, sched_args);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kOk : kConfigError;
  }

  auto info = [&](const std::string& line) {
    if (!g.quiet) err << line << '\n';
  };
  const std::string seed_desc = " seed=" + std::to_string(g.seed);

  try {
    if (*build) {
      const OracleSpec spec(model_args.n);
      const auto penalties = detail::make_penalties(spec, model_args, g.seed);
      const auto model = build_qubo(spec, penalties);
      if (!g.format.empty() && g.format != "json") throw ConfigError("build only writes json");
      const json meta{{"command", "build " + detail::describe_model(model_args) + seed_desc}};
      detail::emit(g, qubo_to_json(model, meta).dump(2) + "\n", out);
      info("variables: " + std::to_string(model.num_vars()));
      for (const auto& w : validate_penalties(spec, penalties)) err << "warning: " << w.message << '\n';
      return kOk;
    }

    if (*spectrum) {
      const auto model = load_qubo(model_args.qubo_path);
      const auto spec = oracle_spec_of(model);
      const auto format = detail::choose_format(g, "json");
      const auto report = enumerate_spectrum(model, spec, cap);
      const std::string desc = "spectrum qubo=" + model_args.qubo_path + " cap=" + std::to_string(cap);
      detail::emit(g, format == "json" ? spectrum_to_json(report, json{{"command", desc}}).dump(2) + "\n"
                                       : spectrum_to_csv(report, desc),
                   out);
      info("levels: " + std::to_string(report.levels().size()) + ", ground degeneracy: " +
           std::to_string(report.ground().states.size()));
      return kOk;
    }

    if (*solve) {
      const auto model = load_qubo(model_args.qubo_path);
      const auto spec = oracle_spec_of(model);
      const auto summary = chain_dp_summary(model, spec);
      out << "ground_energy " << format_number(summary.ground_energy) << '\n';
      out << "degeneracy " << format_number(summary.degeneracy) << '\n';
      if (summary.degeneracy != 2.0) {
        out << "no unique ground pair\n";
        if (summary.degeneracy <= static_cast<double>(max_states)) {
          for (const auto& s : solve_chain_dp(model, spec, max_states).ground_states) {
            out << "state x=" << to_bitstring(s.inputs(spec)) << " o=" << to_bitstring(s.outputs(spec))
                << " a=" << to_bitstring(s.ancillas(spec)) << '\n';
          }
        }
        return kNoUniquePair;
      }
      const auto sol = solve_chain_dp(model, spec, max_states);
      for (const auto& s : sol.ground_states) {
        out << "state x=" << to_bitstring(s.inputs(spec)) << " o=" << to_bitstring(s.outputs(spec))
            << " a=" << to_bitstring(s.ancillas(spec)) << '\n';
      }
      const auto period = recover_period(sol.ground_states[0].inputs(spec), sol.ground_states[1].inputs(spec));
      out << "period " << to_bitstring(period) << '\n';
      return is_all_ones(period) ? kOk : kNoUniquePair;
    }

    if (*samp) {
      const auto schedule = sched_args.schedule();
      const auto model = detail::resolve_model(model_args, g.seed);
      if (shots < 1) throw ConfigError("--shots must be >= 1");
      if (bias < 0.0 || !std::isfinite(bias)) throw ConfigError("--bias must be a nonnegative number");
      SamplerOptions so;
      so.threads = threads;
      if (bias != 0.0) so.bias = uniform_bias(model, bias);
      const auto set = sample(model, schedule, shots, g.seed, so);
      const auto format = detail::choose_format(g, "csv");
      const std::string desc = "sample " + detail::describe_model(model_args) + " shots=" + std::to_string(shots) +
                               " " + sched_args.describe() + " bias=" + format_number(bias) + seed_desc;
      detail::emit(g, format == "json" ? sampleset_to_json(set, json{{"command", desc}}).dump(2) + "\n"
                                       : sampleset_to_csv(set, desc),
                   out);
      if (model.oracle_n() && model.penalties().size() == static_cast<std::size_t>(*model.oracle_n() - 1)) {
        const OracleSpec spec(*model.oracle_n());
        const auto pair = predict_ground_pair(
            spec, PenaltyConfig::explicit_values({model.penalties().begin(), model.penalties().end()}));
        const auto stats = success_stats(set, pair);
        info("p_z " + format_number(stats.p_z) + " p_zp " + format_number(stats.p_z_prime) + " both_seen " +
             (stats.both_seen ? "1" : "0"));
      }
      return kOk;
    }

    if (*exper) {
      const auto schedule = sched_args.schedule();
      const auto ns = parse_int_list(n_list);
      std::vector<PenaltyScheme> sch;
      for (const auto& s : split_csv(schemes)) sch.push_back(parse_scheme(s));
      if (retries < 1) throw ConfigError("--retries must be >= 1");
      if (bias < 0.0 || !std::isfinite(bias)) throw ConfigError("--bias must be a nonnegative number");
      ExperimentOptions opts;
      opts.magnitude = model_args.magnitude;
      opts.retries = retries;
      opts.threads = threads;
      if (bias != 0.0) opts.bias = {bias};
      const auto rows = run_penalty_experiment(ns, sch, shots, schedule, g.seed, opts);
      if (!g.format.empty() && g.format != "csv") throw ConfigError("experiment only writes csv");
      const std::string desc = "experiment n=" + n_list + " schemes=" + schemes + " shots=" + std::to_string(shots) +
                               " magnitude=" + format_number(opts.magnitude) + " retries=" + std::to_string(retries) +
                               " " + sched_args.describe() + " bias=" + format_number(bias) + seed_desc;
      detail::emit(g, experiment_rows_to_csv(rows, record_time, desc), out);
      if (!fit_out.empty()) {
        std::vector<ExperimentRow> balanced;
        for (const auto& r : rows) {
          if (r.scheme == PenaltyScheme::kBalanced) balanced.push_back(r);
        }
        const auto [ef, gf] = fit_success_curve(balanced);
        const json fits{{"meta", {{"command", desc}}}, {"fits", {fit_to_json(ef), fit_to_json(gf)}}};
        write_file(fit_out, fits.dump(2) + "\n");
      }
      info("rows: " + std::to_string(rows.size()));
      return kOk;
    }

    if (*bench) {
      const auto ns = parse_int_list(n_list);
      if (repetitions < 0) throw ConfigError("--repetitions must be >= 0");
      BenchOptions opts;
      opts.solvers.clear();
      for (const auto& s : split_csv(solvers)) opts.solvers.push_back(parse_bench_solver(s));
      opts.enumeration_cap = cap;
      opts.schedule = sched_args.schedule();
      opts.batch_shots = batch_shots;
      opts.seed = g.seed;
      for (int n : ns) (void)OracleSpec(n);
      const auto rows = benchmark_solvers(ns, repetitions, opts);
      const std::string desc = "bench n=" + n_list + " repetitions=" + std::to_string(repetitions) +
                               " solvers=" + solvers + " cap=" + std::to_string(cap) + " " + sched_args.describe() +
                               seed_desc;
      detail::emit(g, bench_rows_to_csv(rows, desc), out);
      return kOk;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ComputeError& e) {
    err << "error: " << e.what() << '\n';
    return kComputeError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kConfigError;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace simon_qubo::cli
