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

// Shot-count arithmetic, penalty-scheme and problem-size experiments, curve
// fits, the classical collision baseline, and solver timing.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "simon_qubo/errors.hpp"
#include "simon_qubo/exact_solvers.hpp"
#include "simon_qubo/oracle_qubo.hpp"
#include "simon_qubo/rng.hpp"
#include "simon_qubo/sampler.hpp"

namespace simon_qubo {

namespace detail {

inline void check_pair_probabilities(double p, double q) {
  if (!(p > 0.0 && p <= 1.0) || !(q > 0.0 && q <= 1.0)) {
    throw ConfigError("target-state probabilities must lie in (0, 1]");
  }
  if (p + q > 1.0 + 1e-12) throw ConfigError("target-state probabilities sum to more than 1");
}

}  // namespace detail

/// Probability that k shots contain both target states at least once:
///   1 - (1-p)^k - (1-q)^k + (1-p-q)^k.
inline double prob_both(double p_z, double p_z_prime, std::uint64_t k) {
  detail::check_pair_probabilities(p_z, p_z_prime);
  if (k < 1) throw ConfigError("shot count must be >= 1");
  if (k == 1) return 0.0;
  // Evaluate in a fixed argument order so the result is exactly symmetric.
  const double lo = std::min(p_z, p_z_prime), hi = std::max(p_z, p_z_prime);
  const double kd = static_cast<double>(k);
  const double neither = std::max(0.0, 1.0 - (lo + hi));
  const double v = 1.0 - (std::pow(1.0 - lo, kd) + std::pow(1.0 - hi, kd)) + std::pow(neither, kd);
  return std::clamp(v, 0.0, 1.0);
}

/// Expected number of shots until both target states have appeared:
///   1/p + 1/q - 1/(p+q).
/// A zero probability means one state is never reached; that is reported as a
/// ComputeError rather than returning infinity.
inline double expected_shots_both(double p_z, double p_z_prime) {
  if (p_z == 0.0 || p_z_prime == 0.0) {
    throw ComputeError("a target state has zero probability; expected waiting time is infinite");
  }
  detail::check_pair_probabilities(p_z, p_z_prime);
  return 1.0 / p_z + 1.0 / p_z_prime - 1.0 / (p_z + p_z_prime);
}

struct ShotEstimate {
  double p_z;
  double p_z_prime;
  double expected_shots_both;

  static ShotEstimate from(double p_z, double p_z_prime) {
    return {p_z, p_z_prime, simon_qubo::expected_shots_both(p_z, p_z_prime)};
  }

  double prob_both_at(std::uint64_t k) const { return prob_both(p_z, p_z_prime, k); }

  // Smallest k with prob_both_at(k) >= target.
  std::uint64_t shots_for(double target) const {
    if (!(target > 0.0 && target < 1.0)) throw ConfigError("target probability must lie in (0, 1)");
    std::uint64_t lo = 1, hi = 2;
    while (prob_both_at(hi) < target) {
      lo = hi;
      hi *= 2;
      if (hi > (std::uint64_t{1} << 62)) throw ComputeError("target probability not reachable");
    }
    while (lo < hi) {
      const auto mid = lo + (hi - lo) / 2;
      if (prob_both_at(mid) >= target) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lo;
  }
};

enum class FitModel { kGaussian, kExponential };

inline std::string_view to_string(FitModel m) { return m == FitModel::kGaussian ? "gaussian" : "exponential"; }

/// success ~ amplitude * exp(rate * t), with t = n (exponential) or
/// t = n^2 (Gaussian centered at n = 0).
struct FitResult {
  FitModel model;
  double amplitude;
  double rate;
  double r_squared;  // in log coordinates
  std::size_t points;

  double predict(double n) const {
    const double t = model == FitModel::kGaussian ? n * n : n;
    return amplitude * std::exp(rate * t);
  }

  // Gaussian width sigma with rate = -1 / (2 sigma^2); nullopt unless rate < 0.
  std::optional<double> width() const {
    if (model != FitModel::kGaussian || !(rate < 0.0)) return std::nullopt;
    return std::sqrt(-1.0 / (2.0 * rate));
  }
};

namespace detail {

struct LineFit {
  double intercept;
  double slope;
  double r_squared;
};

inline LineFit least_squares_line(std::span<const double> t, std::span<const double> y) {
  const auto m = static_cast<double>(t.size());
  const double tm = std::accumulate(t.begin(), t.end(), 0.0) / m;
  const double ym = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - tm) * (t[i] - tm);
    sty += (t[i] - tm) * (y[i] - ym);
    syy += (y[i] - ym) * (y[i] - ym);
  }
  if (stt == 0.0) throw ComputeError("fit needs at least two distinct abscissae");
  const double slope = sty / stt;
  const double intercept = ym - slope * tm;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = y[i] - (intercept + slope * t[i]);
    ss_res += r * r;
  }
  const double r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return {intercept, slope, std::clamp(r2, 0.0, 1.0)};
}

inline FitResult fit_log_linear(FitModel model, std::span<const double> n, std::span<const double> success) {
  if (n.size() != success.size()) throw ConfigError("fit inputs differ in length");
  std::vector<double> t, y;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(success[i] > 0.0)) continue;  // zero-success points are excluded, not floored
    t.push_back(model == FitModel::kGaussian ? n[i] * n[i] : n[i]);
    y.push_back(std::log(success[i]));
  }
  if (t.size() < 3) {
    throw ComputeError("fit needs at least 3 points with nonzero success, got " + std::to_string(t.size()));
  }
  const auto line = least_squares_line(t, y);
  return {model, std::exp(line.intercept), line.slope, line.r_squared, t.size()};
}

}  // namespace detail

inline FitResult fit_exponential(std::span<const double> n, std::span<const double> success) {
  return detail::fit_log_linear(FitModel::kExponential, n, success);
}

inline FitResult fit_gaussian(std::span<const double> n, std::span<const double> success) {
  return detail::fit_log_linear(FitModel::kGaussian, n, success);
}

/// Spearman rank correlation with average ranks for ties.
inline double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) throw ConfigError("spearman needs two equal-length series of >= 2 values");
  auto ranks = [](std::span<const double> v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto ra = ranks(a), rb = ranks(b);
  const auto m = static_cast<double>(a.size());
  const double mean = (m + 1.0) / 2.0;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    cov += (ra[i] - mean) * (rb[i] - mean);
    va += (ra[i] - mean) * (ra[i] - mean);
    vb += (rb[i] - mean) * (rb[i] - mean);
  }
  if (va == 0.0 || vb == 0.0) return 0.0;
  return cov / std::sqrt(va * vb);
}

struct ExperimentRow {
  int n = 0;
  PenaltyScheme scheme = PenaltyScheme::kBalanced;
  double p_z = 0.0;
  double p_z_prime = 0.0;
  bool both_seen = false;
  std::uint64_t shots = 0;
  double wall_time_s = 0.0;
  int attempts = 1;

  double ground_fraction() const { return p_z + p_z_prime; }
};

struct ExperimentOptions {
  double magnitude = 2.0;
  // Attempts per (n, scheme) until both states are seen. The random scheme
  // draws fresh signs on every attempt.
  int retries = 1;
  unsigned threads = 1;
  std::vector<double> bias;  // per-variable strength; empty = none, size 1 = same for all
};

namespace detail {

inline ExperimentRow run_row(int n, PenaltyScheme scheme, std::uint64_t shots, const AnnealSchedule& schedule,
                             std::uint64_t row_seed, const ExperimentOptions& opts) {
  const OracleSpec spec(n);
  ExperimentRow row;
  row.n = n;
  row.scheme = scheme;
  row.shots = shots;
  const auto start = std::chrono::steady_clock::now();
  for (int attempt = 0; attempt < std::max(1, opts.retries); ++attempt) {
    const auto penalties =
        PenaltyConfig::make(scheme, spec, opts.magnitude, derive_seed(row_seed, static_cast<std::uint64_t>(attempt), 1));
    const auto model = build_qubo(spec, penalties);
    SamplerOptions so;
    so.threads = opts.threads;
    if (opts.bias.size() == 1) {
      so.bias = uniform_bias(model, opts.bias.front());
    } else {
      so.bias = opts.bias;
    }
    const auto samples = sample(model, schedule, shots, derive_seed(row_seed, static_cast<std::uint64_t>(attempt), 0), so);
    const auto stats = success_stats(samples, predict_ground_pair(spec, penalties));
    row.p_z = stats.p_z;
    row.p_z_prime = stats.p_z_prime;
    row.both_seen = stats.both_seen;
    row.attempts = attempt + 1;
    if (stats.both_seen) break;
  }
  row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace detail

/// One row per (n, scheme), sorted by n then scheme. Each row's seed depends
/// only on (seed, n, scheme), so rows are reproducible individually.
inline std::vector<ExperimentRow> run_penalty_experiment(std::vector<int> n_list, std::vector<PenaltyScheme> schemes,
                                                         std::uint64_t shots, const AnnealSchedule& schedule,
                                                         std::uint64_t seed, const ExperimentOptions& opts = {}) {
  schedule.validate();
  if (shots < 1) throw ConfigError("shots must be >= 1");
  for (auto s : schemes) {
    if (s != PenaltyScheme::kBalanced && s != PenaltyScheme::kRandom && s != PenaltyScheme::kUniform) {
      throw ConfigError("experiment schemes must be balanced, random or uniform");
    }
  }
  for (int n : n_list) (void)OracleSpec(n);
  std::sort(n_list.begin(), n_list.end());
  n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
  std::sort(schemes.begin(), schemes.end());
  schemes.erase(std::unique(schemes.begin(), schemes.end()), schemes.end());

  std::vector<ExperimentRow> rows;
  for (int n : n_list) {
    for (auto scheme : schemes) {
      const auto row_seed = derive_seed(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(scheme));
      rows.push_back(detail::run_row(n, scheme, shots, schedule, row_seed, opts));
    }
  }
  return rows;
}

struct SweepResult {
  std::vector<ExperimentRow> rows;
  FitResult exponential;
  FitResult gaussian;
  std::size_t excluded_zero_rows = 0;
};

inline std::pair<FitResult, FitResult> fit_success_curve(const std::vector<ExperimentRow>& rows) {
  std::vector<double> ns, ys;
  for (const auto& r : rows) {
    ns.push_back(r.n);
    ys.push_back(r.ground_fraction());
  }
  return {fit_exponential(ns, ys), fit_gaussian(ns, ys)};
}

/// Balanced penalties over n_list, then exponential and Gaussian fits of the
/// ground fraction against n. Rows with zero ground fraction are left out of
/// the fits; if fewer than 3 rows remain a ComputeError is raised.
inline SweepResult run_success_sweep(const std::vector<int>& n_list, std::uint64_t shots,
                                     const AnnealSchedule& schedule, std::uint64_t seed,
                                     const ExperimentOptions& opts = {}) {
  if (n_list.size() < 3) throw ConfigError("success sweep needs at least 3 problem sizes");
  auto rows = run_penalty_experiment(n_list, {PenaltyScheme::kBalanced}, shots, schedule, seed, opts);
  const auto excluded = static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const ExperimentRow& r) { return r.ground_fraction() == 0.0; }));
  auto [exp_fit, gauss_fit] = fit_success_curve(rows);
  return {std::move(rows), exp_fit, gauss_fit, excluded};
}

struct CollisionResult {
  std::uint64_t queries;
  BitVector first;
  BitVector second;
};

/// Queries the oracle on distinct uniformly random inputs until two share an
/// output.
inline CollisionResult classical_collision_trial(int n, std::uint64_t seed) {
  if (n < 2 || n > 30) throw ConfigError("collision trials support 2 <= n <= 30");
  const std::uint64_t domain = std::uint64_t{1} << n;
  const std::uint64_t out_mask = (std::uint64_t{1} << (n - 1)) - 1;
  std::mt19937_64 rng(mix64(seed));
  std::uniform_int_distribution<std::uint64_t> pick(0, domain - 1);
  std::unordered_set<std::uint64_t> queried;
  std::unordered_map<std::uint64_t, std::uint64_t> seen;  // output -> input
  auto to_bits = [n](std::uint64_t x) {
    BitVector b(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) b[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((x >> i) & 1U);
    return b;
  };
  for (std::uint64_t q = 1;; ++q) {
    std::uint64_t x;
    do {
      x = pick(rng);
    } while (!queried.insert(x).second);
    // bit i-1 holds x_i, so o_i = bit(i-1) ^ bit(i)
    const std::uint64_t out = (x ^ (x >> 1)) & out_mask;
    auto [it, fresh] = seen.emplace(out, x);
    if (!fresh) return {q, to_bits(it->second), to_bits(x)};
  }
}

enum class BenchSolver { kChainDp, kBruteForce, kSampler };

inline std::string_view to_string(BenchSolver s) {
  switch (s) {
    case BenchSolver::kChainDp: return "chain_dp";
    case BenchSolver::kBruteForce: return "brute_force";
    case BenchSolver::kSampler: return "sampler";
  }
  return "?";
}

inline BenchSolver parse_bench_solver(std::string_view s) {
  if (s == "chain_dp" || s == "dp") return BenchSolver::kChainDp;
  if (s == "brute_force" || s == "enum") return BenchSolver::kBruteForce;
  if (s == "sampler") return BenchSolver::kSampler;
  throw ConfigError("unknown solver '" + std::string(s) + "'");
}

struct BenchRow {
  int n;
  BenchSolver solver;
  double median_wall_time_s;
};

struct BenchOptions {
  std::vector<BenchSolver> solvers{BenchSolver::kChainDp, BenchSolver::kBruteForce, BenchSolver::kSampler};
  int enumeration_cap = kDefaultEnumerationCap;
  AnnealSchedule schedule{};
  std::uint64_t batch_shots = 100;
  std::uint64_t max_batches = 100;
  std::uint64_t seed = 0;
  double magnitude = 2.0;
};

/// Median wall time per (n, solver) over `repetitions` runs on the balanced
/// model. Brute force is skipped above its cap. The sampler entry times
/// batches of shots until both ground-pair states have been seen.
inline std::vector<BenchRow> benchmark_solvers(const std::vector<int>& n_list, int repetitions,
                                               const BenchOptions& opts = {}) {
  std::vector<BenchRow> rows;
  if (repetitions <= 0) return rows;
  using clock = std::chrono::steady_clock;
  for (int n : n_list) {
    const OracleSpec spec(n);
    const auto penalties = PenaltyConfig::balanced(spec, opts.magnitude);
    const auto model = build_qubo(spec, penalties);
    const auto pair = predict_ground_pair(spec, penalties);
    for (auto solver : opts.solvers) {
      if (solver == BenchSolver::kBruteForce && spec.total_vars() > opts.enumeration_cap) continue;
      std::vector<double> times;
      for (int rep = 0; rep < repetitions; ++rep) {
        const auto start = clock::now();
        switch (solver) {
          case BenchSolver::kChainDp: {
            auto sol = solve_chain_dp(model, spec);
            if (sol.ground_states.size() != 2) throw ComputeError("unexpected ground degeneracy");
            break;
          }
          case BenchSolver::kBruteForce: {
            auto sol = solve_brute_force(model, opts.enumeration_cap, 1);
            if (sol.ground_states.size() != 2) throw ComputeError("unexpected ground degeneracy");
            break;
          }
          case BenchSolver::kSampler: {
            std::uint64_t a = 0, b = 0;
            for (std::uint64_t batch = 0; batch < opts.max_batches && (a == 0 || b == 0); ++batch) {
              const auto s = sample(model, opts.schedule, opts.batch_shots,
                                    derive_seed(opts.seed, static_cast<std::uint64_t>(n),
                                                static_cast<std::uint64_t>(rep) * opts.max_batches + batch));
              a += s.count_of(pair.state_a);
              b += s.count_of(pair.state_b);
            }
            break;
          }
        }
        times.push_back(std::chrono::duration<double>(clock::now() - start).count());
      }
      std::sort(times.begin(), times.end());
      const auto mid = times.size() / 2;
      const double median = times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
      rows.push_back({n, solver, median});
    }
  }
  return rows;
}

}  // namespace simon_qubo
