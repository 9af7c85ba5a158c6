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

// Metropolis simulated annealing over QUBO models, used as a classical
// stand-in for shot-based annealer sampling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "simon_qubo/errors.hpp"
#include "simon_qubo/oracle_qubo.hpp"
#include "simon_qubo/rng.hpp"

namespace simon_qubo {

enum class Interpolation { kGeometric, kLinear };

inline std::string_view to_string(Interpolation i) { return i == Interpolation::kGeometric ? "geometric" : "linear"; }

inline Interpolation parse_interpolation(std::string_view s) {
  if (s == "geometric") return Interpolation::kGeometric;
  if (s == "linear") return Interpolation::kLinear;
  throw ConfigError("unknown beta interpolation '" + std::string(s) + "'");
}

struct AnnealSchedule {
  double beta_start = 0.1;
  double beta_end = 5.0;
  int sweeps = 200;
  Interpolation interpolation = Interpolation::kGeometric;

  void validate() const {
    if (!(std::isfinite(beta_start) && beta_start > 0.0)) throw ConfigError("beta_start must be > 0");
    if (!(std::isfinite(beta_end) && beta_end >= beta_start)) throw ConfigError("beta_end must be >= beta_start");
    if (sweeps < 1) throw ConfigError("sweeps must be >= 1");
  }

  // Inverse temperature for sweep t in [0, sweeps). A single sweep runs at beta_end.
  double beta(int t) const {
    if (sweeps == 1) return beta_end;
    const double f = static_cast<double>(t) / static_cast<double>(sweeps - 1);
    if (interpolation == Interpolation::kLinear) return beta_start + f * (beta_end - beta_start);
    return beta_start * std::pow(beta_end / beta_start, f);
  }
};

struct SampleRecord {
  Assignment assignment;
  double energy;
  std::uint64_t count;
};

/// Aggregated shot outcomes, sorted by (energy, assignment).
struct SampleSet {
  std::uint64_t shots = 0;
  std::vector<SampleRecord> records;
  std::uint64_t master_seed = 0;

  std::uint64_t count_of(const Assignment& a) const {
    for (const auto& r : records) {
      if (r.assignment == a) return r.count;
    }
    return 0;
  }

  friend bool operator==(const SampleSet& a, const SampleSet& b) {
    if (a.shots != b.shots || a.master_seed != b.master_seed || a.records.size() != b.records.size()) return false;
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      const auto &x = a.records[i], &y = b.records[i];
      if (x.assignment != y.assignment || x.energy != y.energy || x.count != y.count) return false;
    }
    return true;
  }
};

struct SamplerOptions {
  unsigned threads = 1;  // 0 = hardware concurrency
  // Extra linear field seen only by the annealing dynamics (not by recorded
  // energies). Positive entries make 1s costlier; empty means none.
  std::vector<double> bias;
};

namespace detail {

// One anneal from a uniformly random start; returns the final state.
inline BitVector anneal_once(const QuboModel& model, const AnnealSchedule& schedule, std::span<const double> bias,
                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t nv = model.num_vars();
  BitVector s(nv);
  for (auto& b : s) b = static_cast<std::uint8_t>(rng() >> 63);

  std::vector<double> field(nv);
  for (std::size_t k = 0; k < nv; ++k) {
    double h = model.linear()[k] + (bias.empty() ? 0.0 : bias[k]);
    for (const auto& nb : model.neighbors(k)) {
      if (s[nb.index]) h += nb.value;
    }
    field[k] = h;
  }
  for (int t = 0; t < schedule.sweeps; ++t) {
    const double beta = schedule.beta(t);
    for (std::size_t k = 0; k < nv; ++k) {
      const double delta = s[k] ? -field[k] : field[k];
      if (delta > 0.0 && unit(rng) >= std::exp(-beta * delta)) continue;
      const double sign = s[k] ? -1.0 : 1.0;
      s[k] ^= 1U;
      for (const auto& nb : model.neighbors(k)) field[nb.index] += sign * nb.value;
    }
  }
  return s;
}

}  // namespace detail

/// Runs `shots` independent anneals. Shot k is seeded from (master_seed, k)
/// alone, so the result does not depend on the thread count.
inline SampleSet sample(const QuboModel& model, const AnnealSchedule& schedule, std::uint64_t shots,
                        std::uint64_t master_seed, const SamplerOptions& options = {}) {
  schedule.validate();
  if (shots < 1) throw ConfigError("shots must be >= 1");
  if (!options.bias.empty() && options.bias.size() != model.num_vars()) {
    throw ConfigError("bias field must have one entry per variable");
  }
  std::vector<BitVector> finals(shots);
  auto run_range = [&](std::uint64_t begin, std::uint64_t step) {
    for (std::uint64_t k = begin; k < shots; k += step) {
      finals[k] = detail::anneal_once(model, schedule, options.bias, counter_hash(master_seed, k));
    }
  };
  unsigned workers = options.threads ? options.threads : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, shots));
  if (workers <= 1) {
    run_range(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_range, w, workers);
  }

  std::map<BitVector, std::uint64_t> counts;
  for (auto& f : finals) ++counts[std::move(f)];
  SampleSet out;
  out.shots = shots;
  out.master_seed = master_seed;
  out.records.reserve(counts.size());
  for (auto& [bits, count] : counts) {
    Assignment a(bits);
    const double e = energy(model, a);
    out.records.push_back({std::move(a), e, count});
  }
  std::sort(out.records.begin(), out.records.end(), [](const SampleRecord& x, const SampleRecord& y) {
    return x.energy != y.energy ? x.energy < y.energy : x.assignment < y.assignment;
  });
  return out;
}

/// Bias field that charges `strength` for every 1 bit; emulates hardware that
/// favors states with fewer 1s.
inline std::vector<double> uniform_bias(const QuboModel& model, double strength) {
  return std::vector<double>(model.num_vars(), strength);
}

struct SuccessStats {
  double p_z = 0.0;
  double p_z_prime = 0.0;
  bool both_seen = false;
  double ground_fraction = 0.0;
};

/// Empirical shot fractions of the two ground-pair states.
inline SuccessStats success_stats(const SampleSet& samples, const GroundPair& pair) {
  if (samples.shots == 0) throw ConfigError("sample set has no shots");
  if (pair.state_a.size() != pair.state_b.size()) throw ConfigError("ground pair states differ in length");
  for (const auto& r : samples.records) {
    if (r.assignment.size() != pair.state_a.size()) {
      throw ConfigError("sample assignments have " + std::to_string(r.assignment.size()) +
                        " bits but the ground pair has " + std::to_string(pair.state_a.size()));
    }
  }
  const auto ca = samples.count_of(pair.state_a);
  const auto cb = samples.count_of(pair.state_b);
  SuccessStats s;
  s.p_z = static_cast<double>(ca) / static_cast<double>(samples.shots);
  s.p_z_prime = static_cast<double>(cb) / static_cast<double>(samples.shots);
  s.both_seen = ca > 0 && cb > 0;
  s.ground_fraction = s.p_z + s.p_z_prime;
  return s;
}

}  // namespace simon_qubo
