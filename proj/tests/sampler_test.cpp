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

#include <numeric>

#include "gtest/gtest.h"
#include "simon_qubo/exact_solvers.hpp"
#include "simon_qubo/sampler.hpp"

using namespace simon_qubo;

namespace {

const AnnealSchedule kDefault{0.1, 5.0, 200, Interpolation::kGeometric};

std::uint64_t total_count(const SampleSet& s) {
  return std::accumulate(s.records.begin(), s.records.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const SampleRecord& r) { return acc + r.count; });
}

}  // namespace

TEST(anneal_schedule, validation_and_interpolation) {
  EXPECT_NO_THROW(kDefault.validate());
  EXPECT_THROW((AnnealSchedule{0.0, 5.0, 10, Interpolation::kGeometric}.validate()), ConfigError);
  EXPECT_THROW((AnnealSchedule{2.0, 1.0, 10, Interpolation::kGeometric}.validate()), ConfigError);
  EXPECT_THROW((AnnealSchedule{0.1, 5.0, 0, Interpolation::kGeometric}.validate()), ConfigError);

  const AnnealSchedule geo{0.1, 10.0, 3, Interpolation::kGeometric};
  EXPECT_DOUBLE_EQ(geo.beta(0), 0.1);
  EXPECT_DOUBLE_EQ(geo.beta(1), 1.0);
  EXPECT_DOUBLE_EQ(geo.beta(2), 10.0);
  const AnnealSchedule lin{1.0, 3.0, 3, Interpolation::kLinear};
  EXPECT_DOUBLE_EQ(lin.beta(1), 2.0);
  EXPECT_DOUBLE_EQ((AnnealSchedule{0.5, 4.0, 1, Interpolation::kLinear}.beta(0)), 4.0);
}

TEST(sample, finds_both_ground_states_n3) {
  const OracleSpec spec(3);
  const auto p = PenaltyConfig::balanced(spec, 2.0);
  const auto m = build_qubo(spec, p);
  const auto set = sample(m, kDefault, 1000, 42);
  const auto exact = solve_chain_dp(m, spec);
  ASSERT_EQ(exact.ground_states.size(), 2u);
  for (const auto& g : exact.ground_states) EXPECT_GT(set.count_of(g), 0u) << g.str();
  const auto stats = success_stats(set, predict_ground_pair(spec, p));
  EXPECT_TRUE(stats.both_seen);
}

TEST(sample, single_shot) {
  const OracleSpec spec(4);
  const auto set = sample(build_qubo(spec, PenaltyConfig::balanced(spec, 2.0)), kDefault, 1, 3);
  ASSERT_EQ(set.records.size(), 1u);
  EXPECT_EQ(set.records[0].count, 1u);
  EXPECT_EQ(set.shots, 1u);
}

TEST(sample, unpenalized_gadget_lands_in_valid_rows) {
  const OracleSpec spec(2);
  const auto set = sample(build_qubo(spec, PenaltyConfig::zero(spec)), kDefault, 4000, 7);
  std::uint64_t valid = 0;
  for (const auto& r : set.records) {
    if (is_oracle_valid(spec, r.assignment)) valid += r.count;
  }
  EXPECT_GE(static_cast<double>(valid) / 4000.0, 0.95);
}

TEST(sample, bookkeeping) {
  const OracleSpec spec(8);
  const auto m = build_qubo(spec, PenaltyConfig::random(spec, 2.0, 4));
  const auto set = sample(m, AnnealSchedule{0.1, 3.0, 20, Interpolation::kLinear}, 500, 11);
  EXPECT_EQ(total_count(set), 500u);
  for (std::size_t i = 0; i < set.records.size(); ++i) {
    const auto& r = set.records[i];
    EXPECT_EQ(r.assignment.size(), static_cast<std::size_t>(spec.total_vars()));
    EXPECT_EQ(r.energy, energy(m, r.assignment));
    EXPECT_GT(r.count, 0u);
    if (i > 0) {
      EXPECT_LE(set.records[i - 1].energy, r.energy);
    }
  }
}

TEST(sample, deterministic_across_threads) {
  const OracleSpec spec(10);
  const auto m = build_qubo(spec, PenaltyConfig::balanced(spec, 2.0));
  const AnnealSchedule s{0.1, 5.0, 30, Interpolation::kGeometric};
  const auto a = sample(m, s, 600, 123, {.threads = 1, .bias = {}});
  const auto b = sample(m, s, 600, 123, {.threads = 4, .bias = {}});
  const auto c = sample(m, s, 600, 123, {.threads = 0, .bias = {}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  const auto d = sample(m, s, 600, 124);
  EXPECT_FALSE(a == d);
}

TEST(sample, errors) {
  const OracleSpec spec(3);
  const auto m = build_qubo(spec, PenaltyConfig::balanced(spec, 2.0));
  EXPECT_THROW(sample(m, kDefault, 0, 1), ConfigError);
  EXPECT_THROW(sample(m, AnnealSchedule{-1.0, 1.0, 5, Interpolation::kLinear}, 10, 1), ConfigError);
  EXPECT_THROW(sample(m, kDefault, 10, 1, {.threads = 1, .bias = {1.0}}), ConfigError);
}

TEST(sample, more_sweeps_do_not_hurt) {
  const OracleSpec spec(6);
  const auto p = PenaltyConfig::balanced(spec, 2.0);
  const auto m = build_qubo(spec, p);
  const auto pair = predict_ground_pair(spec, p);
  double short_sum = 0.0, long_sum = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    short_sum += success_stats(sample(m, AnnealSchedule{0.1, 5.0, 5, Interpolation::kGeometric}, 400, seed), pair)
                     .ground_fraction;
    long_sum += success_stats(sample(m, AnnealSchedule{0.1, 5.0, 500, Interpolation::kGeometric}, 400, seed), pair)
                    .ground_fraction;
  }
  EXPECT_GE(long_sum / 10.0, short_sum / 10.0);
}

TEST(sample, bias_favors_fewer_ones) {
  // state_a (x1 = 0) has five 1 bits, state_b six, so a positive per-bit
  // field should tilt sampling toward state_a.
  const OracleSpec spec(5);
  const auto p = PenaltyConfig::balanced(spec, 2.0);
  const auto m = build_qubo(spec, p);
  const auto pair = predict_ground_pair(spec, p);
  const AnnealSchedule s{0.1, 5.0, 100, Interpolation::kGeometric};
  const auto biased = success_stats(sample(m, s, 4000, 5, {.threads = 0, .bias = uniform_bias(m, 0.3)}), pair);
  EXPECT_GT(biased.p_z, biased.p_z_prime);
}

TEST(success_stats, counting) {
  const OracleSpec spec(3);
  const auto pair = predict_ground_pair(spec, PenaltyConfig::balanced(spec, 2.0));
  SampleSet set;
  set.shots = 1000;
  set.records = {{pair.state_a, -2.0, 500}, {pair.state_b, -2.0, 500}};
  auto s = success_stats(set, pair);
  EXPECT_EQ(s.p_z, 0.5);
  EXPECT_EQ(s.p_z_prime, 0.5);
  EXPECT_TRUE(s.both_seen);
  EXPECT_EQ(s.ground_fraction, 1.0);

  set.records = {{pair.state_a, -2.0, 700}, {Assignment{0, 0, 0, 0, 0, 0, 0}, 0.0, 300}};
  s = success_stats(set, pair);
  EXPECT_FALSE(s.both_seen);
  EXPECT_EQ(s.p_z_prime, 0.0);
  EXPECT_DOUBLE_EQ(s.p_z, 0.7);

  const auto other = predict_ground_pair(OracleSpec(4), PenaltyConfig::balanced(OracleSpec(4), 2.0));
  EXPECT_THROW(success_stats(set, other), ConfigError);
}
