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

#include <algorithm>
#include <map>
#include <random>

#include "gtest/gtest.h"
#include "simon_qubo/oracle_qubo.hpp"
#include "test_oracles.hpp"

using namespace simon_qubo;
using simon_qubo::testing::reference_energy;
using simon_qubo::testing::valid_bits;

namespace {

QuboModel appendix_model() {
  const OracleSpec spec(3);
  return build_qubo(spec, PenaltyConfig::explicit_values({2.0, -2.0}));
}

}  // namespace

TEST(oracle_spec, dimensions) {
  const OracleSpec spec(3);
  EXPECT_EQ(spec.total_vars(), 7);
  EXPECT_EQ(spec.labels(), (std::vector<std::string>{"x1", "x2", "x3", "o1", "o2", "a1", "a2"}));
  EXPECT_EQ(OracleSpec(50).total_vars(), 148);
  EXPECT_THROW(OracleSpec(1), ConfigError);
  EXPECT_THROW(OracleSpec(0), ConfigError);
}

TEST(penalty_config, schemes) {
  const OracleSpec spec(6);
  const auto b = PenaltyConfig::balanced(spec, 2.0);
  ASSERT_EQ(b.size(), 5u);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(b[i], (i % 2 == 0) ? 2.0 : -2.0);

  const auto u = PenaltyConfig::uniform(spec, 1.5);
  for (double p : u.values()) EXPECT_EQ(p, 1.5);

  const auto z = PenaltyConfig::zero(spec);
  for (double p : z.values()) EXPECT_EQ(p, 0.0);

  const auto r1 = PenaltyConfig::random(OracleSpec(64), 2.0, 99);
  const auto r2 = PenaltyConfig::random(OracleSpec(64), 2.0, 99);
  const auto r3 = PenaltyConfig::random(OracleSpec(64), 2.0, 100);
  EXPECT_TRUE(std::equal(r1.values().begin(), r1.values().end(), r2.values().begin()));
  EXPECT_FALSE(std::equal(r1.values().begin(), r1.values().end(), r3.values().begin()));
  int negatives = 0;
  for (double p : r1.values()) {
    EXPECT_EQ(std::abs(p), 2.0);
    negatives += p < 0;
  }
  EXPECT_GT(negatives, 10);
  EXPECT_LT(negatives, 53);

  EXPECT_THROW(PenaltyConfig::uniform(spec, -1.0), ConfigError);
  EXPECT_EQ(parse_scheme("random"), PenaltyScheme::kRandom);
  EXPECT_THROW(parse_scheme("sideways"), ConfigError);
}

TEST(build_qubo, appendix_coefficients) {
  const auto m = appendix_model();
  const std::map<std::string, double> linear{{"x1", 1}, {"x2", 2}, {"x3", 1}, {"o1", 3},
                                             {"o2", -1}, {"a1", 4}, {"a2", 4}};
  for (const auto& [label, v] : linear) EXPECT_EQ(m.linear(label), v) << label;

  const std::map<std::pair<std::string, std::string>, double> quad{
      {{"x1", "x2"}, 2},  {{"x2", "x3"}, 2},  {{"x1", "o1"}, -2}, {{"x2", "o1"}, -2},
      {{"x2", "o2"}, -2}, {{"x3", "o2"}, -2}, {{"x1", "a1"}, -4}, {{"x2", "a1"}, -4},
      {{"x2", "a2"}, -4}, {{"x3", "a2"}, -4}, {{"o1", "a1"}, 4},  {{"o2", "a2"}, 4}};
  ASSERT_EQ(m.quadratic().size(), quad.size());
  for (const auto& [pair, v] : quad) EXPECT_EQ(m.coupling(pair.first, pair.second), v);
  EXPECT_EQ(m.offset(), 0.0);
  EXPECT_TRUE(m.integral());
  for (const auto& c : m.quadratic()) EXPECT_LT(c.i, c.j);
}

TEST(build_qubo, single_gadget) {
  const OracleSpec spec(2);
  const auto m = build_qubo(spec, PenaltyConfig::zero(spec));
  EXPECT_EQ(m.num_vars(), 4u);
  EXPECT_EQ(m.linear("x1"), 1);
  EXPECT_EQ(m.linear("x2"), 1);
  EXPECT_EQ(m.linear("o1"), 1);
  EXPECT_EQ(m.linear("a1"), 4);
  EXPECT_EQ(m.coupling("x1", "x2"), 2);
  EXPECT_EQ(m.coupling("x1", "o1"), -2);
  EXPECT_EQ(m.coupling("x2", "o1"), -2);
  EXPECT_EQ(m.coupling("x1", "a1"), -4);
  EXPECT_EQ(m.coupling("x2", "a1"), -4);
  EXPECT_EQ(m.coupling("o1", "a1"), 4);
  EXPECT_EQ(m.quadratic().size(), 6u);
}

TEST(build_qubo, degree_multiset_n5) {
  const OracleSpec spec(5);
  const auto m = build_qubo(spec, PenaltyConfig::balanced(spec, 2.0));
  std::vector<std::size_t> degrees;
  for (std::size_t k = 0; k < m.num_vars(); ++k) degrees.push_back(m.degree(k));
  std::sort(degrees.begin(), degrees.end());
  // 13 variables: both end inputs and all 8 gadget qubits couple to 3, the
  // 3 interior inputs to 6.
  EXPECT_EQ(degrees, (std::vector<std::size_t>{3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 6, 6, 6}));
}

TEST(build_qubo, degree_invariant) {
  for (int n = 2; n <= 40; ++n) {
    const OracleSpec spec(n);
    const auto m = build_qubo(spec, PenaltyConfig::random(spec, 2.0, static_cast<std::uint64_t>(n)));
    int six = 0;
    for (std::size_t k = 0; k < m.num_vars(); ++k) {
      const auto d = m.degree(k);
      EXPECT_TRUE(d == 3 || d == 6) << "n=" << n << " var " << m.labels()[k];
      six += d == 6;
    }
    EXPECT_EQ(six, std::max(0, n - 2));
  }
}

TEST(build_qubo, deterministic_and_rejects_mismatch) {
  const OracleSpec spec(7);
  const auto p = PenaltyConfig::random(spec, 2.0, 5);
  EXPECT_EQ(build_qubo(spec, p), build_qubo(spec, p));
  EXPECT_THROW(build_qubo(OracleSpec(4), p), ConfigError);
}

TEST(build_qubo, non_integer_penalties) {
  const OracleSpec spec(3);
  const auto m = build_qubo(spec, PenaltyConfig::explicit_values({0.25, -1.5}));
  EXPECT_FALSE(m.integral());
  EXPECT_EQ(m.linear("o1"), 1.25);
}

TEST(energy, appendix_ground_states) {
  const auto m = appendix_model();
  EXPECT_EQ(energy(m, Assignment{1, 1, 0, 0, 1, 1, 0}), -2.0);
  EXPECT_EQ(energy(m, Assignment{0, 0, 1, 0, 1, 0, 0}), -2.0);
  EXPECT_EQ(energy(m, Assignment{0, 0, 0, 0, 0, 0, 0}), 0.0);
  EXPECT_THROW(energy(m, Assignment{0, 0, 1}), ConfigError);
}

TEST(energy, matches_reference_polynomial) {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 20; ++n) {
    const OracleSpec spec(n);
    std::vector<double> p(static_cast<std::size_t>(n - 1));
    for (auto& v : p) v = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
    const auto m = build_qubo(spec, PenaltyConfig::explicit_values(p));
    for (int t = 0; t < 50; ++t) {
      BitVector bits(static_cast<std::size_t>(spec.total_vars()));
      for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1U);
      EXPECT_NEAR(energy(m, bits), reference_energy(n, p, bits), 1e-9);
    }
  }
}

TEST(is_oracle_valid, examples) {
  const OracleSpec spec(3);
  EXPECT_TRUE(is_oracle_valid(spec, Assignment{0, 0, 1, 0, 1, 0, 0}));
  EXPECT_FALSE(is_oracle_valid(spec, Assignment{0, 0, 0, 1, 0, 0, 0}));
  EXPECT_TRUE(is_oracle_valid(spec, Assignment{1, 1, 0, 0, 1, 1, 0}));
  EXPECT_THROW(is_oracle_valid(spec, Assignment{1, 1, 0}), ConfigError);
}

// Valid assignments cost exactly sum p_i o_i.
TEST(energy, valid_assignments_cost_sum_of_selected_penalties) {
  std::mt19937_64 rng(3);
  auto check = [](const OracleSpec& spec, const PenaltyConfig& p, const QuboModel& m, std::uint64_t x) {
    const auto bits = valid_bits(spec.n(), x);
    ASSERT_TRUE(is_oracle_valid(spec, bits));
    double expected = 0.0;
    for (int i = 1; i < spec.n(); ++i) expected += p[static_cast<std::size_t>(i - 1)] * bits[spec.o(i)];
    EXPECT_EQ(energy(m, bits), expected);
  };
  for (int n = 2; n <= 8; ++n) {
    const OracleSpec spec(n);
    const auto p = PenaltyConfig::random(spec, 2.0, static_cast<std::uint64_t>(n));
    const auto m = build_qubo(spec, p);
    const auto zm = build_qubo(spec, PenaltyConfig::zero(spec));
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      check(spec, p, m, x);
      EXPECT_EQ(energy(zm, valid_bits(n, x)), 0.0);
    }
  }
  for (int n = 9; n <= 64; ++n) {
    const OracleSpec spec(n);
    const auto p = PenaltyConfig::balanced(spec, 2.0);
    const auto m = build_qubo(spec, p);
    for (int t = 0; t < 20; ++t) check(spec, p, m, rng() & (n == 64 ? ~0ULL : ((1ULL << n) - 1)));
  }
}

TEST(energy, invalid_assignments_positive_without_penalties) {
  for (int n = 2; n <= 8; ++n) {
    const OracleSpec spec(n);
    const auto m = build_qubo(spec, PenaltyConfig::zero(spec));
    const int nv = spec.total_vars();
    BitVector bits(static_cast<std::size_t>(nv));
    std::uint64_t invalid = 0;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << nv); ++code) {
      for (int k = 0; k < nv; ++k) bits[static_cast<std::size_t>(k)] = (code >> k) & 1U;
      const double e = energy(m, bits);
      if (is_oracle_valid(spec, bits)) {
        ASSERT_EQ(e, 0.0);
      } else {
        ASSERT_GT(e, 0.0) << "n=" << n << " code=" << code;
        ++invalid;
      }
    }
    EXPECT_EQ(invalid, (std::uint64_t{1} << nv) - (std::uint64_t{1} << n));
  }
}

TEST(predict_ground_pair, appendix) {
  const OracleSpec spec(3);
  const auto pair = predict_ground_pair(spec, PenaltyConfig::explicit_values({2.0, -2.0}));
  EXPECT_EQ(pair.state_a, (Assignment{0, 0, 1, 0, 1, 0, 0}));
  EXPECT_EQ(pair.state_b, (Assignment{1, 1, 0, 0, 1, 1, 0}));
  EXPECT_EQ(pair.ground_energy, -2.0);
  EXPECT_FALSE(pair.degenerate_beyond_pair);
  EXPECT_EQ(pair.target_output, (BitVector{0, 1}));
}

TEST(predict_ground_pair, zero_penalties_flagged) {
  const OracleSpec spec(3);
  const auto pair = predict_ground_pair(spec, PenaltyConfig::zero(spec));
  EXPECT_TRUE(pair.degenerate_beyond_pair);
  EXPECT_EQ(pair.ground_energy, 0.0);
}

TEST(predict_ground_pair, n5_balanced) {
  const OracleSpec spec(5);
  const auto pair = predict_ground_pair(spec, PenaltyConfig::balanced(spec, 2.0));
  EXPECT_EQ(pair.target_output, (BitVector{0, 1, 0, 1}));
  EXPECT_EQ(pair.state_a.inputs(spec), (BitVector{0, 0, 1, 1, 0}));
  EXPECT_EQ(pair.state_b.inputs(spec), (BitVector{1, 1, 0, 0, 1}));
  EXPECT_EQ(pair.ground_energy, -4.0);
}

TEST(predict_ground_pair, properties) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 60);
    const OracleSpec spec(n);
    std::vector<double> p(static_cast<std::size_t>(n - 1));
    for (auto& v : p) v = static_cast<double>(static_cast<int>(rng() % 7) - 3);
    const auto pc = PenaltyConfig::explicit_values(p);
    const auto pair = predict_ground_pair(spec, pc);
    const auto m = build_qubo(spec, pc);
    EXPECT_TRUE(is_oracle_valid(spec, pair.state_a));
    EXPECT_TRUE(is_oracle_valid(spec, pair.state_b));
    EXPECT_EQ(pair.state_a.outputs(spec), pair.state_b.outputs(spec));
    EXPECT_EQ(pair.state_a.outputs(spec), pair.target_output);
    EXPECT_TRUE(is_all_ones(recover_period(pair.state_a.inputs(spec), pair.state_b.inputs(spec))));
    EXPECT_EQ(energy(m, pair.state_a), pair.ground_energy);
    EXPECT_EQ(energy(m, pair.state_b), pair.ground_energy);
    EXPECT_EQ(pair.degenerate_beyond_pair, std::find(p.begin(), p.end(), 0.0) != p.end());
  }
}

TEST(recover_period, examples_and_errors) {
  EXPECT_EQ(recover_period(BitVector{0, 0, 1}, BitVector{1, 1, 0}), (BitVector{1, 1, 1}));
  EXPECT_EQ(recover_period(BitVector{0, 1}, BitVector{1, 0}), (BitVector{1, 1}));
  EXPECT_EQ(recover_period(BitVector{0, 0, 1, 1, 0}, BitVector{1, 1, 0, 0, 1}), (BitVector{1, 1, 1, 1, 1}));
  EXPECT_THROW(recover_period(BitVector{0, 1}, BitVector{0, 1, 1}), ConfigError);
  EXPECT_THROW(recover_period(BitVector{0, 1}, BitVector{0, 1}), ConfigError);
}

TEST(validate_penalties, calibration_bounds) {
  auto count = [](const std::vector<PenaltyWarning>& ws, PenaltyWarningKind k) {
    return std::count_if(ws.begin(), ws.end(), [k](const PenaltyWarning& w) { return w.kind == k; });
  };
  const OracleSpec n10(10), n5(5);
  EXPECT_TRUE(validate_penalties(n10, PenaltyConfig::uniform(n10, 2.0)).empty());
  EXPECT_TRUE(validate_penalties(n10, PenaltyConfig::balanced(n10, 2.0)).empty());
  const auto low = validate_penalties(n10, PenaltyConfig::uniform(n10, 0.5));
  EXPECT_EQ(low.size(), 9u);
  EXPECT_EQ(count(low, PenaltyWarningKind::kTooLow), 9);
  const auto high = validate_penalties(n5, PenaltyConfig::uniform(n5, 5.0));
  EXPECT_EQ(high.size(), 4u);
  EXPECT_EQ(count(high, PenaltyWarningKind::kTooHigh), 4);
  EXPECT_EQ(validate_penalties(n5, PenaltyConfig::uniform(n5, 1.0)).size(), 4u);
  const auto zero = validate_penalties(n5, PenaltyConfig::explicit_values({0.0, 2.0, -2.0, 0.0}));
  EXPECT_EQ(count(zero, PenaltyWarningKind::kZero), 2);
  EXPECT_EQ(zero.size(), 2u);
}

TEST(assignment, decode_registers) {
  const OracleSpec spec(3);
  const Assignment a{1, 1, 0, 0, 1, 1, 0};
  EXPECT_EQ(a.inputs(spec), (BitVector{1, 1, 0}));
  EXPECT_EQ(a.outputs(spec), (BitVector{0, 1}));
  EXPECT_EQ(a.ancillas(spec), (BitVector{1, 0}));
  EXPECT_EQ(a.str(), "1100110");
  EXPECT_EQ(Assignment::from_code(0b0110011, 7), a);
  EXPECT_THROW((Assignment{0, 2}), ConfigError);
}
