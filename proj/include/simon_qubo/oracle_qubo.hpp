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

// The penalized XOR-chain QUBO whose degenerate ground pair encodes the two
// preimages of one output of the all-ones-period Simon oracle
//   o_i = x_i XOR x_{i+1},   a_i = x_i AND x_{i+1},   i = 1..n-1.
//
// Variables are indexed x_1..x_n, o_1..o_{n-1}, a_1..a_{n-1} in that order.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "simon_qubo/errors.hpp"
#include "simon_qubo/rng.hpp"

namespace simon_qubo {

using BitVector = std::vector<std::uint8_t>;

inline std::string to_bitstring(std::span<const std::uint8_t> bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

inline BitVector parse_bitstring(std::string_view s) {
  BitVector bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw ConfigError("bitstring may only contain 0 and 1: '" + std::string(s) + "'");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return bits;
}

/// Problem dimensions of the Simon oracle with n input bits.
class OracleSpec {
 public:
  explicit OracleSpec(int n) : n_(n) {
    if (n < 2) throw ConfigError("oracle size n must be >= 2, got " + std::to_string(n));
  }

  int n() const noexcept { return n_; }
  int gadgets() const noexcept { return n_ - 1; }
  int total_vars() const noexcept { return 3 * n_ - 2; }

  // 1-based register positions -> 0-based variable index.
  std::size_t x(int i) const noexcept { return static_cast<std::size_t>(i - 1); }
  std::size_t o(int i) const noexcept { return static_cast<std::size_t>(n_ + i - 1); }
  std::size_t a(int i) const noexcept { return static_cast<std::size_t>(2 * n_ - 1 + i - 1); }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(total_vars()));
    for (int i = 1; i <= n_; ++i) out.push_back("x" + std::to_string(i));
    for (int i = 1; i < n_; ++i) out.push_back("o" + std::to_string(i));
    for (int i = 1; i < n_; ++i) out.push_back("a" + std::to_string(i));
    return out;
  }

  friend bool operator==(const OracleSpec&, const OracleSpec&) = default;

 private:
  int n_;
};

enum class PenaltyScheme { kZero, kUniform, kBalanced, kRandom, kExplicit };

inline std::string_view to_string(PenaltyScheme s) {
  switch (s) {
    case PenaltyScheme::kZero: return "zero";
    case PenaltyScheme::kUniform: return "uniform";
    case PenaltyScheme::kBalanced: return "balanced";
    case PenaltyScheme::kRandom: return "random";
    case PenaltyScheme::kExplicit: return "explicit";
  }
  return "?";
}

inline PenaltyScheme parse_scheme(std::string_view s) {
  for (auto v : {PenaltyScheme::kZero, PenaltyScheme::kUniform, PenaltyScheme::kBalanced, PenaltyScheme::kRandom,
                 PenaltyScheme::kExplicit}) {
    if (to_string(v) == s) return v;
  }
  throw ConfigError("unknown penalty scheme '" + std::string(s) + "'");
}

/// Per-output penalties p_1..p_{n-1} added to the linear coefficient of o_i.
class PenaltyConfig {
 public:
  static PenaltyConfig zero(const OracleSpec& spec) {
    return {std::vector<double>(static_cast<std::size_t>(spec.gadgets()), 0.0), PenaltyScheme::kZero, 0.0, 0};
  }

  static PenaltyConfig uniform(const OracleSpec& spec, double magnitude) {
    check_magnitude(magnitude);
    return {std::vector<double>(static_cast<std::size_t>(spec.gadgets()), magnitude), PenaltyScheme::kUniform,
            magnitude, 0};
  }

  // p_i = magnitude * (-1)^(i+1): +m, -m, +m, ...
  static PenaltyConfig balanced(const OracleSpec& spec, double magnitude) {
    check_magnitude(magnitude);
    std::vector<double> p(static_cast<std::size_t>(spec.gadgets()));
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = (i % 2 == 0) ? magnitude : -magnitude;
    return {std::move(p), PenaltyScheme::kBalanced, magnitude, 0};
  }

  // Sign of p_i is the low bit of a counter hash of (seed, i).
  static PenaltyConfig random(const OracleSpec& spec, double magnitude, std::uint64_t seed) {
    check_magnitude(magnitude);
    std::vector<double> p(static_cast<std::size_t>(spec.gadgets()));
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = (counter_hash(seed, i) & 1U) ? -magnitude : magnitude;
    return {std::move(p), PenaltyScheme::kRandom, magnitude, seed};
  }

  static PenaltyConfig explicit_values(std::vector<double> values) {
    double mag = 0.0;
    for (double v : values) {
      if (!std::isfinite(v)) throw ConfigError("penalties must be finite");
      mag = std::max(mag, std::abs(v));
    }
    return {std::move(values), PenaltyScheme::kExplicit, mag, 0};
  }

  static PenaltyConfig make(PenaltyScheme scheme, const OracleSpec& spec, double magnitude, std::uint64_t seed) {
    switch (scheme) {
      case PenaltyScheme::kZero: return zero(spec);
      case PenaltyScheme::kUniform: return uniform(spec, magnitude);
      case PenaltyScheme::kBalanced: return balanced(spec, magnitude);
      case PenaltyScheme::kRandom: return random(spec, magnitude, seed);
      case PenaltyScheme::kExplicit: break;
    }
    throw ConfigError("explicit penalties need a value list, not a magnitude");
  }

  std::span<const double> values() const noexcept { return p_; }
  double operator[](std::size_t i) const { return p_.at(i); }
  std::size_t size() const noexcept { return p_.size(); }
  PenaltyScheme scheme() const noexcept { return scheme_; }
  double magnitude() const noexcept { return magnitude_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  PenaltyConfig(std::vector<double> p, PenaltyScheme scheme, double magnitude, std::uint64_t seed)
      : p_(std::move(p)), scheme_(scheme), magnitude_(magnitude), seed_(seed) {}

  static void check_magnitude(double m) {
    if (!std::isfinite(m) || m < 0.0) throw ConfigError("penalty magnitude must be a finite nonnegative number");
  }

  std::vector<double> p_;
  PenaltyScheme scheme_;
  double magnitude_;
  std::uint64_t seed_;
};

/// A full bit assignment, ordered like the model's labels.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(BitVector bits) : bits_(std::move(bits)) {
    for (auto& b : bits_) {
      if (b > 1) throw ConfigError("assignment bits must be 0 or 1");
    }
  }
  Assignment(std::initializer_list<int> bits) {
    bits_.reserve(bits.size());
    for (int b : bits) {
      if (b != 0 && b != 1) throw ConfigError("assignment bits must be 0 or 1");
      bits_.push_back(static_cast<std::uint8_t>(b));
    }
  }

  // Bit k of code is variable k.
  static Assignment from_code(std::uint64_t code, std::size_t num_vars) {
    BitVector bits(num_vars);
    for (std::size_t k = 0; k < num_vars; ++k) bits[k] = static_cast<std::uint8_t>((code >> k) & 1U);
    return Assignment(std::move(bits));
  }

  std::size_t size() const noexcept { return bits_.size(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  BitVector inputs(const OracleSpec& spec) const { return slice(spec, spec.x(1), spec.n()); }
  BitVector outputs(const OracleSpec& spec) const { return slice(spec, spec.o(1), spec.gadgets()); }
  BitVector ancillas(const OracleSpec& spec) const { return slice(spec, spec.a(1), spec.gadgets()); }

  std::string str() const { return to_bitstring(bits_); }

  friend auto operator<=>(const Assignment&, const Assignment&) = default;
  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  BitVector slice(const OracleSpec& spec, std::size_t start, int len) const {
    if (bits_.size() != static_cast<std::size_t>(spec.total_vars())) {
      throw ConfigError("assignment length " + std::to_string(bits_.size()) + " does not match 3n-2 = " +
                        std::to_string(spec.total_vars()));
    }
    return BitVector(bits_.begin() + static_cast<std::ptrdiff_t>(start),
                     bits_.begin() + static_cast<std::ptrdiff_t>(start) + len);
  }

  BitVector bits_;
};

struct Coupling {
  std::size_t i;
  std::size_t j;
  double value;

  friend bool operator==(const Coupling&, const Coupling&) = default;
};

/// Sparse quadratic pseudo-Boolean function
///   E(b) = offset + sum_k linear[k] b_k + sum_{(i,j)} J_ij b_i b_j.
///
/// Couplings are stored once each with i < j, sorted by (i, j); duplicate
/// pairs given to the constructor are summed. When the model comes from
/// build_qubo it also remembers the oracle size and penalties.
class QuboModel {
 public:
  QuboModel(std::vector<std::string> labels, std::vector<double> linear, std::vector<Coupling> quadratic,
            double offset = 0.0, std::optional<int> oracle_n = std::nullopt, std::vector<double> penalties = {})
      : labels_(std::move(labels)),
        linear_(std::move(linear)),
        offset_(offset),
        oracle_n_(oracle_n),
        penalties_(std::move(penalties)) {
    if (labels_.size() != linear_.size()) throw ConfigError("label and linear coefficient counts differ");
    if (labels_.size() > 1'000'000) throw ConfigError("model too large");
    for (std::size_t k = 0; k < labels_.size(); ++k) {
      if (!index_.emplace(labels_[k], k).second) throw ConfigError("duplicate label '" + labels_[k] + "'");
    }
    std::map<std::pair<std::size_t, std::size_t>, double> merged;
    for (auto c : quadratic) {
      if (c.i == c.j) throw ConfigError("self-coupling on variable " + std::to_string(c.i));
      if (c.i >= labels_.size() || c.j >= labels_.size()) throw ConfigError("coupling index out of range");
      if (c.i > c.j) std::swap(c.i, c.j);
      merged[{c.i, c.j}] += c.value;
    }
    quadratic_.reserve(merged.size());
    for (const auto& [key, v] : merged) quadratic_.push_back({key.first, key.second, v});

    adjacency_.assign(labels_.size(), {});
    for (const auto& c : quadratic_) {
      adjacency_[c.i].push_back({c.j, c.value});
      adjacency_[c.j].push_back({c.i, c.value});
    }

    integral_ = is_small_integer(offset_);
    for (double v : linear_) integral_ = integral_ && is_small_integer(v);
    for (const auto& c : quadratic_) integral_ = integral_ && is_small_integer(c.value);
    if (oracle_n_ && static_cast<std::size_t>(3 * *oracle_n_ - 2) != labels_.size()) {
      throw ConfigError("model has " + std::to_string(labels_.size()) + " variables but n = " +
                        std::to_string(*oracle_n_) + " needs 3n-2");
    }
  }

  std::size_t num_vars() const noexcept { return labels_.size(); }
  std::span<const std::string> labels() const noexcept { return labels_; }
  std::span<const double> linear() const noexcept { return linear_; }
  std::span<const Coupling> quadratic() const noexcept { return quadratic_; }
  double offset() const noexcept { return offset_; }
  std::optional<int> oracle_n() const noexcept { return oracle_n_; }
  std::span<const double> penalties() const noexcept { return penalties_; }

  // True when every coefficient is an integer small enough for exact int64
  // accumulation.
  bool integral() const noexcept { return integral_; }

  std::size_t index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw ConfigError("unknown label '" + label + "'");
    return it->second;
  }

  double linear(const std::string& label) const { return linear_[index_of(label)]; }

  // 0 when the pair is not coupled.
  double coupling(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    auto it = std::lower_bound(quadratic_.begin(), quadratic_.end(), std::pair{i, j},
                               [](const Coupling& c, const std::pair<std::size_t, std::size_t>& key) {
                                 return std::pair{c.i, c.j} < key;
                               });
    return (it != quadratic_.end() && it->i == i && it->j == j) ? it->value : 0.0;
  }

  double coupling(const std::string& a, const std::string& b) const { return coupling(index_of(a), index_of(b)); }

  struct Neighbor {
    std::size_t index;
    double value;
  };
  std::span<const Neighbor> neighbors(std::size_t i) const { return adjacency_.at(i); }
  std::size_t degree(std::size_t i) const { return adjacency_.at(i).size(); }

  friend bool operator==(const QuboModel& a, const QuboModel& b) {
    return a.labels_ == b.labels_ && a.linear_ == b.linear_ && a.quadratic_ == b.quadratic_ &&
           a.offset_ == b.offset_ && a.oracle_n_ == b.oracle_n_ && a.penalties_ == b.penalties_;
  }

 private:
  static bool is_small_integer(double v) { return std::isfinite(v) && std::abs(v) < 0x1p40 && v == std::trunc(v); }

  std::vector<std::string> labels_;
  std::vector<double> linear_;
  std::vector<Coupling> quadratic_;
  double offset_;
  std::optional<int> oracle_n_;
  std::vector<double> penalties_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::vector<Neighbor>> adjacency_;
  bool integral_ = false;
};

/// Sum over gadgets i = 1..n-1 of
///   x_i + x_{i+1} + (1 + p_i) o_i + 4 a_i + 2 x_i x_{i+1}
///   - 2 (x_i + x_{i+1}) o_i - 4 (x_i + x_{i+1}) a_i + 4 o_i a_i.
inline QuboModel build_qubo(const OracleSpec& spec, const PenaltyConfig& penalties) {
  if (penalties.size() != static_cast<std::size_t>(spec.gadgets())) {
    throw ConfigError("expected " + std::to_string(spec.gadgets()) + " penalties for n = " +
                      std::to_string(spec.n()) + ", got " + std::to_string(penalties.size()));
  }
  std::vector<double> linear(static_cast<std::size_t>(spec.total_vars()), 0.0);
  std::vector<Coupling> quadratic;
  quadratic.reserve(static_cast<std::size_t>(7 * spec.gadgets()));
  for (int i = 1; i < spec.n(); ++i) {
    const auto xl = spec.x(i), xr = spec.x(i + 1), o = spec.o(i), a = spec.a(i);
    linear[xl] += 1.0;
    linear[xr] += 1.0;
    linear[o] += 1.0 + penalties[static_cast<std::size_t>(i - 1)];
    linear[a] += 4.0;
    quadratic.push_back({xl, xr, 2.0});
    quadratic.push_back({xl, o, -2.0});
    quadratic.push_back({xr, o, -2.0});
    quadratic.push_back({xl, a, -4.0});
    quadratic.push_back({xr, a, -4.0});
    quadratic.push_back({o, a, 4.0});
  }
  return QuboModel(spec.labels(), std::move(linear), std::move(quadratic), 0.0, spec.n(),
                   std::vector<double>(penalties.values().begin(), penalties.values().end()));
}

inline OracleSpec oracle_spec_of(const QuboModel& model) {
  if (!model.oracle_n()) throw ConfigError("model does not carry an oracle size n");
  return OracleSpec(*model.oracle_n());
}

namespace detail {

inline void check_length(const QuboModel& model, std::span<const std::uint8_t> bits) {
  if (bits.size() != model.num_vars()) {
    throw ConfigError("assignment has " + std::to_string(bits.size()) + " bits, model has " +
                      std::to_string(model.num_vars()) + " variables");
  }
}

}  // namespace detail

/// Exact int64 accumulation when the model is integral, double otherwise.
inline double energy(const QuboModel& model, std::span<const std::uint8_t> bits) {
  detail::check_length(model, bits);
  if (model.integral()) {
    auto acc = static_cast<std::int64_t>(model.offset());
    for (std::size_t k = 0; k < bits.size(); ++k) {
      if (bits[k]) acc += static_cast<std::int64_t>(model.linear()[k]);
    }
    for (const auto& c : model.quadratic()) {
      if (bits[c.i] && bits[c.j]) acc += static_cast<std::int64_t>(c.value);
    }
    return static_cast<double>(acc);
  }
  double acc = model.offset();
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k]) acc += model.linear()[k];
  }
  for (const auto& c : model.quadratic()) {
    if (bits[c.i] && bits[c.j]) acc += c.value;
  }
  return acc;
}

inline double energy(const QuboModel& model, const Assignment& a) { return energy(model, a.bits()); }

inline bool is_oracle_valid(const OracleSpec& spec, std::span<const std::uint8_t> bits) {
  if (bits.size() != static_cast<std::size_t>(spec.total_vars())) {
    throw ConfigError("assignment has " + std::to_string(bits.size()) + " bits, expected 3n-2 = " +
                      std::to_string(spec.total_vars()));
  }
  for (int i = 1; i < spec.n(); ++i) {
    const auto l = bits[spec.x(i)], r = bits[spec.x(i + 1)];
    if (bits[spec.o(i)] != (l ^ r) || bits[spec.a(i)] != (l & r)) return false;
  }
  return true;
}

inline bool is_oracle_valid(const OracleSpec& spec, const Assignment& a) { return is_oracle_valid(spec, a.bits()); }

/// The unique oracle-valid assignment with the given inputs.
inline Assignment oracle_evaluation(const OracleSpec& spec, std::span<const std::uint8_t> inputs) {
  if (inputs.size() != static_cast<std::size_t>(spec.n())) throw ConfigError("input register must have n bits");
  BitVector bits(static_cast<std::size_t>(spec.total_vars()), 0);
  for (int i = 1; i <= spec.n(); ++i) bits[spec.x(i)] = inputs[static_cast<std::size_t>(i - 1)] & 1U;
  for (int i = 1; i < spec.n(); ++i) {
    bits[spec.o(i)] = bits[spec.x(i)] ^ bits[spec.x(i + 1)];
    bits[spec.a(i)] = bits[spec.x(i)] & bits[spec.x(i + 1)];
  }
  return Assignment(std::move(bits));
}

struct GroundPair {
  BitVector target_output;
  Assignment state_a;  // x_1 = 0
  Assignment state_b;  // x_1 = 1
  double ground_energy = 0.0;
  bool degenerate_beyond_pair = false;
};

/// Output o*_i = [p_i < 0]; the two preimages of o* start from x_1 = 0 and
/// x_1 = 1. Ground energy is the sum of the negative penalties. When some
/// p_i = 0 both values of o_i tie and the pair is only part of the ground
/// manifold.
inline GroundPair predict_ground_pair(const OracleSpec& spec, const PenaltyConfig& penalties) {
  if (penalties.size() != static_cast<std::size_t>(spec.gadgets())) {
    throw ConfigError("penalty count does not match n - 1");
  }
  GroundPair pair;
  pair.target_output.resize(penalties.size());
  for (std::size_t i = 0; i < penalties.size(); ++i) {
    const double p = penalties[i];
    pair.target_output[i] = p < 0.0 ? 1 : 0;
    if (p < 0.0) pair.ground_energy += p;
    if (p == 0.0) pair.degenerate_beyond_pair = true;
  }
  auto chain = [&](std::uint8_t first) {
    BitVector x(static_cast<std::size_t>(spec.n()));
    x[0] = first;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) x[i + 1] = x[i] ^ pair.target_output[i];
    return oracle_evaluation(spec, x);
  };
  pair.state_a = chain(0);
  pair.state_b = chain(1);
  return pair;
}

/// Bitwise XOR of two distinct preimages of the same output.
inline BitVector recover_period(std::span<const std::uint8_t> z, std::span<const std::uint8_t> z_prime) {
  if (z.size() != z_prime.size()) throw ConfigError("inputs to period recovery differ in length");
  if (std::equal(z.begin(), z.end(), z_prime.begin())) throw ConfigError("period recovery needs two distinct inputs");
  BitVector s(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) s[i] = (z[i] ^ z_prime[i]) & 1U;
  return s;
}

inline bool is_all_ones(std::span<const std::uint8_t> bits) {
  return std::all_of(bits.begin(), bits.end(), [](std::uint8_t b) { return b == 1; });
}

enum class PenaltyWarningKind { kZero, kTooLow, kTooHigh };

struct PenaltyWarning {
  std::size_t index;  // 1-based output position
  PenaltyWarningKind kind;
  std::string message;
};

// Magnitudes in (0, 1] or >= n tend to wash out the ground-pair selection.
inline std::vector<PenaltyWarning> validate_penalties(const OracleSpec& spec, const PenaltyConfig& penalties) {
  std::vector<PenaltyWarning> out;
  for (std::size_t k = 0; k < penalties.size(); ++k) {
    const double p = penalties[k];
    const double m = std::abs(p);
    const auto pos = "p_" + std::to_string(k + 1) + " = " + std::to_string(p);
    if (p == 0.0) {
      out.push_back({k + 1, PenaltyWarningKind::kZero, pos + " is zero; output o_" + std::to_string(k + 1) +
                                                          " is not selected and the ground state stays degenerate"});
    } else if (m <= 1.0) {
      out.push_back({k + 1, PenaltyWarningKind::kTooLow, pos + " has magnitude <= 1"});
    } else if (m >= spec.n()) {
      out.push_back({k + 1, PenaltyWarningKind::kTooHigh, pos + " has magnitude >= n = " + std::to_string(spec.n())});
    }
  }
  return out;
}

}  // namespace simon_qubo
