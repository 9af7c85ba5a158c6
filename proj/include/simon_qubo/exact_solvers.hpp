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

// Exact ground truth for the Simon QUBO family: exhaustive enumeration for
// small models and a chain dynamic program for any size.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "simon_qubo/errors.hpp"
#include "simon_qubo/oracle_qubo.hpp"

namespace simon_qubo {

inline constexpr int kDefaultEnumerationCap = 24;
inline constexpr double kEnergyTolerance = 1e-9;
inline constexpr std::size_t kDefaultMaxGroundStates = std::size_t{1} << 20;

// Exact equality for integral models, absolute tolerance otherwise.
inline bool same_energy(const QuboModel& model, double a, double b) {
  return model.integral() ? a == b : std::abs(a - b) <= kEnergyTolerance;
}

struct StateClass {
  bool valid_oracle;
  BitVector output_value;
};

struct SpectrumLevel {
  double energy;
  std::vector<std::uint64_t> states;  // packed codes, bit k = variable k, ascending
  std::size_t valid_count = 0;
  // Oracle-valid states of this level keyed by their output register.
  std::map<std::string, std::vector<std::uint64_t>> valid_by_output;
};

class SpectrumReport {
 public:
  SpectrumReport(OracleSpec spec, std::vector<SpectrumLevel> levels) : spec_(spec), levels_(std::move(levels)) {}

  const OracleSpec& spec() const noexcept { return spec_; }
  const std::vector<SpectrumLevel>& levels() const noexcept { return levels_; }
  const SpectrumLevel& ground() const { return levels_.front(); }

  std::size_t total_states() const {
    std::size_t total = 0;
    for (const auto& l : levels_) total += l.states.size();
    return total;
  }

  Assignment assignment(std::uint64_t code) const {
    return Assignment::from_code(code, static_cast<std::size_t>(spec_.total_vars()));
  }

  StateClass classify(std::uint64_t code) const {
    const auto a = assignment(code);
    return {is_oracle_valid(spec_, a), a.outputs(spec_)};
  }

 private:
  OracleSpec spec_;
  std::vector<SpectrumLevel> levels_;
};

enum class SolveMethod { kBruteForce, kChainDp };

inline std::string_view to_string(SolveMethod m) { return m == SolveMethod::kBruteForce ? "brute_force" : "chain_dp"; }

struct ExactSolution {
  double ground_energy = 0.0;
  std::vector<Assignment> ground_states;  // complete, ascending
  SolveMethod method = SolveMethod::kChainDp;
};

namespace detail {

inline void check_cap(const QuboModel& model, int cap) {
  if (model.num_vars() > static_cast<std::size_t>(cap)) {
    throw CapExceededError("exhaustive enumeration over " + std::to_string(model.num_vars()) +
                           " variables exceeds the cap of " + std::to_string(cap));
  }
  if (model.num_vars() > 40) throw CapExceededError("exhaustive enumeration is limited to 40 variables");
}

inline unsigned worker_count(unsigned requested, std::size_t blocks) {
  unsigned w = requested ? requested : std::max(1U, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(w, blocks));
}

// Visits every code of one block of the state space in Gray-code order,
// updating the energy by single-bit flips. The block fixes the top bits of
// the code to `block`, the low `low_bits` bits are enumerated.
template <typename Acc, typename Visit>
void enumerate_block(const QuboModel& model, std::uint64_t block, int low_bits, Visit&& visit) {
  const std::size_t nv = model.num_vars();
  const std::uint64_t base = block << low_bits;
  std::vector<std::uint8_t> s(nv);
  for (std::size_t k = 0; k < nv; ++k) s[k] = static_cast<std::uint8_t>((base >> k) & 1U);

  auto coef = [](double v) { return static_cast<Acc>(v); };
  std::vector<Acc> field(nv);
  for (std::size_t k = 0; k < nv; ++k) {
    Acc h = coef(model.linear()[k]);
    for (const auto& nb : model.neighbors(k)) {
      if (s[nb.index]) h += coef(nb.value);
    }
    field[k] = h;
  }
  Acc e = coef(model.offset());
  for (std::size_t k = 0; k < nv; ++k) {
    if (s[k]) e += coef(model.linear()[k]);
  }
  for (const auto& c : model.quadratic()) {
    if (s[c.i] && s[c.j]) e += coef(c.value);
  }

  std::uint64_t code = base;
  visit(code, static_cast<double>(e));
  const std::uint64_t steps = std::uint64_t{1} << low_bits;
  for (std::uint64_t t = 1; t < steps; ++t) {
    const auto k = static_cast<std::size_t>(std::countr_zero(t));
    const Acc sign = s[k] ? Acc(-1) : Acc(1);
    e += sign * field[k];
    s[k] ^= 1U;
    code ^= std::uint64_t{1} << k;
    for (const auto& nb : model.neighbors(k)) field[nb.index] += sign * coef(nb.value);
    visit(code, static_cast<double>(e));
  }
}

// Splits the 2^nv state space into blocks and runs `per_block(block, low_bits)`
// over them with a fixed block -> worker assignment.
template <typename PerBlock>
void for_each_block(std::size_t nv, unsigned threads, PerBlock&& per_block) {
  const int high_bits = static_cast<int>(std::min<std::size_t>(nv, 6));
  const int low_bits = static_cast<int>(nv) - high_bits;
  const std::size_t blocks = std::size_t{1} << high_bits;
  const unsigned workers = worker_count(threads, blocks);
  if (workers <= 1 || nv < 12) {
    for (std::size_t b = 0; b < blocks; ++b) per_block(b, low_bits);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t b = w; b < blocks; b += workers) per_block(b, low_bits);
    });
  }
}

template <typename Fn>
decltype(auto) with_accumulator(const QuboModel& model, Fn&& fn) {
  if (model.integral()) return fn(std::int64_t{});
  return fn(static_cast<long double>(0));
}

}  // namespace detail

/// Every one of the 2^(3n-2) states, sorted into energy levels. Oracle-valid
/// states of each level are also grouped by output value.
inline SpectrumReport enumerate_spectrum(const QuboModel& model, const OracleSpec& spec,
                                         int cap = kDefaultEnumerationCap, unsigned threads = 0) {
  if (model.num_vars() != static_cast<std::size_t>(spec.total_vars())) {
    throw ConfigError("model size does not match 3n-2 for n = " + std::to_string(spec.n()));
  }
  detail::check_cap(model, cap);
  const std::size_t nv = model.num_vars();
  const std::size_t count = std::size_t{1} << nv;
  std::vector<double> energies(count);
  detail::with_accumulator(model, [&](auto zero) {
    using Acc = decltype(zero);
    detail::for_each_block(nv, threads, [&](std::uint64_t block, int low_bits) {
      detail::enumerate_block<Acc>(model, block, low_bits,
                                   [&](std::uint64_t code, double e) { energies[code] = e; });
    });
    return 0;
  });

  std::vector<std::uint64_t> order(count);
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
    return energies[a] != energies[b] ? energies[a] < energies[b] : a < b;
  });

  std::vector<SpectrumLevel> levels;
  for (auto code : order) {
    if (levels.empty() || !same_energy(model, levels.back().energy, energies[code])) {
      levels.push_back({energies[code], {}, 0, {}});
    }
    levels.back().states.push_back(code);
  }
  for (auto& level : levels) {
    std::sort(level.states.begin(), level.states.end());
    for (auto code : level.states) {
      const auto a = Assignment::from_code(code, nv);
      if (is_oracle_valid(spec, a)) {
        ++level.valid_count;
        level.valid_by_output[to_bitstring(a.outputs(spec))].push_back(code);
      }
    }
  }
  return SpectrumReport(spec, std::move(levels));
}

/// Ground energy and complete ground set by exhaustive search. Works for any
/// model within the cap; keeps only the running minimum, not the spectrum.
inline ExactSolution solve_brute_force(const QuboModel& model, int cap = kDefaultEnumerationCap,
                                       unsigned threads = 0) {
  detail::check_cap(model, cap);
  const std::size_t nv = model.num_vars();
  const int high_bits = static_cast<int>(std::min<std::size_t>(nv, 6));
  struct Best {
    double energy = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, std::uint64_t>> states;
  };
  std::vector<Best> per_block(std::size_t{1} << high_bits);
  const double tol = model.integral() ? 0.0 : kEnergyTolerance;

  auto offer = [tol](Best& best, std::uint64_t code, double e) {
    if (e < best.energy - tol) {
      best.energy = e;
      std::erase_if(best.states, [&](const auto& s) { return s.first > e + tol; });
    } else if (e < best.energy) {
      best.energy = e;
    }
    if (e <= best.energy + tol) best.states.emplace_back(e, code);
  };

  detail::with_accumulator(model, [&](auto zero) {
    using Acc = decltype(zero);
    detail::for_each_block(nv, threads, [&](std::uint64_t block, int low_bits) {
      Best& best = per_block[block];
      detail::enumerate_block<Acc>(model, block, low_bits,
                                   [&](std::uint64_t code, double e) { offer(best, code, e); });
    });
    return 0;
  });

  Best merged;
  for (auto& b : per_block) {
    for (auto& [e, code] : b.states) offer(merged, code, e);
  }
  ExactSolution sol;
  sol.method = SolveMethod::kBruteForce;
  sol.ground_energy = merged.energy;
  std::vector<std::uint64_t> codes;
  for (auto& [e, code] : merged.states) {
    if (e <= merged.energy + tol) codes.push_back(code);
  }
  std::sort(codes.begin(), codes.end());
  for (auto code : codes) sol.ground_states.push_back(Assignment::from_code(code, nv));
  std::sort(sol.ground_states.begin(), sol.ground_states.end());
  return sol;
}

namespace detail {

// Gadgets (0-based) a variable participates in.
inline std::array<int, 2> gadgets_of(const OracleSpec& spec, std::size_t var) {
  const int n = spec.n();
  const int v = static_cast<int>(var);
  if (v < n) return {v - 1 >= 0 ? v - 1 : -1, v < n - 1 ? v : -1};
  if (v < 2 * n - 1) return {v - n, -1};
  return {v - (2 * n - 1), -1};
}

inline int shared_gadget(const OracleSpec& spec, std::size_t u, std::size_t v) {
  for (int gu : gadgets_of(spec, u)) {
    if (gu < 0) continue;
    for (int gv : gadgets_of(spec, v)) {
      if (gu == gv) return gu;
    }
  }
  return -1;
}

}  // namespace detail

/// Degeneracy of the ground level by the chain DP, without listing states.
/// Counts are exact up to 2^53.
struct ChainDpSummary {
  double ground_energy;
  double degeneracy;
};

namespace detail {

// Per-gadget local tables, frontier costs, and tie lists for the chain DP.
template <typename Acc>
struct ChainTables {
  // best[k][v][w]: min over (o_k, a_k) of the gadget-k terms with x_k = v, x_{k+1} = w.
  std::vector<std::array<std::array<Acc, 2>, 2>> best;
  // argmins[k][v][w]: all (o, a) pairs attaining best, encoded o | a << 1.
  std::vector<std::array<std::array<std::vector<int>, 2>, 2>> argmins;
  // frontier[k][w]: min energy of variables up to x_k given x_k = w.
  std::vector<std::array<Acc, 2>> frontier;
  // preds[k][w]: values v of x_{k-1} attaining frontier[k][w].
  std::vector<std::array<std::vector<int>, 2>> preds;
  std::vector<std::array<double, 2>> counts;
  Acc ground{};
  std::vector<int> ends;
  double degeneracy = 0.0;
};

template <typename Acc>
ChainTables<Acc> chain_tables(const QuboModel& model, const OracleSpec& spec) {
  const int n = spec.n();
  if (model.num_vars() != static_cast<std::size_t>(spec.total_vars())) {
    throw StructuralError("model has " + std::to_string(model.num_vars()) + " variables, chain layout for n = " +
                          std::to_string(n) + " needs " + std::to_string(spec.total_vars()));
  }
  const double tol = model.integral() ? 0.0 : kEnergyTolerance;
  auto eq = [tol](Acc a, Acc b) {
    if constexpr (std::is_integral_v<Acc>) {
      return a == b;
    } else {
      return std::abs(static_cast<double>(a - b)) <= tol;
    }
  };

  // Coupling slots per gadget: 0 xl-xr, 1 xl-o, 2 xr-o, 3 xl-a, 4 xr-a, 5 o-a.
  std::vector<std::array<Acc, 6>> j(static_cast<std::size_t>(n - 1), std::array<Acc, 6>{});
  for (const auto& c : model.quadratic()) {
    const int g = detail::shared_gadget(spec, c.i, c.j);
    if (g < 0) {
      throw StructuralError("coupling " + std::string(model.labels()[c.i]) + "-" + std::string(model.labels()[c.j]) +
                            " is not inside a single XOR gadget; model is not a chain");
    }
    const int gi = g + 1;
    auto role = [&](std::size_t v) {
      if (v == spec.x(gi)) return 0;
      if (v == spec.x(gi + 1)) return 1;
      if (v == spec.o(gi)) return 2;
      return 3;
    };
    static constexpr int slot[4][4] = {{-1, 0, 1, 3}, {0, -1, 2, 4}, {1, 2, -1, 5}, {3, 4, 5, -1}};
    j[static_cast<std::size_t>(g)][static_cast<std::size_t>(slot[role(c.i)][role(c.j)])] += static_cast<Acc>(c.value);
  }

  ChainTables<Acc> t;
  const auto gadgets = static_cast<std::size_t>(n - 1);
  t.best.resize(gadgets);
  t.argmins.resize(gadgets);
  for (std::size_t g = 0; g < gadgets; ++g) {
    const int gi = static_cast<int>(g) + 1;
    const auto lo = static_cast<Acc>(model.linear()[spec.o(gi)]);
    const auto la = static_cast<Acc>(model.linear()[spec.a(gi)]);
    const auto& c = j[g];
    for (int v = 0; v < 2; ++v) {
      for (int w = 0; w < 2; ++w) {
        std::array<Acc, 4> local{};
        for (int oa = 0; oa < 4; ++oa) {
          const int o = oa & 1, a = oa >> 1;
          local[static_cast<std::size_t>(oa)] = lo * o + la * a + c[0] * (v * w) + c[1] * (v * o) + c[2] * (w * o) +
                                                c[3] * (v * a) + c[4] * (w * a) + c[5] * (o * a);
        }
        const Acc m = *std::min_element(local.begin(), local.end());
        t.best[g][v][w] = m;
        for (int oa = 0; oa < 4; ++oa) {
          if (eq(local[static_cast<std::size_t>(oa)], m)) t.argmins[g][v][w].push_back(oa);
        }
      }
    }
  }

  t.frontier.resize(static_cast<std::size_t>(n));
  t.preds.resize(static_cast<std::size_t>(n));
  t.counts.resize(static_cast<std::size_t>(n));
  const auto offset = static_cast<Acc>(model.offset());
  for (int v = 0; v < 2; ++v) {
    t.frontier[0][v] = offset + static_cast<Acc>(model.linear()[spec.x(1)]) * v;
    t.counts[0][v] = 1.0;
  }
  for (std::size_t k = 1; k < static_cast<std::size_t>(n); ++k) {
    const auto lx = static_cast<Acc>(model.linear()[spec.x(static_cast<int>(k) + 1)]);
    for (int w = 0; w < 2; ++w) {
      const Acc via0 = t.frontier[k - 1][0] + t.best[k - 1][0][w];
      const Acc via1 = t.frontier[k - 1][1] + t.best[k - 1][1][w];
      const Acc m = std::min(via0, via1);
      t.frontier[k][w] = m + lx * w;
      double count = 0.0;
      for (int v = 0; v < 2; ++v) {
        if (eq(v == 0 ? via0 : via1, m)) {
          t.preds[k][w].push_back(v);
          count += t.counts[k - 1][v] * static_cast<double>(t.argmins[k - 1][v][w].size());
        }
      }
      t.counts[k][w] = count;
    }
  }
  const auto& last = t.frontier.back();
  t.ground = std::min(last[0], last[1]);
  for (int w = 0; w < 2; ++w) {
    if (eq(last[w], t.ground)) {
      t.ends.push_back(w);
      t.degeneracy += t.counts.back()[w];
    }
  }
  return t;
}

}  // namespace detail

inline ChainDpSummary chain_dp_summary(const QuboModel& model, const OracleSpec& spec) {
  return detail::with_accumulator(model, [&](auto zero) {
    auto t = detail::chain_tables<decltype(zero)>(model, spec);
    return ChainDpSummary{static_cast<double>(t.ground), t.degeneracy};
  });
}

/// Exact ground energy and the complete ground set in O(n) plus output size.
///
/// Sweeps the chain left to right with x_k as the frontier state: each gadget
/// is minimized over (o_k, a_k) for every (x_k, x_{k+1}), and all tying
/// choices are kept so backtracking lists every ground state. Throws
/// StructuralError for couplings that cross gadgets and CapExceededError
/// when the ground set has more than max_states members.
inline ExactSolution solve_chain_dp(const QuboModel& model, const OracleSpec& spec,
                                    std::size_t max_states = kDefaultMaxGroundStates) {
  return detail::with_accumulator(model, [&](auto zero) {
    using Acc = decltype(zero);
    const auto t = detail::chain_tables<Acc>(model, spec);
    if (t.degeneracy > static_cast<double>(max_states)) {
      throw CapExceededError("ground level has " + std::to_string(t.degeneracy) + " states, more than the limit of " +
                             std::to_string(max_states));
    }
    const int n = spec.n();
    std::vector<Assignment> states;
    BitVector bits(static_cast<std::size_t>(spec.total_vars()), 0);

    // Assign x_k = w, then choose x_{k-1} and gadget k-1's (o, a).
    auto descend = [&](auto&& self, int k, int w) -> void {
      bits[spec.x(k + 1)] = static_cast<std::uint8_t>(w);
      if (k == 0) {
        states.emplace_back(bits);
        return;
      }
      for (int v : t.preds[static_cast<std::size_t>(k)][w]) {
        for (int oa : t.argmins[static_cast<std::size_t>(k - 1)][v][w]) {
          bits[spec.o(k)] = static_cast<std::uint8_t>(oa & 1);
          bits[spec.a(k)] = static_cast<std::uint8_t>(oa >> 1);
          self(self, k - 1, v);
        }
      }
    };
    for (int w : t.ends) descend(descend, n - 1, w);

    std::sort(states.begin(), states.end());
    ExactSolution sol;
    sol.method = SolveMethod::kChainDp;
    sol.ground_energy = static_cast<double>(t.ground);
    sol.ground_states = std::move(states);
    return sol;
  });
}

/// All 16 rows of the single XOR gadget: zero energy exactly on rows with
/// o = x1 XOR x2 and a = x1 AND x2, strictly positive everywhere else.
inline bool verify_gadget_truth_table() {
  const OracleSpec spec(2);
  const auto model = build_qubo(spec, PenaltyConfig::zero(spec));
  for (int row = 0; row < 16; ++row) {
    const int x1 = (row >> 3) & 1, x2 = (row >> 2) & 1, o = (row >> 1) & 1, a = row & 1;
    const Assignment s{x1, x2, o, a};
    const double e = energy(model, s);
    const bool valid = o == (x1 ^ x2) && a == (x1 & x2);
    if (valid ? e != 0.0 : !(e > 0.0)) return false;
  }
  return true;
}

}  // namespace simon_qubo
