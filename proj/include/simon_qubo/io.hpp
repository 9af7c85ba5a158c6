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

// JSON and CSV surfaces: QUBO models, spectra, sample sets, experiment rows,
// fit summaries, and benchmark timings.

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "simon_qubo/analysis.hpp"
#include "simon_qubo/errors.hpp"
#include "simon_qubo/exact_solvers.hpp"
#include "simon_qubo/oracle_qubo.hpp"
#include "simon_qubo/sampler.hpp"

namespace simon_qubo {

using json = nlohmann::json;

// Integral values become JSON integers so integer models round-trip
// bit-exactly; others use the shortest representation that parses back.
inline json number_json(double v) {
  if (std::isfinite(v) && v == std::trunc(v) && std::abs(v) < 0x1p53) return static_cast<std::int64_t>(v);
  return v;
}

// Shortest round-trip decimal text.
inline std::string format_number(double v) {
  if (std::isfinite(v) && v == std::trunc(v) && std::abs(v) < 0x1p53) {
    return std::to_string(static_cast<std::int64_t>(v));
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline json qubo_to_json(const QuboModel& model, const json& meta = nullptr) {
  json j;
  if (!meta.is_null()) j["meta"] = meta;
  if (model.oracle_n()) j["n"] = *model.oracle_n();
  j["penalties"] = json::array();
  for (double p : model.penalties()) j["penalties"].push_back(number_json(p));
  j["labels"] = json::array();
  for (const auto& l : model.labels()) j["labels"].push_back(l);
  j["linear"] = json::object();
  for (std::size_t k = 0; k < model.num_vars(); ++k) j["linear"][model.labels()[k]] = number_json(model.linear()[k]);
  j["quadratic"] = json::array();
  for (const auto& c : model.quadratic()) {
    j["quadratic"].push_back({model.labels()[c.i], model.labels()[c.j], number_json(c.value)});
  }
  j["offset"] = number_json(model.offset());
  return j;
}

inline QuboModel qubo_from_json(const json& j) {
  try {
    std::vector<std::string> labels = j.at("labels").get<std::vector<std::string>>();
    std::map<std::string, std::size_t, std::less<>> index;
    for (std::size_t k = 0; k < labels.size(); ++k) index.emplace(labels[k], k);
    auto lookup = [&](const std::string& l) {
      auto it = index.find(l);
      if (it == index.end()) throw IoError("QUBO JSON references unknown label '" + l + "'");
      return it->second;
    };
    std::vector<double> linear(labels.size(), 0.0);
    for (const auto& [label, value] : j.at("linear").items()) linear[lookup(label)] = value.get<double>();
    std::vector<Coupling> quadratic;
    for (const auto& entry : j.at("quadratic")) {
      if (!entry.is_array() || entry.size() != 3) throw IoError("quadratic entries must be [label, label, value]");
      quadratic.push_back({lookup(entry[0].get<std::string>()), lookup(entry[1].get<std::string>()),
                           entry[2].get<double>()});
    }
    std::optional<int> n;
    if (j.contains("n") && !j["n"].is_null()) n = j["n"].get<int>();
    std::vector<double> penalties;
    if (j.contains("penalties")) penalties = j["penalties"].get<std::vector<double>>();
    const double offset = j.value("offset", 0.0);
    return QuboModel(std::move(labels), std::move(linear), std::move(quadratic), offset, n, std::move(penalties));
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed QUBO JSON: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw IoError("failed writing '" + path + "'");
}

inline QuboModel load_qubo(const std::string& path) {
  const auto text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError("'" + path + "' is not valid JSON: " + e.what());
  }
  return qubo_from_json(j);
}

inline json spectrum_to_json(const SpectrumReport& report, const json& meta = nullptr) {
  const auto& spec = report.spec();
  json j;
  if (!meta.is_null()) j["meta"] = meta;
  j["n"] = spec.n();
  j["total_states"] = report.total_states();
  j["levels"] = json::array();
  for (const auto& level : report.levels()) {
    json l;
    l["energy"] = number_json(level.energy);
    l["count"] = level.states.size();
    l["valid_count"] = level.valid_count;
    l["states"] = json::array();
    for (auto code : level.states) {
      const auto a = report.assignment(code);
      const bool valid = is_oracle_valid(spec, a);
      l["states"].push_back({{"bits", a.str()}, {"valid", valid}, {"output", to_bitstring(a.outputs(spec))}});
    }
    l["valid_by_output"] = json::object();
    for (const auto& [output, codes] : level.valid_by_output) {
      auto& arr = l["valid_by_output"][output] = json::array();
      for (auto code : codes) arr.push_back(report.assignment(code).str());
    }
    j["levels"].push_back(std::move(l));
  }
  return j;
}

inline std::string spectrum_to_csv(const SpectrumReport& report, const std::string& header = {}) {
  std::ostringstream out;
  if (!header.empty()) out << "# " << header << '\n';
  out << "energy,count,valid_count\n";
  for (const auto& level : report.levels()) {
    out << format_number(level.energy) << ',' << level.states.size() << ',' << level.valid_count << '\n';
  }
  return out.str();
}

inline json sampleset_to_json(const SampleSet& s, const json& meta = nullptr) {
  json j;
  if (!meta.is_null()) j["meta"] = meta;
  j["shots"] = s.shots;
  j["master_seed"] = s.master_seed;
  j["records"] = json::array();
  for (const auto& r : s.records) {
    j["records"].push_back({{"bits", r.assignment.str()}, {"energy", number_json(r.energy)}, {"count", r.count}});
  }
  return j;
}

inline std::string sampleset_to_csv(const SampleSet& s, const std::string& header = {}) {
  std::ostringstream out;
  if (!header.empty()) out << "# " << header << '\n';
  out << "bitstring,energy,count\n";
  for (const auto& r : s.records) out << r.assignment.str() << ',' << format_number(r.energy) << ',' << r.count << '\n';
  return out.str();
}

inline std::string experiment_rows_to_csv(const std::vector<ExperimentRow>& rows, bool record_time = true,
                                          const std::string& header = {}) {
  std::ostringstream out;
  if (!header.empty()) out << "# " << header << '\n';
  out << "n,scheme,p_z,p_zp,both_seen,shots,wall_time_s\n";
  for (const auto& r : rows) {
    out << r.n << ',' << to_string(r.scheme) << ',' << format_number(r.p_z) << ',' << format_number(r.p_z_prime)
        << ',' << (r.both_seen ? 1 : 0) << ',' << r.shots << ',' << format_number(record_time ? r.wall_time_s : 0.0)
        << '\n';
  }
  return out.str();
}

inline json fit_to_json(const FitResult& f) {
  json j{{"model", std::string(to_string(f.model))},
         {"params", {{"amplitude", f.amplitude}, {"rate", f.rate}}},
         {"r_squared", f.r_squared},
         {"points", f.points}};
  if (auto w = f.width()) j["params"]["width"] = *w;
  return j;
}

inline std::string bench_rows_to_csv(const std::vector<BenchRow>& rows, const std::string& header = {}) {
  std::ostringstream out;
  if (!header.empty()) out << "# " << header << '\n';
  out << "n,solver_tag,median_wall_time\n";
  for (const auto& r : rows) out << r.n << ',' << to_string(r.solver) << ',' << format_number(r.median_wall_time_s) << '\n';
  return out.str();
}

}  // namespace simon_qubo
