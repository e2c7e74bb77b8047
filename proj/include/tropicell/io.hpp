#pragma once

#include "tropicell/arith.hpp"
#include "tropicell/errors.hpp"
#include "tropicell/homotopy.hpp"
#include "tropicell/mixed_cell.hpp"
#include "tropicell/solver.hpp"
#include "tropicell/strategies.hpp"
#include "tropicell/support_config.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tropicell {

using Json = nlohmann::ordered_json;

struct Input {
  SupportTuple tuple;
  std::optional<LiftVector> lifts;
};

inline auto parse_input(const Json &j) -> Input {
  try {
    if (!j.is_object()) fail(Errc::ParseError, "input must be a JSON object");
    if (!j.contains("supports")) fail(Errc::ParseError, "missing \"supports\"");
    auto raw = j.at("supports").get<std::vector<std::vector<std::vector<std::int64_t>>>>();
    if (j.contains("n")) {
      auto n = j.at("n").get<std::int64_t>();
      if (n < 1 || static_cast<std::size_t>(n) != raw.size())
        fail(Errc::DimensionMismatch, "\"n\" must equal the number of supports");
    }
    Input in{new_support_tuple(raw), std::nullopt};
    if (j.contains("lifts")) {
      std::vector<std::vector<Rational>> per;
      for (const auto &cfg : j.at("lifts")) {
        std::vector<Rational> v;
        for (const auto &q : cfg) {
          if (q.is_number_integer()) v.emplace_back(q.get<std::int64_t>());
          else if (q.is_string()) v.push_back(parse_rational(q.get<std::string>()));
          else fail(Errc::ParseError, "lifts must be integers or \"p/q\" strings");
        }
        per.push_back(std::move(v));
      }
      in.lifts = lift_for(in.tuple, per);
    }
    return in;
  } catch (const Json::exception &e) {
    fail(Errc::ParseError, std::string("malformed input: ") + e.what());
  }
}

inline auto parse_input(const std::string &text) -> Input {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception &e) {
    fail(Errc::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return parse_input(j);
}

inline auto tuple_to_json(const SupportTuple &t) -> Json {
  Json j;
  j["n"] = t.n();
  j["supports"] = t.raw();
  return j;
}

/// Integers that may exceed 64 bits are written as numbers when they fit and
/// as decimal strings otherwise.
inline auto big_to_json(const BigInt &v) -> Json {
  if (fits_int64(v)) return static_cast<std::int64_t>(v);
  return v.str();
}

inline auto big_from_json(const Json &j) -> BigInt {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  return BigInt(j.get<std::string>());
}

struct RunReport {
  std::string command;
  std::string strategy;
  std::uint64_t threads{1};
  BigInt mixed_volume;
  std::optional<std::vector<CellVolume>> cells;
  std::optional<std::vector<SolutionPoint>> solutions;
  HomotopyStats stats;
  std::uint64_t wall_time_us{0};
  std::vector<std::string> warnings;
};

inline auto stats_to_json(const HomotopyStats &s) -> Json {
  Json j;
  j["wall_crossings"] = s.wall_crossings;
  j["circuits"] = s.circuits;
  j["float_fallbacks"] = s.float_fallbacks;
  j["wide_circuits"] = s.wide_circuits;
  j["leaves"] = s.leaves;
  j["nodes"] = s.nodes;
  j["dropped"] = s.dropped;
  j["duplicate_insertions"] = s.duplicate_insertions;
  j["max_depth"] = s.max_depth;
  return j;
}

inline auto stats_from_json(const Json &j) -> HomotopyStats {
  HomotopyStats s;
  s.wall_crossings = j.at("wall_crossings").get<std::uint64_t>();
  s.circuits = j.at("circuits").get<std::uint64_t>();
  s.float_fallbacks = j.at("float_fallbacks").get<std::uint64_t>();
  s.wide_circuits = j.value("wide_circuits", std::uint64_t{0});
  s.leaves = j.at("leaves").get<std::uint64_t>();
  s.nodes = j.at("nodes").get<std::uint64_t>();
  s.dropped = j.at("dropped").get<std::uint64_t>();
  s.duplicate_insertions = j.at("duplicate_insertions").get<std::uint64_t>();
  s.max_depth = j.at("max_depth").get<std::uint64_t>();
  return s;
}

/// Cell as 1-based pairs.
inline auto cell_to_json(const MixedCell &c) -> Json {
  Json j = Json::array();
  for (auto [a, b] : c.pairs()) j.push_back({a + 1, b + 1});
  return j;
}

inline auto cell_from_json(const Json &j) -> MixedCell {
  std::vector<MixedCell::Pair> pairs;
  for (const auto &p : j)
    pairs.emplace_back(p.at(0).get<ColumnIndex>() - 1, p.at(1).get<ColumnIndex>() - 1);
  return MixedCell(std::move(pairs));
}

inline auto report_to_json(const RunReport &r) -> Json {
  Json j;
  j["command"] = r.command;
  j["strategy"] = r.strategy;
  j["threads"] = r.threads;
  j["mixed_volume"] = big_to_json(r.mixed_volume);
  if (r.cells) {
    Json cells = Json::array();
    for (const auto &c : *r.cells)
      cells.push_back(Json{{"cell", cell_to_json(c.cell)}, {"volume", c.volume}});
    j["cells"] = std::move(cells);
  }
  if (r.solutions) {
    Json sols = Json::array();
    for (const auto &p : *r.solutions) {
      Json pt = Json::array();
      for (const auto &q : p.coords) pt.push_back(format_rational(q));
      sols.push_back(Json{{"point", std::move(pt)}, {"multiplicity", p.multiplicity}});
    }
    j["solutions"] = std::move(sols);
  }
  j["stats"] = stats_to_json(r.stats);
  j["wall_time_us"] = r.wall_time_us;
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  return j;
}

inline auto report_from_json(const Json &j) -> RunReport {
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.strategy = j.at("strategy").get<std::string>();
  r.threads = j.at("threads").get<std::uint64_t>();
  r.mixed_volume = big_from_json(j.at("mixed_volume"));
  if (j.contains("cells")) {
    r.cells.emplace();
    for (const auto &c : j.at("cells"))
      r.cells->push_back({cell_from_json(c.at("cell")), c.at("volume").get<std::int64_t>()});
  }
  if (j.contains("solutions")) {
    r.solutions.emplace();
    for (const auto &s : j.at("solutions")) {
      SolutionPoint p;
      for (const auto &q : s.at("point")) p.coords.push_back(parse_rational(q.get<std::string>()));
      p.multiplicity = s.at("multiplicity").get<std::int64_t>();
      r.solutions->push_back(std::move(p));
    }
  }
  r.stats = stats_from_json(j.at("stats"));
  r.wall_time_us = j.at("wall_time_us").get<std::uint64_t>();
  if (j.contains("warnings")) r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

} // namespace tropicell
