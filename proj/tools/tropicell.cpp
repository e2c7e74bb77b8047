#include "tropicell/tropicell.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

using namespace tropicell;

namespace {

struct Common {
  std::string file;
  std::string strategy = "regeneration";
  std::size_t threads = 1;
  bool json = false;
  bool oracle = false;
};

auto read_text(const std::string &path) -> std::string {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream f(path);
  if (!f) fail(Errc::InvalidInput, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

auto default_threads() -> std::size_t {
  if (const char *env = std::getenv("TROPICELL_THREADS")) {
    try {
      auto v = std::stoul(env);
      if (v >= 1) return v;
    } catch (const std::exception &) {
    }
  }
  return 1;
}

auto elapsed_us(std::chrono::steady_clock::time_point t0) -> std::uint64_t {
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::microseconds>(
                                      std::chrono::steady_clock::now() - t0)
                                      .count());
}

void print_human(const RunReport &r) {
  std::cout << "mixed volume: " << r.mixed_volume.str() << "\n";
  if (r.cells) {
    std::cout << "cells: " << r.cells->size() << "\n";
    for (const auto &c : *r.cells)
      std::cout << "  " << c.cell.to_string() << "  volume " << c.volume << "\n";
  }
  if (r.solutions) {
    std::cout << "solutions: " << r.solutions->size() << "\n";
    for (const auto &p : *r.solutions) {
      std::cout << "  (";
      for (std::size_t k = 0; k < p.coords.size(); ++k)
        std::cout << (k ? ", " : "") << format_rational(p.coords[k]);
      std::cout << ")  multiplicity " << p.multiplicity << "\n";
    }
  }
  for (const auto &w : r.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "walls crossed: " << r.stats.wall_crossings
            << ", circuits: " << r.stats.circuits
            << ", float fallbacks: " << r.stats.float_fallbacks
            << ", wide circuits: " << r.stats.wide_circuits << "\n";
  std::cout << "wall time: " << r.wall_time_us << " us\n";
}

void emit(const RunReport &r, bool json) {
  if (json) std::cout << report_to_json(r).dump(2) << "\n";
  else print_human(r);
}

// Compares a cell set against the brute-force oracle; returns false on mismatch.
auto oracle_agrees(const SupportTuple &t, const MixedCellsResult &res, std::ostream &log,
                   const LiftVector *lift = nullptr) -> bool {
  bool ok = true;
  auto order = lift ? refine_by(*lift, lex_order(t.m())) : lex_order(t.m());
  auto brute = oracle::brute_mixed_cells(t, order);
  std::set<MixedCell> mine;
  for (const auto &c : res.cells) mine.insert(c.cell);
  if (brute != mine) {
    log << "oracle: cell sets differ (" << mine.size() << " vs " << brute.size() << ")\n";
    ok = false;
  }
  if (t.n() <= 3) {
    auto mv = oracle::incl_excl_mixed_volume(t);
    if (mv != res.mixed_volume) {
      log << "oracle: mixed volume " << res.mixed_volume.str() << " vs " << mv.str()
          << "\n";
      ok = false;
    }
  }
  if (t.n() <= 15 && oracle::rado_zero_check(t) != (res.mixed_volume == 0)) {
    log << "oracle: zero test disagrees\n";
    ok = false;
  }
  return ok;
}

auto run_cells(const Common &c, bool with_cells) -> int {
  auto t0 = std::chrono::steady_clock::now();
  auto in = parse_input(read_text(c.file));
  RunOptions opt;
  opt.strategy = parse_strategy(c.strategy);
  opt.threads = c.threads;
  auto res = compute_mixed_cells(in.tuple, opt, in.lifts ? &*in.lifts : nullptr);
  RunReport r;
  r.command = with_cells ? "mixed-cells" : "mixed-volume";
  r.strategy = c.strategy;
  r.threads = c.threads;
  r.mixed_volume = res.mixed_volume;
  if (with_cells) r.cells = res.cells;
  r.stats = res.stats;
  bool ok = true;
  if (c.oracle)
    ok = oracle_agrees(in.tuple, res, std::cerr, in.lifts ? &*in.lifts : nullptr);
  r.wall_time_us = elapsed_us(t0);
  emit(r, c.json);
  return ok ? 0 : 2;
}

auto run_solve(const Common &c) -> int {
  auto t0 = std::chrono::steady_clock::now();
  auto in = parse_input(read_text(c.file));
  if (!in.lifts) fail(Errc::InvalidInput, "solve needs \"lifts\" in the input");
  RunOptions opt;
  opt.strategy = parse_strategy(c.strategy);
  opt.threads = c.threads;
  auto res = solve_superset(in.tuple, *in.lifts, opt);
  RunReport r;
  r.command = "solve";
  r.strategy = c.strategy;
  r.threads = c.threads;
  for (const auto &p : res.points) r.mixed_volume += p.multiplicity;
  r.solutions = res.points;
  r.stats = res.stats;
  r.warnings.push_back("points are not certified to be isolated");
  r.wall_time_us = elapsed_us(t0);
  emit(r, c.json);
  return 0;
}

auto run_bench(const std::string &family, std::size_t n, const Common &c) -> int {
  auto t = generate({family, n});
  auto t0 = std::chrono::steady_clock::now();
  RunOptions opt;
  opt.strategy = parse_strategy(c.strategy);
  opt.threads = c.threads;
  auto res = compute_mixed_cells(t, opt);
  RunReport r;
  r.command = "bench " + family + "-" + std::to_string(n);
  r.strategy = c.strategy;
  r.threads = c.threads;
  r.mixed_volume = res.mixed_volume;
  r.stats = res.stats;
  r.wall_time_us = elapsed_us(t0);
  emit(r, c.json);
  return 0;
}

auto run_gen(const std::string &family, std::size_t n, const std::string &out) -> int {
  auto text = tuple_to_json(generate({family, n})).dump() + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out);
  if (!f) fail(Errc::InvalidInput, "cannot write '" + out + "'");
  f << text;
  return 0;
}

auto run_check(const std::string &file, std::uint64_t seeds, std::size_t threads) -> int {
  std::size_t failures = 0;
  auto check_one = [&](const SupportTuple &t, const std::string &label) {
    std::ostringstream log;
    bool ok = true;
    RunOptions opt;
    opt.threads = threads;
    auto regen = compute_mixed_cells(t, opt);
    ok = oracle_agrees(t, regen, log) && ok;
    opt.strategy = StrategyKind::TotalDegree;
    bool degree_ok = true;
    for (std::size_t i = 0; i < t.n(); ++i)
      degree_ok = degree_ok && degree(t.config(i)) >= 1;
    if (degree_ok) {
      auto td = compute_mixed_cells(t, opt);
      if (td.cells != regen.cells) {
        log << "strategies disagree\n";
        ok = false;
      }
    }
    if (!ok) {
      ++failures;
      std::cout << "FAIL " << label << "\n" << log.str();
    }
  };
  if (!file.empty()) check_one(parse_input(read_text(file)).tuple, file);
  for (std::uint64_t s = 0; s < seeds; ++s) {
    std::mt19937_64 rng(s);
    check_one(oracle::random_tuple(rng), "seed " + std::to_string(s));
  }
  std::cout << (failures ? "FAILED " : "ok ") << failures << " mismatches in "
            << seeds + (file.empty() ? 0 : 1) << " instances\n";
  return failures ? 2 : 0;
}

} // namespace

auto main(int argc, char **argv) -> int {
  CLI::App app{"Mixed cells, mixed volumes and tropical solutions by tropical homotopy"};
  app.require_subcommand(1);

  Common c;
  c.threads = default_threads();
  auto add_common = [&](CLI::App *sub, bool file) {
    if (file) sub->add_option("file", c.file, "input JSON ('-' for stdin)")->required();
    sub->add_option("--strategy", c.strategy, "regeneration or total-degree")
      ->check(CLI::IsMember({"regeneration", "total-degree"}));
    sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--json", c.json, "print a JSON report");
  };

  auto *mv = app.add_subcommand("mixed-volume", "compute the mixed volume");
  add_common(mv, true);
  mv->add_flag("--oracle", c.oracle, "cross-check against brute force");
  auto *mc = app.add_subcommand("mixed-cells", "list the mixed cells");
  add_common(mc, true);
  mc->add_flag("--oracle", c.oracle, "cross-check against brute force");
  auto *so = app.add_subcommand("solve", "tropical solutions for the given lifts");
  add_common(so, true);

  std::string family;
  std::size_t size = 0;
  auto *be = app.add_subcommand("bench", "run a benchmark family");
  add_common(be, false);
  be->add_option("--family", family)->required();
  be->add_option("--n", size)->required();

  std::string out;
  std::size_t gen_n = 0;
  std::string gen_family;
  auto *ge = app.add_subcommand("gen", "write a benchmark family as input JSON");
  ge->add_option("--family", gen_family)->required();
  ge->add_option("--n", gen_n)->required();
  ge->add_option("-o", out, "output file");

  std::string check_file;
  std::uint64_t seeds = 50;
  auto *ch = app.add_subcommand("check", "compare the pipeline with brute force");
  ch->add_option("file", check_file, "optional input JSON");
  ch->add_option("--seeds", seeds, "number of random instances");
  ch->add_option("--threads", c.threads)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*mv) return run_cells(c, false);
    if (*mc) return run_cells(c, true);
    if (*so) return run_solve(c);
    if (*be) return run_bench(family, size, c);
    if (*ge) return run_gen(gen_family, gen_n, out);
    if (*ch) return run_check(check_file, seeds, c.threads);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.internal() ? 2 : 1;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
