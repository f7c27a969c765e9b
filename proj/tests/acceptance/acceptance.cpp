// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fixtures.hpp"
#include "ioselect/graph_core.hpp"
#include "ioselect/matching.hpp"
#include "ioselect/oracle_bench.hpp"
#include "ioselect/selector.hpp"
#include "ioselect/set_cover.hpp"
#include "oracles.hpp"

using namespace ioselect;
using namespace ioselect::fixture;

namespace {

// Pinned limits.
constexpr double kLimitC1 = 1.0;
constexpr double kLimitC2 = 60.0;
constexpr double kLimitC3 = 120.0;
constexpr double kLimitC4 = 60.0;
constexpr double kLimitC5 = 60.0;
constexpr double kLimitC6 = 120.0;
constexpr double kLimitC10Select = 10.0;
constexpr double kMaxGrowthExponent = 3.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = seconds_since(t0);
  if (limit_s > 0 && elapsed > limit_s) {
    o.pass = false;
    o.detail += " (over the " + std::to_string(static_cast<int>(limit_s)) + " s limit)";
  }
  if (!o.pass) ++failures;
  std::printf("%s  C%-2d %-40s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), elapsed);
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<std::vector<int>> states_of(const SccDecomposition& d, const std::vector<int>& ids) {
  std::vector<std::vector<int>> out;
  for (int c : ids) out.push_back(d.components[static_cast<std::size_t>(c)].states);
  return out;
}

WeightedSetCoverInstance random_wsc(std::mt19937_64& rng, int max_n, int max_r) {
  WeightedSetCoverInstance inst;
  inst.universe_size = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_n));
  const int r = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_r));
  const double density = 0.15 + 0.1 * static_cast<double>(rng() % 5);
  for (int i = 0; i < r; ++i) {
    std::vector<int> s;
    for (int e = 0; e < inst.universe_size; ++e) {
      if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < density) s.push_back(e);
    }
    inst.sets.push_back(s);
    inst.weights.push_back(Cost::from_units(static_cast<std::int64_t>(rng() % 20) * 250'000));
  }
  return inst;
}

// Feasible random system with n <= max_n and the given io sizes.
StructuredSystem feasible_system(std::uint64_t seed, int n, int m, int p, StateStructure st = StateStructure::kRandom,
                                 TimeMode mode = TimeMode::kContinuous) {
  GeneratorConfig c = small_config(seed, n, m, p);
  c.state_density = 0.15 + 0.05 * static_cast<double>(seed % 5);
  c.input_density = c.output_density = 0.25 + 0.05 * static_cast<double>(seed % 4);
  c.cost_decimals = static_cast<int>(seed % 3);
  c.state_structure = st;
  c.mode = mode;
  return generate(c);
}

// weight <= H(d) * opt, in exact arithmetic.
bool within_harmonic(Cost greedy, Cost opt, int d) {
  std::int64_t l = 1;
  for (int i = 1; i <= d; ++i) l = std::lcm(l, static_cast<std::int64_t>(i));
  std::int64_t h_num = 0;  // H(d) * l
  for (int i = 1; i <= d; ++i) h_num += l / i;
  return static_cast<__int128>(greedy.units()) * l <= static_cast<__int128>(opt.units()) * h_num;
}

}  // namespace

int main() {
  std::printf("ioselect acceptance suite\n");

  report(1, "FIG1 structural facts", kLimitC1, [] {
    const auto s = fig1();
    const auto d = decompose_sccs(build_state_digraph(s));
    const auto t = coverage(s, d);
    std::vector<int> mu, eta;
    for (const auto& c : t.input_covers) mu.push_back(static_cast<int>(c.size()));
    for (const auto& c : t.output_covers) eta.push_back(static_cast<int>(c.size()));
    const bool ok = states_of(d, d.non_top) == std::vector<std::vector<int>>{{1}, {3}} &&
                    states_of(d, d.non_bottom) == std::vector<std::vector<int>>{{2}} &&
                    mu == std::vector<int>{0, 1, 2} && eta == std::vector<int>{1, 0} && t.mu_max == 2 &&
                    t.eta_max == 1;
    return Outcome{ok, fmt("non-top {x2},{x4}; non-bottom {x3}; mu=(%d,%d,%d) eta=(%d,%d)", mu[0], mu[1], mu[2],
                           eta[0], eta[1])};
  });

  report(2, "perfect matching <=> disjoint cycles", kLimitC2, [] {
    int systems = 0, checks = 0, disagree = 0;
    for (std::uint64_t seed = 0; systems < 500; ++seed) {
      GeneratorConfig c = small_config(1'000 + seed, 1 + static_cast<int>(seed % 6), static_cast<int>(seed % 4),
                                       static_cast<int>((seed / 4) % 4), false);
      c.state_density = 0.1 + 0.1 * static_cast<double>(seed % 5);
      const auto s = generate(c);
      for (const auto& x : oracle::all_selections(s)) {
        const bool pm = has_perfect_matching(build_bipartite(restrict_to(s, x)));
        disagree += pm != oracle::cycle_family_exists(s, x);
        ++checks;
      }
      ++systems;
    }
    return Outcome{disagree == 0, fmt("%d systems, %d selections, %d disagreements", systems, checks, disagree)};
  });

  report(3, "min-cost matching = min cycle cost", kLimitC3, [] {
    int systems = 0, mismatch = 0;
    for (std::uint64_t seed = 0; systems < 200; ++seed) {
      const int m = 1 + static_cast<int>(seed % 4);
      const int p = 1 + static_cast<int>((seed / 4) % 4);
      const auto s = feasible_system(2'000 + seed, 1 + static_cast<int>(seed % 6), m, p);
      const auto cstar = min_cost_perfect_matching(build_bipartite(s)).total_cost;
      const auto want = oracle::min_cycle_selection_cost(s);
      mismatch += !want || *want != cstar;
      ++systems;
    }
    return Outcome{mismatch == 0, fmt("%d feasible systems (m+p<=8), %d mismatches", systems, mismatch)};
  });

  report(4, "set cover reductions round trip", kLimitC4, [] {
    std::mt19937_64 rng(4);
    int instances = 0, bad = 0;
    // WSC -> system -> WSC
    while (instances < 200) {
      const auto inst = random_wsc(rng, 8, 8);
      const auto sys = reduce_wsc_to_accessibility(inst);
      bad += inst.feasible() != oracle::accessible(sys, Selection::all(sys));
      for (const auto& x : oracle::all_selections(sys)) {
        const bool covers = covers_universe(inst, x.inputs);
        bad += covers != oracle::accessible(sys, x);
        if (covers) bad += selection_to_cover(inst, x).weight != selection_cost(sys, x);
      }
      if (inst.feasible()) {
        const auto best = oracle::cheapest(sys, [&](const Selection& x) { return oracle::accessible(sys, x); });
        const auto opt = exact_solve(inst);
        bad += !best || best->second != opt.weight;
        bad += exact_solve(reduce_accessibility_to_wsc(sys).instance).weight != opt.weight;
        bad += selection_cost(sys, cover_to_selection(opt)) != opt.weight;
      }
      ++instances;
    }
    // system -> WSC
    int systems = 0;
    for (std::uint64_t seed = 0; systems < 200; ++seed) {
      GeneratorConfig c = small_config(4'000 + seed, 1 + static_cast<int>(seed % 8), 1 + static_cast<int>(seed % 8), 0, false);
      const auto s = generate(c);
      const auto red = reduce_accessibility_to_wsc(s);
      bad += red.instance.feasible() != oracle::accessible(s, Selection::all(s));
      if (red.instance.feasible()) {
        const auto opt = exact_solve(red.instance);
        const auto best = oracle::cheapest(s, [&](const Selection& x) { return oracle::accessible(s, x); });
        bad += !best || best->second != opt.weight;
        const auto sel = cover_to_selection(opt);
        bad += !oracle::accessible(s, sel) || selection_cost(s, sel) != opt.weight;
      }
      ++systems;
    }
    return Outcome{bad == 0, fmt("%d instances + %d systems (N,r<=8), %d violations", instances, systems, bad)};
  });

  report(5, "greedy <= H(d) * optimum", kLimitC5, [] {
    std::mt19937_64 rng(5);
    int tested = 0, violations = 0;
    double worst = 1.0;
    while (tested < 1000) {
      const auto inst = random_wsc(rng, 12, 14);
      if (!inst.feasible()) continue;
      const auto g = greedy_solve(inst);
      const auto e = exact_solve(inst);
      violations += !within_harmonic(g.weight, e.weight, inst.max_set_size());
      if (e.weight > Cost{}) worst = std::max(worst, g.weight.to_double() / e.weight.to_double());
      ++tested;
    }
    return Outcome{violations == 0, fmt("%d instances, %d violations, worst ratio %.3f", tested, violations, worst)};
  });

  report(6, "selection is always feasible", kLimitC6, [] {
    int systems = 0, violations = 0;
    for (std::uint64_t seed = 0; systems < 600; ++seed) {
      const auto mode = seed % 6 == 0 ? TimeMode::kDiscrete : TimeMode::kContinuous;
      const auto s = feasible_system(6'000 + seed, 1 + static_cast<int>(seed % 8), 1 + static_cast<int>(seed % 4),
                                     1 + static_cast<int>((seed / 4) % 4), StateStructure::kRandom, mode);
      const auto r = select_min_cost_io(s);
      violations += !r.no_sfm || check_no_sfm(s, r.selection) != SfmStatus::kNoSfm || !oracle::no_sfm(s, r.selection);
      ++systems;
    }
    return Outcome{violations == 0, fmt("%d feasible systems, %d infeasible outputs", systems, violations)};
  });

  report(7, "p* >= exact covers and p* >= c*", 0, [] {
    int systems = 0, violations = 0;
    for (std::uint64_t seed = 0; systems < 250; ++seed) {
      const auto s = feasible_system(7'000 + seed, 1 + static_cast<int>(seed % 7), 1 + static_cast<int>(seed % 4),
                                     1 + static_cast<int>((seed / 4) % 4));
      SelectOptions o;
      o.exact_set_cover = true;
      const auto r = select_min_cost_io(s, o);
      const auto p = exact_select(s);
      const auto independent = oracle::problem_one(s);
      violations += !independent || independent->second != p.cost;
      violations += p.cost < r.exact_accessibility->weight + r.exact_sensability->weight;
      violations += p.cost < r.cycle->cost;
      violations += r.lower_bound > p.cost || p.cost > r.total_cost;
      ++systems;
    }
    return Outcome{violations == 0, fmt("%d systems with oracle, %d violations", systems, violations)};
  });

  report(8, "FIG1 end to end", 0, [] {
    const auto s = fig1();
    const auto r = select_min_cost_io(s);
    const auto p = exact_select(s);
    const bool exact_ratio = r.total_cost.units() * 2 == p.cost.units() * 3;
    const bool ok = r.total_cost == cost("3") && p.cost == cost("2") && p.selection == sel({3}, {1}) && exact_ratio;
    return Outcome{ok, fmt("algorithm %s, p* %s at ({3},{1}), ratio %.2f", r.total_cost.to_string().c_str(),
                           p.cost.to_string().c_str(), r.total_cost.to_double() / p.cost.to_double())};
  });

  report(9, "special cases", 0, [] {
    int irreducible = 0, irr_bad = 0, diagonal = 0, diag_bad = 0, discrete = 0, disc_bad = 0;
    for (std::uint64_t seed = 0; irreducible < 200; ++seed) {
      const auto s = feasible_system(9'000 + seed, 1 + static_cast<int>(seed % 6), 1 + static_cast<int>(seed % 4),
                                     1 + static_cast<int>((seed / 4) % 4), StateStructure::kIrreducible);
      const auto r = select_min_cost_io(s);
      irr_bad += r.special_case != SpecialCase::kIrreducible || r.total_cost != oracle::problem_one(s)->second;
      ++irreducible;
    }
    for (std::uint64_t seed = 0; diagonal < 200; ++seed) {
      // Every state is its own SCC here, so it needs its own input and output.
      GeneratorConfig c = small_config(9'500 + seed, 1 + static_cast<int>(seed % 8), 1 + static_cast<int>(seed % 5),
                                       1 + static_cast<int>((seed / 5) % 5));
      c.state_structure = StateStructure::kDiagonal;
      c.state_density = 0.1;
      c.input_density = c.output_density = 0.8;
      const auto s = generate(c);
      const auto r = select_min_cost_io(s);
      diag_bad += !r.cycle || r.cycle->cost != Cost{};
      ++diagonal;
    }
    for (std::uint64_t seed = 0; discrete < 200; ++seed) {
      const auto s = feasible_system(9'800 + seed, 1 + static_cast<int>(seed % 7), 1 + static_cast<int>(seed % 4),
                                     1 + static_cast<int>((seed / 4) % 4), StateStructure::kRandom,
                                     TimeMode::kDiscrete);
      const auto r = select_min_cost_io(s);
      disc_bad += r.cycle.has_value() || r.matching.has_value() || r.bipartite.has_value() ||
                  !oracle::condition_a(s, r.selection);
      ++discrete;
    }
    const bool ok = irr_bad == 0 && diag_bad == 0 && disc_bad == 0;
    return Outcome{ok, fmt("(a) %d/%d irreducible optimal (b) %d/%d diagonal zero cycle cost (c) %d/%d discrete ok",
                           irreducible - irr_bad, irreducible, diagonal - diag_bad, diagonal, discrete - disc_bad,
                           discrete)};
  });

  report(10, "runtime n=500, growth <= cubic", 0, [] {
    auto instance = [](int n, int io, std::uint64_t seed) {
      GeneratorConfig c;
      c.n = n;
      c.m = c.p = io;
      c.state_density = 8.0 / n;
      c.input_density = c.output_density = 2.0 / n;
      c.seed = seed;
      c.max_attempts = 200;
      return generate(c);
    };
    auto median_seconds = [](const StructuredSystem& s, int reps) {
      std::vector<double> t;
      for (int i = 0; i < reps; ++i) {
        const auto t0 = Clock::now();
        (void)select_min_cost_io(s);
        t.push_back(seconds_since(t0));
      }
      std::sort(t.begin(), t.end());
      return t[t.size() / 2];
    };
    const double big = median_seconds(instance(500, 50, 10), 1);
    std::vector<double> xs, ys;
    std::string table;
    for (int n : {100, 200, 400}) {
      const double t = median_seconds(instance(n, n / 10, 10 + static_cast<std::uint64_t>(n)), 5);
      xs.push_back(std::log(n));
      ys.push_back(std::log(t));
      table += fmt(" n=%d:%.1fms", n, t * 1e3);
    }
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / 3;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / 3;
    double num = 0, den = 0;
    for (int i = 0; i < 3; ++i) {
      num += (xs[i] - mx) * (ys[i] - my);
      den += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = num / den;
    const bool ok = big < kLimitC10Select && slope <= kMaxGrowthExponent;
    return Outcome{ok, fmt("n=500 select %.2f s;", big) + table + fmt("; exponent %.2f", slope)};
  });

  report(11, "ratio envelope 1 + 2 ln n", 0, [] {
    std::vector<GeneratorConfig> configs;
    for (int n = 2; n <= 8; ++n) {
      for (int io = 1; io <= 4; ++io) {
        GeneratorConfig c = small_config(11'000 + static_cast<std::uint64_t>(n * 10 + io), n, io, 1 + (n + io) % 4);
        c.state_density = 0.2;
        configs.push_back(c);
      }
    }
    BenchOptions o;
    o.oracle = true;
    o.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const auto r = bench(configs, 20, o);
    int violations = 0, flagged = 0, measured = 0;
    for (const auto& rec : r.records) {
      if (!rec.error.empty() || !rec.ratio) {
        ++violations;
        continue;
      }
      ++measured;
      flagged += rec.ratio_flagged;
      if (*rec.ratio > 1.0 + 2.0 * std::log(std::max(rec.n, 2))) ++violations;
    }
    const bool ok = violations == 0 && measured >= 500;
    return Outcome{ok, fmt("%d instances, max ratio %.3f, mean %.3f, %d flagged, %d over envelope", measured,
                           r.summary.max_ratio.value_or(0.0), r.summary.mean_ratio.value_or(0.0), flagged,
                           violations)};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "OK" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
