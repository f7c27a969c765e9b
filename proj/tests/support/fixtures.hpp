#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "ioselect/oracle_bench.hpp"
#include "ioselect/system_model.hpp"

namespace ioselect::fixture {

inline SparsityPattern stars(int rows, int cols, std::initializer_list<std::pair<int, int>> one_based) {
  SparsityPattern p(rows, cols);
  for (auto [r, c] : one_based) p.add(r - 1, c - 1);
  p.normalize();
  return p;
}

inline std::vector<Cost> costs(std::initializer_list<const char*> text) {
  std::vector<Cost> out;
  for (const char* t : text) out.push_back(Cost::parse(t));
  return out;
}

inline Cost cost(const char* text) { return Cost::parse(text); }

inline Selection sel(std::initializer_list<int> inputs, std::initializer_list<int> outputs) {
  Selection s;
  for (int i : inputs) s.inputs.push_back(i - 1);
  for (int j : outputs) s.outputs.push_back(j - 1);
  return s.canonicalize();
}

/// The four-state running example.
inline StructuredSystem fig1() {
  StructuredSystem s;
  s.a = stars(4, 4, {{1, 1}, {1, 2}, {2, 2}, {3, 1}, {3, 2}, {3, 4}, {4, 4}});
  s.b = stars(4, 3, {{1, 1}, {1, 3}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {4, 3}});
  s.c = stars(2, 4, {{1, 3}, {2, 1}});
  s.cost_u = costs({"1", "1", "1"});
  s.cost_y = costs({"1", "1"});
  return s;
}

/// x1 -> x2 -> ... -> xn -> x1.
inline SparsityPattern ring(int n) {
  SparsityPattern p(n, n);
  for (int i = 0; i < n; ++i) p.add((i + 1) % n, i);
  p.normalize();
  return p;
}

/// Diagonal A, B = I, C = I, unit costs.
inline StructuredSystem dedicated(int n) {
  StructuredSystem s;
  s.a = SparsityPattern::diagonal(n);
  s.b = SparsityPattern::diagonal(n);
  s.c = SparsityPattern::diagonal(n);
  s.cost_u.assign(static_cast<std::size_t>(n), Cost::from_integer(1));
  s.cost_y.assign(static_cast<std::size_t>(n), Cost::from_integer(1));
  return s;
}

inline GeneratorConfig small_config(std::uint64_t seed, int n, int m, int p, bool feasible = true) {
  GeneratorConfig c;
  c.n = n;
  c.m = m;
  c.p = p;
  c.seed = seed;
  c.state_density = 0.3;
  c.input_density = 0.35;
  c.output_density = 0.35;
  c.cost_lo = Cost::from_integer(1);
  c.cost_hi = Cost::from_integer(9);
  c.require_feasible = feasible;
  return c;
}

}  // namespace ioselect::fixture
