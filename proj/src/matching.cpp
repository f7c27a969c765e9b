#include "ioselect/matching.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "ioselect/errors.hpp"

namespace ioselect {

const char* bipartite_class_name(BipartiteClass cls) {
  switch (cls) {
    case BipartiteClass::kState: return "EX";
    case BipartiteClass::kInput: return "EU";
    case BipartiteClass::kOutput: return "EY";
    case BipartiteClass::kFeedback: return "EK";
    case BipartiteClass::kInputSelf: return "EUU";
    case BipartiteClass::kOutputSelf: return "EYY";
  }
  return "?";
}

namespace {

std::string vertex_name(const SystemBipartiteGraph& g, int v, const char* prime) {
  if (v < g.n) return "x" + std::string(prime) + std::to_string(v + 1);
  // Restricted graphs name inputs and outputs by their original index.
  if (v < g.n + g.m) return "u" + std::string(prime) + std::to_string(g.input_map[static_cast<std::size_t>(v - g.n)] + 1);
  return "y" + std::string(prime) + std::to_string(g.output_map[static_cast<std::size_t>(v - g.n - g.m)] + 1);
}

}  // namespace

std::string SystemBipartiteGraph::left_name(int v) const { return vertex_name(*this, v, "'"); }
std::string SystemBipartiteGraph::right_name(int v) const { return vertex_name(*this, v, ""); }

std::size_t SystemBipartiteGraph::count(BipartiteClass cls) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [cls](const BipartiteEdge& e) { return e.cls == cls; }));
}

namespace {

SystemBipartiteGraph build(const StructuredSystem& system, std::vector<int> input_map,
                           std::vector<int> output_map) {
  SystemBipartiteGraph g;
  g.n = system.n();
  g.m = system.m();
  g.p = system.p();
  g.input_map = std::move(input_map);
  g.output_map = std::move(output_map);
  const int un = g.n;
  const int yn = g.n + g.m;
  auto& e = g.edges;
  for (const Star& s : system.a.stars()) e.push_back({s.row, s.col, BipartiteClass::kState, {}});
  for (const Star& s : system.b.stars()) e.push_back({s.row, un + s.col, BipartiteClass::kInput, {}});
  for (const Star& s : system.c.stars()) e.push_back({yn + s.row, s.col, BipartiteClass::kOutput, {}});
  auto feedback = [&](int i, int j) {
    const Cost c = system.cost_u[static_cast<std::size_t>(i)] + system.cost_y[static_cast<std::size_t>(j)];
    e.push_back({un + i, yn + j, BipartiteClass::kFeedback, c});
  };
  if (system.feedback_complete()) {
    for (int i = 0; i < g.m; ++i) {
      for (int j = 0; j < g.p; ++j) feedback(i, j);
    }
  } else {
    for (const Star& s : std::get<SparsityPattern>(system.k).stars()) feedback(s.row, s.col);
  }
  for (int i = 0; i < g.m; ++i) e.push_back({un + i, un + i, BipartiteClass::kInputSelf, {}});
  for (int j = 0; j < g.p; ++j) e.push_back({yn + j, yn + j, BipartiteClass::kOutputSelf, {}});

  std::stable_sort(e.begin(), e.end(), [](const BipartiteEdge& a, const BipartiteEdge& b) {
    return a.left != b.left ? a.left < b.left : a.right < b.right;
  });
  g.adjacency.resize(static_cast<std::size_t>(g.side_size()));
  for (std::size_t k = 0; k < e.size(); ++k) g.adjacency[static_cast<std::size_t>(e[k].left)].push_back(static_cast<int>(k));
  return g;
}

}  // namespace

SystemBipartiteGraph build_bipartite(const StructuredSystem& system) {
  require_valid(system);
  std::vector<int> inputs(static_cast<std::size_t>(system.m()));
  std::vector<int> outputs(static_cast<std::size_t>(system.p()));
  std::iota(inputs.begin(), inputs.end(), 0);
  std::iota(outputs.begin(), outputs.end(), 0);
  return build(system, std::move(inputs), std::move(outputs));
}

SystemBipartiteGraph build_bipartite(const Restriction& restriction) {
  return build(restriction.system, restriction.input_map, restriction.output_map);
}

std::vector<int> hopcroft_karp(int left_count, int right_count, const std::vector<std::vector<int>>& adjacency) {
  constexpr int kFree = -1;
  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> match_left(static_cast<std::size_t>(left_count), kFree);
  std::vector<int> match_right(static_cast<std::size_t>(right_count), kFree);
  std::vector<int> dist(static_cast<std::size_t>(left_count), kInf);
  std::vector<std::size_t> next(static_cast<std::size_t>(left_count), 0);

  auto bfs = [&]() {
    std::deque<int> queue;
    for (int l = 0; l < left_count; ++l) {
      dist[l] = match_left[l] == kFree ? 0 : kInf;
      if (dist[l] == 0) queue.push_back(l);
    }
    bool reached_free = false;
    while (!queue.empty()) {
      const int l = queue.front();
      queue.pop_front();
      for (int r : adjacency[static_cast<std::size_t>(l)]) {
        const int owner = match_right[r];
        if (owner == kFree) {
          reached_free = true;
        } else if (dist[owner] == kInf) {
          dist[owner] = dist[l] + 1;
          queue.push_back(owner);
        }
      }
    }
    return reached_free;
  };

  // Iterative layered DFS from one free left vertex.
  auto augment = [&](int root) {
    std::vector<int> path{root};
    while (!path.empty()) {
      const int l = path.back();
      const auto& adj = adjacency[static_cast<std::size_t>(l)];
      bool advanced = false;
      while (next[l] < adj.size()) {
        const int r = adj[next[l]++];
        const int owner = match_right[r];
        if (owner == kFree) {
          // Flip the alternating path ending at r.
          int right = r;
          for (auto it = path.rbegin(); it != path.rend(); ++it) {
            const int prev = match_left[*it];
            match_left[*it] = right;
            match_right[right] = *it;
            right = prev;
          }
          return true;
        }
        if (dist[owner] == dist[l] + 1) {
          path.push_back(owner);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist[l] = kInf;
        path.pop_back();
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(next.begin(), next.end(), 0);
    for (int l = 0; l < left_count; ++l) {
      if (match_left[l] == kFree) augment(l);
    }
  }
  return match_left;
}

namespace {

std::vector<std::vector<int>> right_adjacency(const SystemBipartiteGraph& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.side_size()));
  for (const auto& e : g.edges) adj[static_cast<std::size_t>(e.left)].push_back(e.right);
  return adj;
}

int find_edge(const SystemBipartiteGraph& g, int left, int right) {
  for (int k : g.adjacency[static_cast<std::size_t>(left)]) {
    if (g.edges[static_cast<std::size_t>(k)].right == right) return k;
  }
  return -1;
}

Matching to_matching(const SystemBipartiteGraph& g, const std::vector<int>& match_left) {
  Matching m;
  for (int l = 0; l < g.side_size(); ++l) {
    if (match_left[static_cast<std::size_t>(l)] < 0) continue;
    const auto& edge = g.edges[static_cast<std::size_t>(find_edge(g, l, match_left[static_cast<std::size_t>(l)]))];
    m.edges.push_back(edge);
    m.total_cost += edge.cost;
  }
  m.perfect = static_cast<int>(m.edges.size()) == g.side_size();
  return m;
}

}  // namespace

Matching maximum_matching(const SystemBipartiteGraph& graph) {
  return to_matching(graph, hopcroft_karp(graph.side_size(), graph.side_size(), right_adjacency(graph)));
}

bool has_perfect_matching(const SystemBipartiteGraph& graph) {
  const auto match = hopcroft_karp(graph.side_size(), graph.side_size(), right_adjacency(graph));
  return std::none_of(match.begin(), match.end(), [](int r) { return r < 0; });
}

std::vector<int> hall_violator(const SystemBipartiteGraph& graph) {
  const int size = graph.side_size();
  const auto adj = right_adjacency(graph);
  const auto match_left = hopcroft_karp(size, size, adj);
  std::vector<int> match_right(static_cast<std::size_t>(size), -1);
  for (int l = 0; l < size; ++l) {
    if (match_left[static_cast<std::size_t>(l)] >= 0) match_right[static_cast<std::size_t>(match_left[static_cast<std::size_t>(l)])] = l;
  }
  // Left vertices reachable from free left vertices by alternating paths.
  std::vector<char> in_set(static_cast<std::size_t>(size), 0);
  std::deque<int> queue;
  for (int l = 0; l < size; ++l) {
    if (match_left[static_cast<std::size_t>(l)] < 0) {
      in_set[static_cast<std::size_t>(l)] = 1;
      queue.push_back(l);
    }
  }
  while (!queue.empty()) {
    const int l = queue.front();
    queue.pop_front();
    for (int r : adj[static_cast<std::size_t>(l)]) {
      const int owner = match_right[static_cast<std::size_t>(r)];
      if (owner >= 0 && !in_set[static_cast<std::size_t>(owner)]) {
        in_set[static_cast<std::size_t>(owner)] = 1;
        queue.push_back(owner);
      }
    }
  }
  std::vector<int> out;
  for (int l = 0; l < size; ++l) {
    if (in_set[static_cast<std::size_t>(l)]) out.push_back(l);
  }
  return out;
}

namespace {

[[noreturn]] void throw_no_perfect(const SystemBipartiteGraph& g) {
  const auto hall = hall_violator(g);
  std::vector<char> nbr(static_cast<std::size_t>(g.side_size()), 0);
  std::string names;
  for (int l : hall) {
    names += (names.empty() ? "" : ",") + g.left_name(l);
    for (int k : g.adjacency[static_cast<std::size_t>(l)]) nbr[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(k)].right)] = 1;
  }
  const auto neighbours = std::count(nbr.begin(), nbr.end(), 1);
  throw NoPerfectMatching("no perfect matching: states cannot be spanned by disjoint cycles",
                          "{" + names + "} has " + std::to_string(hall.size()) + " vertices but only " +
                              std::to_string(neighbours) + " neighbours",
                          hall);
}

enum class Use { kFree, kUsed, kUnused };

// Perfect matchings of the tight subgraph subject to per-input and
// per-output use constraints.
class TightSubgraph {
 public:
  TightSubgraph(const SystemBipartiteGraph& g, std::vector<int> tight) : g_(g), tight_(std::move(tight)) {}

  std::vector<int> solve(const std::vector<Use>& inputs, const std::vector<Use>& outputs) const {
    const int size = g_.side_size();
    const int un = g_.n;
    const int yn = g_.n + g_.m;
    auto role = [&](int v) -> Use {
      if (v >= un && v < yn) return inputs[static_cast<std::size_t>(v - un)];
      if (v >= yn) return outputs[static_cast<std::size_t>(v - yn)];
      return Use::kFree;
    };
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(size));
    for (int k : tight_) {
      const auto& e = g_.edges[static_cast<std::size_t>(k)];
      const bool self = e.cls == BipartiteClass::kInputSelf || e.cls == BipartiteClass::kOutputSelf;
      if (self) {
        if (role(e.left) == Use::kUsed) continue;
      } else if (role(e.left) == Use::kUnused || role(e.right) == Use::kUnused) {
        continue;
      }
      adj[static_cast<std::size_t>(e.left)].push_back(e.right);
    }
    return hopcroft_karp(size, size, adj);
  }

  bool feasible(const std::vector<Use>& inputs, const std::vector<Use>& outputs) const {
    const auto match = solve(inputs, outputs);
    return std::none_of(match.begin(), match.end(), [](int r) { return r < 0; });
  }

 private:
  const SystemBipartiteGraph& g_;
  std::vector<int> tight_;
};

// Fixes each entry of `use` in ascending order so that the set of kUsed
// indices is the lexicographically smallest one still feasible.
template <typename Feasible>
void fix_lexicographically(std::vector<Use>& use, Feasible&& feasible) {
  for (std::size_t i = 0; i < use.size(); ++i) {
    auto stop = use;
    std::fill(stop.begin() + static_cast<std::ptrdiff_t>(i), stop.end(), Use::kUnused);
    if (feasible(stop)) {
      use = std::move(stop);
      return;
    }
    use[i] = Use::kUsed;
    if (!feasible(use)) use[i] = Use::kUnused;
  }
}

}  // namespace

Matching min_cost_perfect_matching(const SystemBipartiteGraph& graph) {
  const int size = graph.side_size();
  if (size == 0) return Matching{{}, true, {}};
  if (!has_perfect_matching(graph)) throw_no_perfect(graph);

  // Dense Hungarian method; absent edges carry a cost above any perfect
  // matching built from real edges.
  constexpr std::int64_t kGuard = std::int64_t{1} << 50;
  std::int64_t total = 0;
  for (const auto& e : graph.edges) {
    if (__builtin_add_overflow(total, e.cost.units(), &total) || total > kGuard) {
      throw CostOverflow("matching costs exceed the exact range of the solver");
    }
  }
  const std::int64_t absent = total + 1;
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  const auto stride = static_cast<std::size_t>(size);
  std::vector<std::int64_t> cost(stride * stride, absent);
  for (const auto& e : graph.edges) {
    cost[static_cast<std::size_t>(e.left) * stride + static_cast<std::size_t>(e.right)] = e.cost.units();
  }
  auto at = [&](int l, int r) { return cost[static_cast<std::size_t>(l) * stride + static_cast<std::size_t>(r)]; };

  // 1-based rows (left) and columns (right); column 0 is the virtual root.
  std::vector<std::int64_t> row_pot(stride + 1, 0);
  std::vector<std::int64_t> col_pot(stride + 1, 0);
  std::vector<int> row_of_col(stride + 1, 0);
  std::vector<int> way(stride + 1, 0);
  std::vector<std::int64_t> min_slack(stride + 1);
  std::vector<char> visited(stride + 1);
  for (int row = 1; row <= size; ++row) {
    row_of_col[0] = row;
    int col0 = 0;
    std::fill(min_slack.begin(), min_slack.end(), kInf);
    std::fill(visited.begin(), visited.end(), 0);
    do {
      visited[static_cast<std::size_t>(col0)] = 1;
      const int row0 = row_of_col[static_cast<std::size_t>(col0)];
      std::int64_t delta = kInf;
      int col1 = 0;
      for (int col = 1; col <= size; ++col) {
        if (visited[static_cast<std::size_t>(col)]) continue;
        const std::int64_t slack = at(row0 - 1, col - 1) - row_pot[static_cast<std::size_t>(row0)] - col_pot[static_cast<std::size_t>(col)];
        if (slack < min_slack[static_cast<std::size_t>(col)]) {
          min_slack[static_cast<std::size_t>(col)] = slack;
          way[static_cast<std::size_t>(col)] = col0;
        }
        if (min_slack[static_cast<std::size_t>(col)] < delta) {
          delta = min_slack[static_cast<std::size_t>(col)];
          col1 = col;
        }
      }
      for (int col = 0; col <= size; ++col) {
        if (visited[static_cast<std::size_t>(col)]) {
          row_pot[static_cast<std::size_t>(row_of_col[static_cast<std::size_t>(col)])] += delta;
          col_pot[static_cast<std::size_t>(col)] -= delta;
        } else {
          min_slack[static_cast<std::size_t>(col)] -= delta;
        }
      }
      col0 = col1;
    } while (row_of_col[static_cast<std::size_t>(col0)] != 0);
    do {
      const int col1 = way[static_cast<std::size_t>(col0)];
      row_of_col[static_cast<std::size_t>(col0)] = row_of_col[static_cast<std::size_t>(col1)];
      col0 = col1;
    } while (col0 != 0);
  }

  Cost optimum;
  for (int col = 1; col <= size; ++col) {
    optimum += Cost::from_units(at(row_of_col[static_cast<std::size_t>(col)] - 1, col - 1));
  }

  // With optimal potentials, the optimal perfect matchings are exactly the
  // perfect matchings of the tight subgraph.
  std::vector<int> tight;
  for (std::size_t k = 0; k < graph.edges.size(); ++k) {
    const auto& e = graph.edges[k];
    if (e.cost.units() - row_pot[static_cast<std::size_t>(e.left) + 1] - col_pot[static_cast<std::size_t>(e.right) + 1] == 0) {
      tight.push_back(static_cast<int>(k));
    }
  }
  const TightSubgraph sub(graph, std::move(tight));
  std::vector<Use> inputs(static_cast<std::size_t>(graph.m), Use::kFree);
  std::vector<Use> outputs(static_cast<std::size_t>(graph.p), Use::kFree);
  fix_lexicographically(inputs, [&](const std::vector<Use>& candidate) { return sub.feasible(candidate, outputs); });
  fix_lexicographically(outputs, [&](const std::vector<Use>& candidate) { return sub.feasible(inputs, candidate); });

  Matching result = to_matching(graph, sub.solve(inputs, outputs));
  if (!result.perfect || result.total_cost != optimum) {
    throw std::logic_error("tie-broken matching lost optimality");
  }
  return result;
}

IoChoice extract_io(const StructuredSystem& system, const SystemBipartiteGraph& graph, const Matching& matching) {
  if (!matching.perfect) throw InvalidArgument("extract_io needs a perfect matching");
  IoChoice out;
  for (const auto& e : matching.edges) {
    if (e.cls == BipartiteClass::kInput) {
      out.selection.inputs.push_back(graph.input_map[static_cast<std::size_t>(e.right - graph.n)]);
    } else if (e.cls == BipartiteClass::kOutput) {
      out.selection.outputs.push_back(graph.output_map[static_cast<std::size_t>(e.left - graph.n - graph.m)]);
    }
  }
  out.selection.canonicalize();
  out.cost = selection_cost(system, out.selection);
  if (out.cost != matching.total_cost) {
    throw std::logic_error("selected input/output cost differs from the matching cost");
  }
  return out;
}

bool cycle_cover_check(const StructuredSystem& system, const Selection& sel) {
  return has_perfect_matching(build_bipartite(restrict_to(system, sel)));
}

void write_matching(std::ostream& os, const SystemBipartiteGraph& graph, const Matching& matching) {
  for (const auto& e : matching.edges) {
    os << graph.left_name(e.left) << ' ' << graph.right_name(e.right) << ' ' << bipartite_class_name(e.cls) << ' '
       << e.cost.to_string() << '\n';
  }
}

}  // namespace ioselect
