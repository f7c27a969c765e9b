#include "ioselect/graph_core.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <stdexcept>

namespace ioselect {

const char* edge_class_name(EdgeClass cls) {
  switch (cls) {
    case EdgeClass::kState: return "X";
    case EdgeClass::kInput: return "U";
    case EdgeClass::kOutput: return "Y";
    case EdgeClass::kFeedback: return "K";
  }
  return "?";
}

std::string SystemDigraph::vertex_name(int v) const {
  if (v < n) return "x" + std::to_string(v + 1);
  if (v < n + m) return "u" + std::to_string(v - n + 1);
  return "y" + std::to_string(v - n - m + 1);
}

std::size_t SystemDigraph::count(EdgeClass cls) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [cls](const DirectedEdge& e) { return e.cls == cls; }));
}

StateDigraph build_state_digraph(const StructuredSystem& system) {
  StateDigraph g;
  g.n = system.n();
  g.out.resize(static_cast<std::size_t>(g.n));
  for (const Star& s : system.a.stars()) g.out[static_cast<std::size_t>(s.col)].push_back(s.row);
  for (auto& succ : g.out) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }
  return g;
}

SystemDigraph build_system_digraph(const StructuredSystem& system) {
  SystemDigraph g;
  g.n = system.n();
  g.m = system.m();
  g.p = system.p();
  auto& e = g.edges;
  for (const Star& s : system.a.stars()) e.push_back({s.col, s.row, EdgeClass::kState});
  for (const Star& s : system.b.stars()) e.push_back({g.input_vertex(s.col), s.row, EdgeClass::kInput});
  for (const Star& s : system.c.stars()) e.push_back({s.col, g.output_vertex(s.row), EdgeClass::kOutput});
  if (system.feedback_complete()) {
    for (int i = 0; i < g.m; ++i) {
      for (int j = 0; j < g.p; ++j) e.push_back({g.output_vertex(j), g.input_vertex(i), EdgeClass::kFeedback});
    }
  } else {
    for (const Star& s : std::get<SparsityPattern>(system.k).stars()) {
      e.push_back({g.output_vertex(s.col), g.input_vertex(s.row), EdgeClass::kFeedback});
    }
  }
  g.out.resize(static_cast<std::size_t>(g.vertex_count()));
  for (const auto& edge : e) g.out[static_cast<std::size_t>(edge.from)].push_back(edge.to);
  return g;
}

std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& out) {
  const int n = static_cast<int>(out.size());
  constexpr int kUnvisited = -1;
  std::vector<int> index(static_cast<std::size_t>(n), kUnvisited);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  // (vertex, next successor position)
  std::vector<std::pair<int, std::size_t>> call;
  int counter = 0;

  for (int root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      const auto& succ = out[static_cast<std::size_t>(v)];
      if (pos < succ.size()) {
        const int w = succ[pos++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const int done = v;
      call.pop_back();
      if (!call.empty()) {
        const int parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::vector<int> comp;
        int w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != done);
        components.push_back(std::move(comp));
      }
    }
  }
  return components;
}

SccDecomposition decompose_sccs(const StateDigraph& graph) {
  auto raw = strongly_connected_components(graph.out);
  for (auto& comp : raw) std::sort(comp.begin(), comp.end());
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });

  SccDecomposition out;
  out.component_of.assign(static_cast<std::size_t>(graph.n), -1);
  out.components.resize(raw.size());
  for (std::size_t c = 0; c < raw.size(); ++c) {
    out.components[c].states = std::move(raw[c]);
    for (int v : out.components[c].states) out.component_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
  }
  for (int v = 0; v < graph.n; ++v) {
    for (int w : graph.out[static_cast<std::size_t>(v)]) {
      const int cv = out.component_of[static_cast<std::size_t>(v)];
      const int cw = out.component_of[static_cast<std::size_t>(w)];
      if (cv != cw) out.dag_edges.emplace_back(cv, cw);
    }
  }
  std::sort(out.dag_edges.begin(), out.dag_edges.end());
  out.dag_edges.erase(std::unique(out.dag_edges.begin(), out.dag_edges.end()), out.dag_edges.end());

  std::vector<char> has_in(out.components.size(), 0);
  std::vector<char> has_out(out.components.size(), 0);
  for (auto [from, to] : out.dag_edges) {
    has_out[static_cast<std::size_t>(from)] = 1;
    has_in[static_cast<std::size_t>(to)] = 1;
  }
  for (std::size_t c = 0; c < out.components.size(); ++c) {
    out.components[c].non_top = !has_in[c];
    out.components[c].non_bottom = !has_out[c];
    if (!has_in[c]) out.non_top.push_back(static_cast<int>(c));
    if (!has_out[c]) out.non_bottom.push_back(static_cast<int>(c));
  }
  return out;
}

namespace {

// For each state, its position among `linked` components, or -1.
std::vector<int> position_of_state(const SccDecomposition& scc, const std::vector<int>& linked) {
  std::vector<int> pos(scc.component_of.size(), -1);
  for (std::size_t k = 0; k < linked.size(); ++k) {
    for (int v : scc.components[static_cast<std::size_t>(linked[k])].states) {
      pos[static_cast<std::size_t>(v)] = static_cast<int>(k);
    }
  }
  return pos;
}

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

CoverageTables coverage(const StructuredSystem& system, const SccDecomposition& scc) {
  CoverageTables t;
  t.input_covers.resize(static_cast<std::size_t>(system.m()));
  t.output_covers.resize(static_cast<std::size_t>(system.p()));
  const auto top_pos = position_of_state(scc, scc.non_top);
  const auto bottom_pos = position_of_state(scc, scc.non_bottom);
  for (const Star& s : system.b.stars()) {
    if (int k = top_pos[static_cast<std::size_t>(s.row)]; k >= 0) {
      t.input_covers[static_cast<std::size_t>(s.col)].push_back(k);
    }
  }
  for (const Star& s : system.c.stars()) {
    if (int k = bottom_pos[static_cast<std::size_t>(s.col)]; k >= 0) {
      t.output_covers[static_cast<std::size_t>(s.row)].push_back(k);
    }
  }
  for (auto& v : t.input_covers) {
    sort_unique(v);
    t.mu_max = std::max(t.mu_max, static_cast<int>(v.size()));
  }
  for (auto& v : t.output_covers) {
    sort_unique(v);
    t.eta_max = std::max(t.eta_max, static_cast<int>(v.size()));
  }
  return t;
}

namespace {

std::vector<char> reachable(const std::vector<std::vector<int>>& out, const std::vector<int>& sources) {
  std::vector<char> seen(out.size(), 0);
  std::deque<int> queue;
  for (int s : sources) {
    if (!seen[static_cast<std::size_t>(s)]) {
      seen[static_cast<std::size_t>(s)] = 1;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : out[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<std::vector<int>> reversed(const std::vector<std::vector<int>>& out) {
  std::vector<std::vector<int>> in(out.size());
  for (std::size_t v = 0; v < out.size(); ++v) {
    for (int w : out[v]) in[static_cast<std::size_t>(w)].push_back(static_cast<int>(v));
  }
  return in;
}

bool linked_sccs_covered(const std::vector<std::vector<int>>& covers, const std::vector<int>& chosen,
                         int universe) {
  std::vector<char> hit(static_cast<std::size_t>(universe), 0);
  for (int i : chosen) {
    for (int k : covers[static_cast<std::size_t>(i)]) hit[static_cast<std::size_t>(k)] = 1;
  }
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

}  // namespace

bool all_accessible(const StructuredSystem& system, const Selection& sel) {
  const auto r = restrict_to(system, sel);
  const auto g = build_system_digraph(r.system);
  std::vector<int> sources;
  for (int i = 0; i < g.m; ++i) sources.push_back(g.input_vertex(i));
  const auto seen = reachable(g.out, sources);
  const bool by_search = std::all_of(seen.begin(), seen.begin() + g.n, [](char c) { return c != 0; });

  const auto scc = decompose_sccs(build_state_digraph(system));
  const auto tables = coverage(system, scc);
  const bool by_cover = linked_sccs_covered(tables.input_covers, r.input_map, scc.q());
  if (by_search != by_cover) {
    throw std::logic_error("accessibility search and non-top SCC coverage disagree");
  }
  return by_search;
}

bool all_sensable(const StructuredSystem& system, const Selection& sel) {
  const auto r = restrict_to(system, sel);
  const auto g = build_system_digraph(r.system);
  std::vector<int> sinks;
  for (int j = 0; j < g.p; ++j) sinks.push_back(g.output_vertex(j));
  const auto seen = reachable(reversed(g.out), sinks);
  const bool by_search = std::all_of(seen.begin(), seen.begin() + g.n, [](char c) { return c != 0; });

  const auto scc = decompose_sccs(build_state_digraph(system));
  const auto tables = coverage(system, scc);
  const bool by_cover = linked_sccs_covered(tables.output_covers, r.output_map, scc.k());
  if (by_search != by_cover) {
    throw std::logic_error("sensability search and non-bottom SCC coverage disagree");
  }
  return by_search;
}

std::vector<FeedbackWitness> condition_a_witness(const StructuredSystem& system, const Selection& sel) {
  const auto r = restrict_to(system, sel);
  const auto g = build_system_digraph(r.system);
  const auto comps = strongly_connected_components(g.out);
  std::vector<int> comp_of(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (int v : comps[c]) comp_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
  }
  // First feedback edge inside each component.
  std::vector<const DirectedEdge*> k_edge(comps.size(), nullptr);
  for (const auto& e : g.edges) {
    if (e.cls != EdgeClass::kFeedback) continue;
    const int c = comp_of[static_cast<std::size_t>(e.from)];
    if (c == comp_of[static_cast<std::size_t>(e.to)] && k_edge[static_cast<std::size_t>(c)] == nullptr) {
      k_edge[static_cast<std::size_t>(c)] = &e;
    }
  }
  std::vector<FeedbackWitness> out(static_cast<std::size_t>(g.n));
  for (int x = 0; x < g.n; ++x) {
    auto& w = out[static_cast<std::size_t>(x)];
    w.state = x;
    if (const DirectedEdge* e = k_edge[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(x)])]) {
      w.found = true;
      w.output = r.output_map[static_cast<std::size_t>(e->from - g.n - g.m)];
      w.input = r.input_map[static_cast<std::size_t>(e->to - g.n)];
    }
  }
  return out;
}

bool condition_a_holds(const StructuredSystem& system, const Selection& sel) {
  const auto witness = condition_a_witness(system, sel);
  const bool holds = std::all_of(witness.begin(), witness.end(), [](const auto& w) { return w.found; });
  if (system.feedback_complete() && system.n() >= 1) {
    const bool shortcut = !sel.inputs.empty() && !sel.outputs.empty() &&
                          all_accessible(system, sel) && all_sensable(system, sel);
    if (shortcut != holds) {
      throw std::logic_error("condition (a) disagrees with accessibility and sensability");
    }
  }
  return holds;
}

bool sccs_on_top_bottom_paths(const SccDecomposition& scc) {
  const std::size_t count = scc.components.size();
  std::vector<std::vector<int>> out(count);
  for (auto [from, to] : scc.dag_edges) out[static_cast<std::size_t>(from)].push_back(to);
  const auto from_top = reachable(out, scc.non_top);
  const auto to_bottom = reachable(reversed(out), scc.non_bottom);
  for (std::size_t c = 0; c < count; ++c) {
    if (scc.components[c].isolated()) continue;
    if (!from_top[c] || !to_bottom[c]) return false;
  }
  return true;
}

void write_edge_list(std::ostream& os, const SystemDigraph& graph) {
  for (const auto& e : graph.edges) {
    os << graph.vertex_name(e.from) << ' ' << graph.vertex_name(e.to) << ' ' << edge_class_name(e.cls)
       << '\n';
  }
}

void write_condensation(std::ostream& os, const SccDecomposition& scc) {
  for (auto [from, to] : scc.dag_edges) os << 'C' << from + 1 << " C" << to + 1 << " dag\n";
}

}  // namespace ioselect
