#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ioselect/cost.hpp"
#include "ioselect/system_model.hpp"

namespace ioselect {

enum class BipartiteClass { kState, kInput, kOutput, kFeedback, kInputSelf, kOutputSelf };
const char* bipartite_class_name(BipartiteClass cls);

/// An undirected edge between left vertex `left` (a primed copy) and right
/// vertex `right`. Both sides share the layout: states [0, n), inputs
/// [n, n+m), outputs [n+m, n+m+p).
struct BipartiteEdge {
  int left = 0;
  int right = 0;
  BipartiteClass cls = BipartiteClass::kState;
  Cost cost;
  bool operator==(const BipartiteEdge&) const = default;
};

/// B(A, B, C, K) with the disjoint-cycle cost c: p_u(i) + p_y(j) on the
/// feedback edge (u'_i, y_j), zero elsewhere.
struct SystemBipartiteGraph {
  int n = 0;
  int m = 0;
  int p = 0;
  std::vector<BipartiteEdge> edges;
  std::vector<std::vector<int>> adjacency;  // left vertex -> edge indices
  // Original input/output index of each local one (identity unless the graph
  // was built from a restriction).
  std::vector<int> input_map;
  std::vector<int> output_map;

  int side_size() const { return n + m + p; }
  std::string left_name(int v) const;   // "x'1", "u'2", "y'1"
  std::string right_name(int v) const;  // "x1", "u2", "y1"
  std::size_t count(BipartiteClass cls) const;
};

SystemBipartiteGraph build_bipartite(const StructuredSystem& system);
/// Same builder on a restricted system; self edges exist only for retained
/// inputs and outputs, and extracted indices refer to the original system.
SystemBipartiteGraph build_bipartite(const Restriction& restriction);

/// Maximum matching by Hopcroft-Karp. Returns, per left vertex, the matched
/// right vertex or -1.
std::vector<int> hopcroft_karp(int left_count, int right_count, const std::vector<std::vector<int>>& adjacency);

struct Matching {
  std::vector<BipartiteEdge> edges;  // sorted by left vertex
  bool perfect = false;
  Cost total_cost;
};

/// Maximum-cardinality matching (not cost aware).
Matching maximum_matching(const SystemBipartiteGraph& graph);
bool has_perfect_matching(const SystemBipartiteGraph& graph);

/// A left vertex set whose neighbourhood is strictly smaller, or empty when a
/// perfect matching exists.
std::vector<int> hall_violator(const SystemBipartiteGraph& graph);

/// Exact minimum-cost perfect matching (Hungarian method with potentials).
/// Among optimal matchings, returns the one whose extracted (I, J) is
/// lexicographically smallest. Throws NoPerfectMatching with a Hall set.
Matching min_cost_perfect_matching(const SystemBipartiteGraph& graph);

/// Inputs and outputs a perfect matching puts on feedback cycles, and their
/// cost (equal to the matching cost).
struct IoChoice {
  Selection selection;
  Cost cost;
};
IoChoice extract_io(const StructuredSystem& system, const SystemBipartiteGraph& graph, const Matching& matching);

/// All states spanned by vertex-disjoint cycles of the restricted system
/// digraph, decided as perfect-matching existence on its bipartite graph.
bool cycle_cover_check(const StructuredSystem& system, const Selection& sel);

/// "left right class cost" per matched edge.
void write_matching(std::ostream& os, const SystemBipartiteGraph& graph, const Matching& matching);

}  // namespace ioselect
