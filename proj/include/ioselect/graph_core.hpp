#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ioselect/system_model.hpp"

namespace ioselect {

/// D(A): vertex j -> i whenever A(i,j) is starred. Vertices are states 0..n-1.
struct StateDigraph {
  int n = 0;
  std::vector<std::vector<int>> out;  // sorted successor lists
};

enum class EdgeClass { kState, kInput, kOutput, kFeedback };
const char* edge_class_name(EdgeClass cls);

struct DirectedEdge {
  int from = 0;
  int to = 0;
  EdgeClass cls = EdgeClass::kState;
  bool operator==(const DirectedEdge&) const = default;
};

/// D(A, B, C, K). Vertex ids: states [0, n), inputs [n, n+m), outputs
/// [n+m, n+m+p).
struct SystemDigraph {
  int n = 0;
  int m = 0;
  int p = 0;
  std::vector<DirectedEdge> edges;
  std::vector<std::vector<int>> out;  // successor vertex ids per vertex

  int vertex_count() const { return n + m + p; }
  int input_vertex(int i) const { return n + i; }
  int output_vertex(int j) const { return n + m + j; }
  /// "x3", "u1", "y2" (1-based).
  std::string vertex_name(int v) const;
  std::size_t count(EdgeClass cls) const;
};

StateDigraph build_state_digraph(const StructuredSystem& system);
SystemDigraph build_system_digraph(const StructuredSystem& system);

/// Strongly connected components of a plain digraph given as successor lists,
/// in Tarjan discovery order. Iterative, O(V + E).
std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& out);

struct SccInfo {
  std::vector<int> states;  // ascending
  bool non_top = false;     // no incoming condensation edge
  bool non_bottom = false;  // no outgoing condensation edge
  bool isolated() const { return non_top && non_bottom; }
};

/// SCCs of D(A) numbered by their smallest state, with the condensation DAG.
struct SccDecomposition {
  std::vector<SccInfo> components;
  std::vector<int> component_of;  // state -> component id
  std::vector<std::pair<int, int>> dag_edges;  // sorted, unique, no self-loops
  std::vector<int> non_top;     // component ids in ascending order (N^t_1..N^t_q)
  std::vector<int> non_bottom;  // component ids in ascending order (N^b_1..N^b_k)

  int q() const { return static_cast<int>(non_top.size()); }
  int k() const { return static_cast<int>(non_bottom.size()); }
};

SccDecomposition decompose_sccs(const StateDigraph& graph);

/// For each input, the positions in `non_top` it covers; for each output, the
/// positions in `non_bottom` it covers.
struct CoverageTables {
  std::vector<std::vector<int>> input_covers;
  std::vector<std::vector<int>> output_covers;
  int mu_max = 0;
  int eta_max = 0;
};

CoverageTables coverage(const StructuredSystem& system, const SccDecomposition& scc);

/// Every state reachable from a chosen input in the restricted system digraph.
/// Cross-checked against the non-top SCC coverage criterion; a disagreement
/// throws std::logic_error.
bool all_accessible(const StructuredSystem& system, const Selection& sel);

/// Every state reaches a chosen output. Mirror of all_accessible.
bool all_sensable(const StructuredSystem& system, const Selection& sel);

/// For each state, a feedback edge lying in its SCC of the restricted system
/// digraph, or nothing.
struct FeedbackWitness {
  int state = 0;
  bool found = false;
  int output = -1;  // original output index of the feedback edge tail
  int input = -1;   // original input index of the feedback edge head
};

/// Condition (a): in the restricted system digraph every state shares an SCC
/// with at least one feedback edge.
bool condition_a_holds(const StructuredSystem& system, const Selection& sel);
std::vector<FeedbackWitness> condition_a_witness(const StructuredSystem& system,
                                                 const Selection& sel);

/// Every SCC is isolated or sits on a condensation path from a non-top to a
/// non-bottom SCC.
bool sccs_on_top_bottom_paths(const SccDecomposition& scc);

/// "src dst class" per line, vertex names 1-based.
void write_edge_list(std::ostream& os, const SystemDigraph& graph);
/// "Ci Cj dag" per condensation edge, components 1-based.
void write_condensation(std::ostream& os, const SccDecomposition& scc);

}  // namespace ioselect
