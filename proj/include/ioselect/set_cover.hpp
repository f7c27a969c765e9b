#pragma once

#include <vector>

#include "ioselect/cost.hpp"
#include "ioselect/system_model.hpp"

namespace ioselect {

/// Universe {0..N-1}, sets S_0..S_{r-1} with nonnegative weights.
struct WeightedSetCoverInstance {
  int universe_size = 0;
  std::vector<std::vector<int>> sets;  // sorted, unique elements
  std::vector<Cost> weights;

  int set_count() const { return static_cast<int>(sets.size()); }
  /// Largest set cardinality d.
  int max_set_size() const;
  /// Union of all sets equals the universe.
  bool feasible() const;
  /// Elements that appear in no set.
  std::vector<int> uncoverable() const;
  /// Throws InvalidArgument on out-of-range elements, size mismatch or
  /// negative weights.
  void check() const;
};

/// One greedy iteration: the set taken, what it newly covered, and its
/// weight-per-new-element ratio as an exact fraction.
struct GreedyStep {
  int set = 0;
  std::vector<int> newly_covered;
  Cost weight;
  double ratio() const {
    return newly_covered.empty() ? 0.0 : weight.to_double() / static_cast<double>(newly_covered.size());
  }
};

struct Cover {
  std::vector<int> chosen;  // ascending set indices
  Cost weight;
  std::vector<GreedyStep> trace;  // greedy runs only, in pick order
};

/// Chvatal's greedy: repeatedly take the set minimizing weight / newly
/// covered. Ties go to the set covering more new elements, then the lowest
/// index. Sets with no new element are never taken.
Cover greedy_solve(const WeightedSetCoverInstance& inst);

/// Minimum-weight cover by branch and bound. Ties between optimal covers go
/// to the lexicographically smallest chosen index list. Guard: r <= 25.
inline constexpr int kExactSetCoverMaxSets = 25;
Cover exact_solve(const WeightedSetCoverInstance& inst);

/// Sum of the weights of `chosen`, and whether their union is the universe.
Cost cover_weight(const WeightedSetCoverInstance& inst, const std::vector<int>& chosen);
bool covers_universe(const WeightedSetCoverInstance& inst, const std::vector<int>& chosen);

/// Accessibility -> set cover. Element k is the k-th non-top SCC of D(A);
/// `element_states[k]` lists its states. Set i holds the SCCs input i covers,
/// weighted by p_u(i).
struct AccessibilityReduction {
  WeightedSetCoverInstance instance;
  std::vector<std::vector<int>> element_states;
};
AccessibilityReduction reduce_accessibility_to_wsc(const StructuredSystem& system);

/// Sensability -> set cover through the dual (A^T, C^T, p_y); set j is output j.
AccessibilityReduction reduce_sensability_to_wsc(const StructuredSystem& system);

/// I(S): the chosen set indices read as input indices.
Selection cover_to_selection(const Cover& cover);
/// Same, read as output indices (for covers of the sensability reduction).
Selection cover_to_output_selection(const Cover& cover);

/// Set cover -> accessibility: A = N x N diagonal, B(i,j) starred iff
/// i in S_j, p_u = w, no outputs. Requires N >= 1.
StructuredSystem reduce_wsc_to_accessibility(const WeightedSetCoverInstance& inst);

/// S(I) for a selection on the reduced system. Throws InfeasibleSelection
/// unless the chosen sets cover the universe.
Cover selection_to_cover(const WeightedSetCoverInstance& inst, const Selection& sel);

/// Harmonic number H(d) = 1 + 1/2 + ... + 1/d (0 for d = 0).
double harmonic(int d);

}  // namespace ioselect
