#include "ioselect/set_cover.hpp"

#include <algorithm>
#include <cstdint>

#include "ioselect/errors.hpp"
#include "ioselect/graph_core.hpp"

namespace ioselect {

int WeightedSetCoverInstance::max_set_size() const {
  std::size_t d = 0;
  for (const auto& s : sets) d = std::max(d, s.size());
  return static_cast<int>(d);
}

std::vector<int> WeightedSetCoverInstance::uncoverable() const {
  std::vector<char> hit(static_cast<std::size_t>(universe_size), 0);
  for (const auto& s : sets) {
    for (int e : s) hit[static_cast<std::size_t>(e)] = 1;
  }
  std::vector<int> missing;
  for (int e = 0; e < universe_size; ++e) {
    if (!hit[static_cast<std::size_t>(e)]) missing.push_back(e);
  }
  return missing;
}

bool WeightedSetCoverInstance::feasible() const { return uncoverable().empty(); }

void WeightedSetCoverInstance::check() const {
  if (universe_size < 0) throw InvalidArgument("universe size must be nonnegative");
  if (weights.size() != sets.size()) {
    throw InvalidArgument("set cover instance has " + std::to_string(sets.size()) + " sets but " +
                          std::to_string(weights.size()) + " weights");
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (int e : sets[i]) {
      if (e < 0 || e >= universe_size) {
        throw InvalidArgument("set " + std::to_string(i + 1) + " holds element " + std::to_string(e + 1) +
                              " outside the universe");
      }
    }
    if (weights[i] < Cost{}) throw InvalidArgument("negative weight on set " + std::to_string(i + 1));
  }
}

namespace {

std::string element_list(const std::vector<int>& elements) {
  std::string out;
  for (int e : elements) out += (out.empty() ? "" : ",") + std::to_string(e + 1);
  return "{" + out + "}";
}

[[noreturn]] void throw_infeasible(const WeightedSetCoverInstance& inst) {
  const auto missing = inst.uncoverable();
  throw Infeasible("set cover instance is infeasible", "elements " + element_list(missing) +
                                                            " are in no set");
}

}  // namespace

Cover greedy_solve(const WeightedSetCoverInstance& inst) {
  inst.check();
  if (!inst.feasible()) throw_infeasible(inst);

  Cover cover;
  std::vector<char> covered(static_cast<std::size_t>(inst.universe_size), 0);
  std::vector<char> taken(inst.sets.size(), 0);
  int remaining = inst.universe_size;
  while (remaining > 0) {
    int best = -1;
    std::int64_t best_new = 0;
    for (int i = 0; i < inst.set_count(); ++i) {
      if (taken[static_cast<std::size_t>(i)]) continue;
      std::int64_t fresh = 0;
      for (int e : inst.sets[static_cast<std::size_t>(i)]) fresh += covered[static_cast<std::size_t>(e)] ? 0 : 1;
      if (fresh == 0) continue;
      if (best < 0) {
        best = i;
        best_new = fresh;
        continue;
      }
      const int cmp = compare_ratio(inst.weights[static_cast<std::size_t>(i)], fresh,
                                    inst.weights[static_cast<std::size_t>(best)], best_new);
      if (cmp < 0 || (cmp == 0 && fresh > best_new)) {
        best = i;
        best_new = fresh;
      }
    }
    GreedyStep step;
    step.set = best;
    step.weight = inst.weights[static_cast<std::size_t>(best)];
    for (int e : inst.sets[static_cast<std::size_t>(best)]) {
      if (!covered[static_cast<std::size_t>(e)]) {
        covered[static_cast<std::size_t>(e)] = 1;
        step.newly_covered.push_back(e);
      }
    }
    remaining -= static_cast<int>(step.newly_covered.size());
    taken[static_cast<std::size_t>(best)] = 1;
    cover.weight += step.weight;
    cover.chosen.push_back(best);
    cover.trace.push_back(std::move(step));
  }
  std::sort(cover.chosen.begin(), cover.chosen.end());
  return cover;
}

namespace {

using Bits = std::vector<std::uint64_t>;

Bits to_bits(const std::vector<int>& elements, std::size_t words) {
  Bits b(words, 0);
  for (int e : elements) b[static_cast<std::size_t>(e) / 64] |= std::uint64_t{1} << (e % 64);
  return b;
}

class ExactSearch {
 public:
  explicit ExactSearch(const WeightedSetCoverInstance& inst)
      : inst_(inst), words_((static_cast<std::size_t>(inst.universe_size) + 63) / 64) {
    for (const auto& s : inst.sets) bits_.push_back(to_bits(s, words_));
    full_ = Bits(words_, 0);
    for (int e = 0; e < inst.universe_size; ++e) full_[static_cast<std::size_t>(e) / 64] |= std::uint64_t{1} << (e % 64);
    // suffix_[i] = union of sets i..r-1
    suffix_.assign(inst.sets.size() + 1, Bits(words_, 0));
    for (int i = inst.set_count() - 1; i >= 0; --i) {
      for (std::size_t w = 0; w < words_; ++w) suffix_[static_cast<std::size_t>(i)][w] = suffix_[static_cast<std::size_t>(i) + 1][w] | bits_[static_cast<std::size_t>(i)][w];
    }
  }

  Cover run() {
    Bits covered(words_, 0);
    std::vector<int> chosen;
    visit(0, covered, Cost{}, chosen);
    Cover out;
    out.chosen = best_;
    out.weight = best_weight_;
    return out;
  }

 private:
  bool complete(const Bits& covered) const { return covered == full_; }

  bool can_finish(const Bits& covered, std::size_t from) const {
    for (std::size_t w = 0; w < words_; ++w) {
      if ((covered[w] | suffix_[from][w]) != full_[w]) return false;
    }
    return true;
  }

  void offer(const std::vector<int>& chosen, Cost weight) {
    if (!found_ || weight < best_weight_ ||
        (weight == best_weight_ && std::lexicographical_compare(chosen.begin(), chosen.end(), best_.begin(), best_.end()))) {
      found_ = true;
      best_weight_ = weight;
      best_ = chosen;
    }
  }

  void visit(std::size_t i, const Bits& covered, Cost weight, std::vector<int>& chosen) {
    if (found_ && weight > best_weight_) return;
    if (complete(covered)) {
      // Appending further sets only makes the index list lexicographically larger.
      offer(chosen, weight);
      return;
    }
    if (i == bits_.size() || !can_finish(covered, i)) return;

    Bits with = covered;
    for (std::size_t w = 0; w < words_; ++w) with[w] |= bits_[i][w];
    chosen.push_back(static_cast<int>(i));
    visit(i + 1, with, weight + inst_.weights[i], chosen);
    chosen.pop_back();
    visit(i + 1, covered, weight, chosen);
  }

  const WeightedSetCoverInstance& inst_;
  std::size_t words_;
  std::vector<Bits> bits_;
  std::vector<Bits> suffix_;
  Bits full_;
  bool found_ = false;
  Cost best_weight_;
  std::vector<int> best_;
};

}  // namespace

Cover exact_solve(const WeightedSetCoverInstance& inst) {
  inst.check();
  if (inst.set_count() > kExactSetCoverMaxSets) {
    throw TooLarge("exact set cover is limited to " + std::to_string(kExactSetCoverMaxSets) + " sets, got " +
                   std::to_string(inst.set_count()));
  }
  if (!inst.feasible()) throw_infeasible(inst);
  return ExactSearch(inst).run();
}

Cost cover_weight(const WeightedSetCoverInstance& inst, const std::vector<int>& chosen) {
  return sum_at(inst.weights, chosen);
}

bool covers_universe(const WeightedSetCoverInstance& inst, const std::vector<int>& chosen) {
  std::vector<char> hit(static_cast<std::size_t>(inst.universe_size), 0);
  for (int i : chosen) {
    for (int e : inst.sets[static_cast<std::size_t>(i)]) hit[static_cast<std::size_t>(e)] = 1;
  }
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

AccessibilityReduction reduce_accessibility_to_wsc(const StructuredSystem& system) {
  require_valid(system);
  const auto scc = decompose_sccs(build_state_digraph(system));
  const auto tables = coverage(system, scc);
  AccessibilityReduction out;
  out.instance.universe_size = scc.q();
  out.instance.sets = tables.input_covers;
  out.instance.weights = system.cost_u;
  for (int c : scc.non_top) out.element_states.push_back(scc.components[static_cast<std::size_t>(c)].states);
  return out;
}

AccessibilityReduction reduce_sensability_to_wsc(const StructuredSystem& system) {
  require_valid(system);
  return reduce_accessibility_to_wsc(transpose_dual(system));
}

Selection cover_to_selection(const Cover& cover) {
  Selection sel;
  sel.inputs = cover.chosen;
  return sel.canonicalize();
}

Selection cover_to_output_selection(const Cover& cover) {
  Selection sel;
  sel.outputs = cover.chosen;
  return sel.canonicalize();
}

StructuredSystem reduce_wsc_to_accessibility(const WeightedSetCoverInstance& inst) {
  inst.check();
  if (inst.universe_size < 1) throw InvalidArgument("the reduction needs a universe of at least one element");
  const int n = inst.universe_size;
  StructuredSystem system;
  system.a = SparsityPattern::diagonal(n);
  system.b = SparsityPattern(n, inst.set_count());
  for (int j = 0; j < inst.set_count(); ++j) {
    for (int e : inst.sets[static_cast<std::size_t>(j)]) system.b.add(e, j);
  }
  system.b.normalize();
  system.c = SparsityPattern(0, n);
  system.k = CompleteFeedback{};
  system.cost_u = inst.weights;
  return system;
}

Cover selection_to_cover(const WeightedSetCoverInstance& inst, const Selection& sel) {
  inst.check();
  Selection canon = sel;
  canon.canonicalize();
  for (int i : canon.inputs) {
    if (i < 0 || i >= inst.set_count()) throw InvalidArgument("input index " + std::to_string(i + 1) + " out of range");
  }
  if (!covers_universe(inst, canon.inputs)) {
    std::vector<char> hit(static_cast<std::size_t>(inst.universe_size), 0);
    for (int i : canon.inputs) {
      for (int e : inst.sets[static_cast<std::size_t>(i)]) hit[static_cast<std::size_t>(e)] = 1;
    }
    std::vector<int> missing;
    for (int e = 0; e < inst.universe_size; ++e) {
      if (!hit[static_cast<std::size_t>(e)]) missing.push_back(e);
    }
    throw InfeasibleSelection("selection leaves states inaccessible",
                              "states " + element_list(missing) + " are not accessible");
  }
  Cover cover;
  cover.chosen = canon.inputs;
  cover.weight = cover_weight(inst, cover.chosen);
  return cover;
}

double harmonic(int d) {
  double h = 0.0;
  for (int i = 1; i <= d; ++i) h += 1.0 / i;
  return h;
}

}  // namespace ioselect
