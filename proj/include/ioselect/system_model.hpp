#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ioselect/cost.hpp"

namespace ioselect {

/// A starred entry of a sparsity pattern, 0-based.
struct Star {
  int row = 0;
  int col = 0;
  constexpr auto operator<=>(const Star&) const = default;
};

/// A {0,*} matrix stored as the list of its starred positions.
///
/// Construction does not check anything; `validate` on the owning system
/// reports out-of-range and duplicate stars. `normalize` sorts and drops
/// duplicates.
class SparsityPattern {
 public:
  SparsityPattern() = default;
  SparsityPattern(int rows, int cols, std::vector<Star> stars = {})
      : rows_(rows), cols_(cols), stars_(std::move(stars)) {}

  static SparsityPattern diagonal(int size);
  static SparsityPattern full(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<Star>& stars() const { return stars_; }
  std::size_t nnz() const { return stars_.size(); }

  /// Linear scan; meant for tests and small patterns.
  bool contains(int row, int col) const;

  void add(int row, int col) { stars_.push_back({row, col}); }
  void normalize();

  SparsityPattern transposed() const;
  /// Keeps the listed rows/cols in the given order, renumbered 0..k-1.
  SparsityPattern select_rows(const std::vector<int>& rows) const;
  SparsityPattern select_cols(const std::vector<int>& cols) const;

  bool operator==(const SparsityPattern&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Star> stars_;
};

/// Token for the complete feedback pattern (every output feeds every input).
struct CompleteFeedback {
  bool operator==(const CompleteFeedback&) const = default;
};
using FeedbackPattern = std::variant<CompleteFeedback, SparsityPattern>;

enum class TimeMode { kContinuous, kDiscrete };

/// Sparsity patterns (A, B, C, K) plus per-input and per-output costs.
struct StructuredSystem {
  SparsityPattern a;  // n x n
  SparsityPattern b;  // n x m
  SparsityPattern c;  // p x n
  FeedbackPattern k = CompleteFeedback{};
  std::vector<Cost> cost_u;  // m entries
  std::vector<Cost> cost_y;  // p entries
  TimeMode mode = TimeMode::kContinuous;

  int n() const { return a.rows(); }
  int m() const { return b.cols(); }
  int p() const { return c.rows(); }
  bool feedback_complete() const { return std::holds_alternative<CompleteFeedback>(k); }

  bool operator==(const StructuredSystem&) const = default;
};

/// Chosen inputs and outputs, 0-based, sorted, unique.
struct Selection {
  std::vector<int> inputs;
  std::vector<int> outputs;

  static Selection all(const StructuredSystem& system);
  /// Sorts and deduplicates both index lists.
  Selection& canonicalize();

  bool operator==(const Selection&) const = default;
  /// Lexicographic on (inputs, outputs) as sorted sequences.
  auto operator<=>(const Selection&) const = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Lists every dimension mismatch, out-of-range or duplicate star, and
/// negative cost. Violation texts use 1-based indices.
ValidationReport validate(const StructuredSystem& system);

/// Throws InvalidArgument with the joined violations when `system` is invalid.
void require_valid(const StructuredSystem& system);

/// Throws InvalidArgument when `sel` names an index outside the system.
void require_valid(const StructuredSystem& system, const Selection& sel);

/// A restricted system and, for each retained input/output, its index in the
/// original system.
struct Restriction {
  StructuredSystem system;
  std::vector<int> input_map;
  std::vector<int> output_map;
};

/// Keeps B columns in `sel.inputs`, C rows in `sel.outputs` and the matching
/// K block. Costs follow their input/output.
Restriction restrict_to(const StructuredSystem& system, const Selection& sel);

/// Sum of p_u over the chosen inputs plus p_y over the chosen outputs.
Cost selection_cost(const StructuredSystem& system, const Selection& sel);

/// (A^T, C^T, p_y) with an empty output side. Accessibility of the result is
/// sensability of `system`; input i of the dual is output i of the original.
StructuredSystem transpose_dual(const StructuredSystem& system);

}  // namespace ioselect
