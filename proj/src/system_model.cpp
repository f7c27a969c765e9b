#include "ioselect/system_model.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ioselect/errors.hpp"

namespace ioselect {

SparsityPattern SparsityPattern::diagonal(int size) {
  SparsityPattern out(size, size);
  for (int i = 0; i < size; ++i) out.add(i, i);
  return out;
}

SparsityPattern SparsityPattern::full(int rows, int cols) {
  SparsityPattern out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out.add(i, j);
  }
  return out;
}

bool SparsityPattern::contains(int row, int col) const {
  return std::find(stars_.begin(), stars_.end(), Star{row, col}) != stars_.end();
}

void SparsityPattern::normalize() {
  std::sort(stars_.begin(), stars_.end());
  stars_.erase(std::unique(stars_.begin(), stars_.end()), stars_.end());
}

SparsityPattern SparsityPattern::transposed() const {
  SparsityPattern out(cols_, rows_);
  out.stars_.reserve(stars_.size());
  for (const Star& s : stars_) out.add(s.col, s.row);
  out.normalize();
  return out;
}

namespace {

// old index -> new index, -1 when dropped.
std::vector<int> renumbering(int size, const std::vector<int>& kept) {
  std::vector<int> map(static_cast<std::size_t>(size), -1);
  for (std::size_t k = 0; k < kept.size(); ++k) map[static_cast<std::size_t>(kept[k])] = static_cast<int>(k);
  return map;
}

}  // namespace

SparsityPattern SparsityPattern::select_rows(const std::vector<int>& rows) const {
  const auto map = renumbering(rows_, rows);
  SparsityPattern out(static_cast<int>(rows.size()), cols_);
  for (const Star& s : stars_) {
    if (int r = map[static_cast<std::size_t>(s.row)]; r >= 0) out.add(r, s.col);
  }
  out.normalize();
  return out;
}

SparsityPattern SparsityPattern::select_cols(const std::vector<int>& cols) const {
  const auto map = renumbering(cols_, cols);
  SparsityPattern out(rows_, static_cast<int>(cols.size()));
  for (const Star& s : stars_) {
    if (int c = map[static_cast<std::size_t>(s.col)]; c >= 0) out.add(s.row, c);
  }
  out.normalize();
  return out;
}

Selection Selection::all(const StructuredSystem& system) {
  Selection sel;
  sel.inputs.resize(static_cast<std::size_t>(system.m()));
  sel.outputs.resize(static_cast<std::size_t>(system.p()));
  std::iota(sel.inputs.begin(), sel.inputs.end(), 0);
  std::iota(sel.outputs.begin(), sel.outputs.end(), 0);
  return sel;
}

Selection& Selection::canonicalize() {
  for (auto* v : {&inputs, &outputs}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  return *this;
}

namespace {

void check_pattern(const SparsityPattern& pattern, const std::string& name,
                   std::vector<std::string>& out) {
  std::set<Star> seen;
  for (const Star& s : pattern.stars()) {
    const std::string where = name + " star (" + std::to_string(s.row + 1) + "," +
                              std::to_string(s.col + 1) + ")";
    if (s.row < 0 || s.row >= pattern.rows()) out.push_back(where + ": row out of range");
    if (s.col < 0 || s.col >= pattern.cols()) out.push_back(where + ": column out of range");
    if (!seen.insert(s).second) out.push_back(where + ": duplicate star");
  }
}

void check_costs(const std::vector<Cost>& costs, const std::string& kind,
                 std::vector<std::string>& out) {
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (costs[i] < Cost{}) out.push_back("negative cost at " + kind + " " + std::to_string(i + 1));
  }
}

}  // namespace

ValidationReport validate(const StructuredSystem& system) {
  ValidationReport report;
  auto& v = report.violations;
  const int n = system.n();
  if (n < 1) v.push_back("state count n must be at least 1");
  if (system.a.cols() != n) v.push_back("A must be square");
  if (system.b.rows() != n) v.push_back("B must have n rows");
  if (system.c.cols() != n) v.push_back("C must have n columns");
  if (system.m() < 0 || system.p() < 0) v.push_back("negative input or output count");
  if (static_cast<int>(system.cost_u.size()) != system.m()) {
    v.push_back("cost_u has " + std::to_string(system.cost_u.size()) + " entries, expected m=" +
                std::to_string(system.m()));
  }
  if (static_cast<int>(system.cost_y.size()) != system.p()) {
    v.push_back("cost_y has " + std::to_string(system.cost_y.size()) + " entries, expected p=" +
                std::to_string(system.p()));
  }
  check_pattern(system.a, "A", v);
  check_pattern(system.b, "B", v);
  check_pattern(system.c, "C", v);
  if (const auto* k = std::get_if<SparsityPattern>(&system.k)) {
    if (k->rows() != system.m() || k->cols() != system.p()) v.push_back("K must be m x p");
    check_pattern(*k, "K", v);
  }
  check_costs(system.cost_u, "input", v);
  check_costs(system.cost_y, "output", v);
  return report;
}

void require_valid(const StructuredSystem& system) {
  const auto report = validate(system);
  if (report.ok()) return;
  std::string msg = "invalid system:";
  for (const auto& s : report.violations) msg += " " + s + ";";
  msg.pop_back();
  throw InvalidArgument(msg);
}

void require_valid(const StructuredSystem& system, const Selection& sel) {
  for (int i : sel.inputs) {
    if (i < 0 || i >= system.m()) {
      throw InvalidArgument("input index " + std::to_string(i + 1) + " out of range");
    }
  }
  for (int j : sel.outputs) {
    if (j < 0 || j >= system.p()) {
      throw InvalidArgument("output index " + std::to_string(j + 1) + " out of range");
    }
  }
}

Restriction restrict_to(const StructuredSystem& system, const Selection& sel) {
  require_valid(system, sel);
  Selection kept = sel;
  kept.canonicalize();
  Restriction out;
  out.input_map = kept.inputs;
  out.output_map = kept.outputs;
  StructuredSystem& r = out.system;
  r.a = system.a;
  r.b = system.b.select_cols(kept.inputs);
  r.c = system.c.select_rows(kept.outputs);
  if (const auto* k = std::get_if<SparsityPattern>(&system.k)) {
    r.k = k->select_rows(kept.inputs).select_cols(kept.outputs);
  } else {
    r.k = CompleteFeedback{};
  }
  for (int i : kept.inputs) r.cost_u.push_back(system.cost_u[static_cast<std::size_t>(i)]);
  for (int j : kept.outputs) r.cost_y.push_back(system.cost_y[static_cast<std::size_t>(j)]);
  r.mode = system.mode;
  return out;
}

Cost selection_cost(const StructuredSystem& system, const Selection& sel) {
  require_valid(system, sel);
  return sum_at(system.cost_u, sel.inputs) + sum_at(system.cost_y, sel.outputs);
}

StructuredSystem transpose_dual(const StructuredSystem& system) {
  StructuredSystem dual;
  dual.a = system.a.transposed();
  dual.b = system.c.transposed();
  dual.c = SparsityPattern(0, system.n());
  dual.k = CompleteFeedback{};
  dual.cost_u = system.cost_y;
  dual.mode = system.mode;
  return dual;
}

}  // namespace ioselect
