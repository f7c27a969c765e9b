#include "ioselect/selector.hpp"

#include <algorithm>
#include <chrono>

#include "ioselect/errors.hpp"

namespace ioselect {

const char* sfm_status_name(SfmStatus status) {
  switch (status) {
    case SfmStatus::kNoSfm: return "no SFM";
    case SfmStatus::kType1: return "Type-1";
    case SfmStatus::kType2: return "Type-2";
    case SfmStatus::kBoth: return "Type-1 and Type-2";
  }
  return "?";
}

SfmStatus check_no_sfm(const StructuredSystem& system, const Selection& sel) {
  require_valid(system);
  require_valid(system, sel);
  const bool type1_ok = condition_a_holds(system, sel);
  if (system.mode == TimeMode::kDiscrete) return type1_ok ? SfmStatus::kNoSfm : SfmStatus::kType1;
  const bool type2_ok = cycle_cover_check(system, sel);
  if (type1_ok && type2_ok) return SfmStatus::kNoSfm;
  if (!type1_ok && !type2_ok) return SfmStatus::kBoth;
  return type1_ok ? SfmStatus::kType2 : SfmStatus::kType1;
}

std::string sfm_witness(const StructuredSystem& system, const Selection& sel) {
  std::string out;
  std::string lonely;
  for (const auto& w : condition_a_witness(system, sel)) {
    if (!w.found) lonely += (lonely.empty() ? "" : ",") + ("x" + std::to_string(w.state + 1));
  }
  if (!lonely.empty()) out = "states {" + lonely + "} share no SCC with a feedback edge";
  if (system.mode == TimeMode::kContinuous) {
    const auto graph = build_bipartite(restrict_to(system, sel));
    const auto hall = hall_violator(graph);
    if (!hall.empty()) {
      std::string names;
      for (int l : hall) names += (names.empty() ? "" : ",") + graph.left_name(l);
      out += (out.empty() ? "" : "; ") + ("no disjoint cycle cover: {" + names + "} violates Hall's condition");
    }
  }
  return out;
}

const char* special_case_name(SpecialCase tag) {
  switch (tag) {
    case SpecialCase::kGeneral: return "general";
    case SpecialCase::kIrreducible: return "irreducible";
    case SpecialCase::kStatePm: return "state_pm";
    case SpecialCase::kSingleNonTop: return "single_nontop";
    case SpecialCase::kSingleNonBottom: return "single_nonbottom";
    case SpecialCase::kDiscrete: return "discrete";
  }
  return "?";
}

std::string guarantee_text(SpecialCase tag) {
  switch (tag) {
    case SpecialCase::kIrreducible: return "optimal";
    case SpecialCase::kStatePm:
    case SpecialCase::kDiscrete: return "2(log mu_max + log eta_max)";
    case SpecialCase::kSingleNonTop: return "3 log eta_max";
    case SpecialCase::kSingleNonBottom: return "3 log mu_max";
    case SpecialCase::kGeneral: return "2 log n";
  }
  return "";
}

namespace {

bool state_graph_has_perfect_matching(const StructuredSystem& system) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(system.n()));
  for (const Star& s : system.a.stars()) adj[static_cast<std::size_t>(s.row)].push_back(s.col);
  const auto match = hopcroft_karp(system.n(), system.n(), adj);
  return std::none_of(match.begin(), match.end(), [](int r) { return r < 0; });
}

}  // namespace

std::vector<SpecialCase> detect_special_cases(const StructuredSystem& system) {
  require_valid(system);
  const auto scc = decompose_sccs(build_state_digraph(system));
  std::vector<SpecialCase> tags;
  if (scc.components.size() == 1) tags.push_back(SpecialCase::kIrreducible);
  if (state_graph_has_perfect_matching(system)) tags.push_back(SpecialCase::kStatePm);
  if (system.mode == TimeMode::kDiscrete) tags.push_back(SpecialCase::kDiscrete);
  if (scc.q() == 1) tags.push_back(SpecialCase::kSingleNonTop);
  if (scc.k() == 1) tags.push_back(SpecialCase::kSingleNonBottom);
  if (tags.empty()) tags.push_back(SpecialCase::kGeneral);
  return tags;
}

SpecialCase detect_special_case(const StructuredSystem& system) { return detect_special_cases(system).front(); }

namespace {

// Cheapest index with a nonempty pattern line, lowest index on ties.
int cheapest_with_star(const std::vector<Cost>& costs, const std::vector<char>& has_star) {
  int best = -1;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (!has_star[i]) continue;
    if (best < 0 || costs[i] < costs[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
  }
  return best;
}

StageResult stage_from(const StructuredSystem& system, Selection sel) {
  sel.canonicalize();
  StageResult r;
  r.cost = selection_cost(system, sel);
  r.selection = std::move(sel);
  return r;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

Selection merge(const Selection& a, const Selection& b) {
  Selection out = a;
  out.inputs.insert(out.inputs.end(), b.inputs.begin(), b.inputs.end());
  out.outputs.insert(out.outputs.end(), b.outputs.begin(), b.outputs.end());
  return out.canonicalize();
}

}  // namespace

SelectionReport select_min_cost_io(const StructuredSystem& system, const SelectOptions& options) {
  require_valid(system);
  if (!system.feedback_complete()) {
    throw InvalidArgument("input/output selection requires the complete feedback pattern");
  }
  const Selection everything = Selection::all(system);
  if (const auto status = check_no_sfm(system, everything); status != SfmStatus::kNoSfm) {
    throw SystemHasSfms(status, sfm_witness(system, everything));
  }

  SelectionReport report;
  report.special_cases = detect_special_cases(system);
  report.special_case = report.special_cases.front();
  const bool irreducible = report.special_case == SpecialCase::kIrreducible;
  const bool discrete = system.mode == TimeMode::kDiscrete;

  const auto access = reduce_accessibility_to_wsc(system);
  const auto sense = reduce_sensability_to_wsc(system);
  if (options.exact_set_cover) {
    report.exact_accessibility = exact_solve(access.instance);
    report.exact_sensability = exact_solve(sense.instance);
  }

  if (!discrete) {
    const auto started = std::chrono::steady_clock::now();
    report.bipartite = build_bipartite(system);
    report.matching = min_cost_perfect_matching(*report.bipartite);
    const auto io = extract_io(system, *report.bipartite, *report.matching);
    report.cycle = StageResult{io.selection, io.cost};
    report.timings.cycle_ms = elapsed_ms(started);
  }

  if (irreducible) {
    // One SCC: any used feedback edge closes every state into it.
    if (report.cycle && !report.cycle->selection.inputs.empty()) {
      report.selection = report.cycle->selection;
    } else {
      std::vector<char> drives(static_cast<std::size_t>(system.m()), 0);
      std::vector<char> senses(static_cast<std::size_t>(system.p()), 0);
      for (const Star& s : system.b.stars()) drives[static_cast<std::size_t>(s.col)] = 1;
      for (const Star& s : system.c.stars()) senses[static_cast<std::size_t>(s.row)] = 1;
      Selection pair;
      pair.inputs = {cheapest_with_star(system.cost_u, drives)};
      pair.outputs = {cheapest_with_star(system.cost_y, senses)};
      report.accessibility = stage_from(system, Selection{pair.inputs, {}});
      report.sensability = stage_from(system, Selection{{}, pair.outputs});
      report.selection = pair;
    }
  } else {
    auto started = std::chrono::steady_clock::now();
    report.accessibility_cover = greedy_solve(access.instance);
    report.accessibility = stage_from(system, cover_to_selection(report.accessibility_cover));
    report.timings.accessibility_ms = elapsed_ms(started);
    started = std::chrono::steady_clock::now();
    report.sensability_cover = greedy_solve(sense.instance);
    report.sensability = stage_from(system, cover_to_output_selection(report.sensability_cover));
    report.timings.sensability_ms = elapsed_ms(started);
    Selection chosen = merge(report.accessibility.selection, report.sensability.selection);
    if (report.cycle) chosen = merge(chosen, report.cycle->selection);
    report.selection = chosen;
  }
  report.selection.canonicalize();
  report.total_cost = selection_cost(system, report.selection);

  Cost bound = report.cycle ? report.cycle->cost : Cost{};
  if (report.exact_accessibility && report.exact_sensability) {
    bound = std::max(bound, report.exact_accessibility->weight + report.exact_sensability->weight);
  }
  report.lower_bound = bound;
  report.feedback_witness = condition_a_witness(system, report.selection);
  report.no_sfm = check_no_sfm(system, report.selection) == SfmStatus::kNoSfm;
  return report;
}

}  // namespace ioselect
