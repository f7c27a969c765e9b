#include "ioselect/json_io.hpp"

#include <algorithm>

#include "ioselect/errors.hpp"

namespace ioselect {

namespace {

Json one_based(const std::vector<int>& indices) {
  Json out = Json::array();
  for (int i : indices) out.push_back(i + 1);
  return out;
}

Json star_list(const SparsityPattern& pattern) {
  Json out = Json::array();
  for (const Star& s : pattern.stars()) out.push_back(Json::array({s.row + 1, s.col + 1}));
  return out;
}

Json cost_list(const std::vector<Cost>& costs) {
  Json out = Json::array();
  for (const Cost& c : costs) out.push_back(c.to_string());
  return out;
}

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object()) throw ParseError("expected a JSON object");
  const auto it = doc.find(name);
  if (it == doc.end()) throw ParseError(std::string("missing field \"") + name + "\"");
  return *it;
}

int count_field(const Json& doc, const char* name) {
  const Json& v = field(doc, name);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0 || v.get<std::int64_t>() > 1'000'000) {
    throw ParseError(std::string("field \"") + name + "\" must be a nonnegative integer");
  }
  return v.get<int>();
}

int index_value(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < 1 || x > 1'000'000) throw ParseError(where + ": index " + std::to_string(x) + " is not 1-based");
  return static_cast<int>(x - 1);
}

SparsityPattern pattern_field(const Json& doc, const char* name, int rows, int cols) {
  const Json& v = field(doc, name);
  if (!v.is_array()) throw ParseError(std::string("field \"") + name + "\" must be a list of [row, col] pairs");
  SparsityPattern out(rows, cols);
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::string where = std::string(name) + "[" + std::to_string(k) + "]";
    if (!v[k].is_array() || v[k].size() != 2) throw ParseError(where + ": expected a [row, col] pair");
    out.add(index_value(v[k][0], where), index_value(v[k][1], where));
  }
  return out;
}

Cost cost_value(const Json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": costs are decimal strings");
  try {
    return Cost::parse(v.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

std::vector<Cost> cost_field(const Json& doc, const char* name) {
  const Json& v = field(doc, name);
  if (!v.is_array()) throw ParseError(std::string("field \"") + name + "\" must be a list of decimal strings");
  std::vector<Cost> out;
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(cost_value(v[k], std::string(name) + "[" + std::to_string(k) + "]"));
  return out;
}

void require_length(const std::vector<Cost>& costs, int expected, const char* name) {
  if (static_cast<int>(costs.size()) != expected) {
    throw ParseError(std::string("field \"") + name + "\" has " + std::to_string(costs.size()) + " entries, expected " +
                     std::to_string(expected));
  }
}

}  // namespace

Json system_to_json(const StructuredSystem& system) {
  Json doc;
  doc["n"] = system.n();
  doc["m"] = system.m();
  doc["p"] = system.p();
  doc["A"] = star_list(system.a);
  doc["B"] = star_list(system.b);
  doc["C"] = star_list(system.c);
  if (system.feedback_complete()) {
    doc["K"] = "complete";
  } else {
    doc["K"] = star_list(std::get<SparsityPattern>(system.k));
  }
  doc["cost_u"] = cost_list(system.cost_u);
  doc["cost_y"] = cost_list(system.cost_y);
  doc["mode"] = system.mode == TimeMode::kDiscrete ? "discrete" : "continuous";
  return doc;
}

StructuredSystem system_from_json(const Json& doc) {
  const int n = count_field(doc, "n");
  const int m = count_field(doc, "m");
  const int p = count_field(doc, "p");
  StructuredSystem system;
  system.a = pattern_field(doc, "A", n, n);
  system.b = pattern_field(doc, "B", n, m);
  system.c = pattern_field(doc, "C", p, n);
  const Json& k = field(doc, "K");
  if (k.is_string()) {
    if (k.get<std::string>() != "complete") throw ParseError("field \"K\" must be \"complete\" or a pair list");
    system.k = CompleteFeedback{};
  } else {
    system.k = pattern_field(doc, "K", m, p);
  }
  system.cost_u = cost_field(doc, "cost_u");
  system.cost_y = cost_field(doc, "cost_y");
  require_length(system.cost_u, m, "cost_u");
  require_length(system.cost_y, p, "cost_y");
  if (const auto it = doc.find("mode"); it != doc.end()) {
    if (*it == "continuous") {
      system.mode = TimeMode::kContinuous;
    } else if (*it == "discrete") {
      system.mode = TimeMode::kDiscrete;
    } else {
      throw ParseError("field \"mode\" must be \"continuous\" or \"discrete\"");
    }
  }
  const auto report = validate(system);
  if (!report.ok()) {
    std::string joined;
    for (const auto& v : report.violations) joined += (joined.empty() ? "" : "; ") + v;
    throw ParseError("invalid instance: " + joined);
  }
  for (auto* pattern : {&system.a, &system.b, &system.c}) pattern->normalize();
  if (!system.feedback_complete()) std::get<SparsityPattern>(system.k).normalize();
  return system;
}

Json wsc_to_json(const WeightedSetCoverInstance& inst) {
  Json doc;
  doc["N"] = inst.universe_size;
  Json sets = Json::array();
  for (const auto& s : inst.sets) sets.push_back(one_based(s));
  doc["sets"] = std::move(sets);
  doc["weights"] = cost_list(inst.weights);
  return doc;
}

WeightedSetCoverInstance wsc_from_json(const Json& doc) {
  WeightedSetCoverInstance inst;
  inst.universe_size = count_field(doc, "N");
  const Json& sets = field(doc, "sets");
  if (!sets.is_array()) throw ParseError("field \"sets\" must be a list of element lists");
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const std::string where = "sets[" + std::to_string(k) + "]";
    if (!sets[k].is_array()) throw ParseError(where + ": expected a list of elements");
    std::vector<int> elements;
    for (const Json& e : sets[k]) {
      const int x = index_value(e, where);
      if (x >= inst.universe_size) throw ParseError(where + ": element " + std::to_string(x + 1) + " exceeds N");
      elements.push_back(x);
    }
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    inst.sets.push_back(std::move(elements));
  }
  inst.weights = cost_field(doc, "weights");
  if (inst.weights.size() != inst.sets.size()) {
    throw ParseError("field \"weights\" has " + std::to_string(inst.weights.size()) + " entries for " +
                     std::to_string(inst.sets.size()) + " sets");
  }
  for (std::size_t k = 0; k < inst.weights.size(); ++k) {
    if (inst.weights[k] < Cost{}) throw ParseError("weights[" + std::to_string(k) + "]: negative weight");
  }
  return inst;
}

Json parse_json_text(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto head = text.substr(0, offset);
    const auto line = 1 + std::count(head.begin(), head.end(), '\n');
    const auto nl = head.rfind('\n');
    const auto column = nl == std::string_view::npos ? offset + 1 : offset - nl;
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": malformed JSON");
  }
}

Json selection_to_json(const Selection& sel) {
  Json doc;
  doc["inputs"] = one_based(sel.inputs);
  doc["outputs"] = one_based(sel.outputs);
  return doc;
}

Json cover_to_json(const Cover& cover, bool with_trace) {
  Json doc;
  doc["cover"] = one_based(cover.chosen);
  doc["weight"] = cover.weight.to_string();
  if (with_trace) {
    Json steps = Json::array();
    for (const auto& step : cover.trace) {
      Json s;
      s["set"] = step.set + 1;
      s["newly_covered"] = one_based(step.newly_covered);
      s["weight"] = step.weight.to_string();
      steps.push_back(std::move(s));
    }
    doc["trace"] = std::move(steps);
  }
  return doc;
}

Json report_to_json(const SelectionReport& report, bool with_trace) {
  Json doc;
  doc["selection"] = selection_to_json(report.selection);
  doc["total_cost"] = report.total_cost.to_string();
  Json stages;
  stages["accessibility"] = report.accessibility.cost.to_string();
  stages["sensability"] = report.sensability.cost.to_string();
  stages["cycle"] = report.cycle ? Json(report.cycle->cost.to_string()) : Json(nullptr);
  doc["stage_costs"] = std::move(stages);
  doc["lower_bound"] = report.lower_bound.to_string();
  doc["special_case"] = special_case_name(report.special_case);
  Json tags = Json::array();
  for (auto tag : report.special_cases) tags.push_back(special_case_name(tag));
  doc["special_cases"] = std::move(tags);
  doc["guarantee"] = guarantee_text(report.special_case);
  doc["no_sfm"] = report.no_sfm;
  if (with_trace) {
    Json trace;
    Json sel;
    sel["accessibility"] = selection_to_json(report.accessibility.selection);
    sel["sensability"] = selection_to_json(report.sensability.selection);
    sel["cycle"] = report.cycle ? selection_to_json(report.cycle->selection) : Json(nullptr);
    trace["stage_selections"] = std::move(sel);
    trace["accessibility_greedy"] = cover_to_json(report.accessibility_cover, true);
    trace["sensability_greedy"] = cover_to_json(report.sensability_cover, true);
    if (report.exact_accessibility) trace["accessibility_exact"] = cover_to_json(*report.exact_accessibility, false);
    if (report.exact_sensability) trace["sensability_exact"] = cover_to_json(*report.exact_sensability, false);
    if (report.matching && report.bipartite) {
      Json edges = Json::array();
      for (const auto& e : report.matching->edges) {
        Json edge;
        edge["left"] = report.bipartite->left_name(e.left);
        edge["right"] = report.bipartite->right_name(e.right);
        edge["class"] = bipartite_class_name(e.cls);
        edge["cost"] = e.cost.to_string();
        edges.push_back(std::move(edge));
      }
      trace["matching"] = std::move(edges);
    }
    Json witness = Json::array();
    for (const auto& w : report.feedback_witness) {
      Json item;
      item["state"] = w.state + 1;
      item["found"] = w.found;
      if (w.found) {
        item["feedback_edge"] = Json::array({"y" + std::to_string(w.output + 1), "u" + std::to_string(w.input + 1)});
      }
      witness.push_back(std::move(item));
    }
    trace["feedback_witness"] = std::move(witness);
    doc["trace"] = std::move(trace);
  }
  return doc;
}

}  // namespace ioselect
