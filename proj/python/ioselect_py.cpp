// Thin JSON-text bridge; the Python package converts to and from dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "ioselect/json_io.hpp"
#include "ioselect/oracle_bench.hpp"
#include "ioselect/selector.hpp"
#include "ioselect/set_cover.hpp"

namespace py = pybind11;
using namespace ioselect;

namespace {

StructuredSystem load_system(const std::string& text) { return system_from_json(parse_json_text(text, "system")); }

std::vector<int> zero_based(const std::vector<int>& one_based, int limit, const char* what) {
  std::vector<int> out;
  for (int i : one_based) {
    if (i < 1 || i > limit) throw InvalidArgument(std::string(what) + " index " + std::to_string(i) + " out of range");
    out.push_back(i - 1);
  }
  return out;
}

std::string select_json(const std::string& text, bool exact, bool trace) {
  const auto system = load_system(text);
  SelectOptions options;
  options.exact_set_cover = exact;
  auto report = select_min_cost_io(system, options);
  Json out = report_to_json(report, trace);
  if (exact) {
    const auto oracle = exact_select(system);
    attach_oracle(report, oracle);
    out = report_to_json(report, trace);
    Json block;
    block["selection"] = selection_to_json(oracle.selection);
    block["cost"] = oracle.cost.to_string();
    block["ratio"] = oracle.cost.units() == 0 ? Json(nullptr)
                                               : Json(report.total_cost.to_double() / oracle.cost.to_double());
    out["oracle"] = block;
  }
  return out.dump();
}

std::string check_json(const std::string& text, std::optional<std::vector<int>> inputs,
                       std::optional<std::vector<int>> outputs) {
  const auto system = load_system(text);
  Selection sel = Selection::all(system);
  if (inputs) sel.inputs = zero_based(*inputs, system.m(), "input");
  if (outputs) sel.outputs = zero_based(*outputs, system.p(), "output");
  sel.canonicalize();
  const auto status = check_no_sfm(system, sel);
  Json out;
  out["selection"] = selection_to_json(sel);
  out["no_sfm"] = status == SfmStatus::kNoSfm;
  out["status"] = sfm_status_name(status);
  out["witness"] = sfm_witness(system, sel);
  return out.dump();
}

std::string exact_select_json(const std::string& text) {
  const auto r = exact_select(load_system(text));
  Json out;
  out["selection"] = selection_to_json(r.selection);
  out["cost"] = r.cost.to_string();
  return out.dump();
}

std::string generate_json(int n, int m, int p, double state_density, double input_density, double output_density,
                          const std::string& cost_lo, const std::string& cost_hi, int cost_decimals,
                          std::uint64_t seed, bool discrete, bool require_feasible, const std::string& structure,
                          int max_attempts) {
  GeneratorConfig c;
  c.n = n;
  c.m = m;
  c.p = p;
  c.state_density = state_density;
  c.input_density = input_density;
  c.output_density = output_density;
  c.cost_lo = Cost::parse(cost_lo);
  c.cost_hi = Cost::parse(cost_hi);
  c.cost_decimals = cost_decimals;
  c.seed = seed;
  c.mode = discrete ? TimeMode::kDiscrete : TimeMode::kContinuous;
  c.require_feasible = require_feasible;
  if (structure == "random") c.state_structure = StateStructure::kRandom;
  else if (structure == "irreducible") c.state_structure = StateStructure::kIrreducible;
  else if (structure == "diagonal") c.state_structure = StateStructure::kDiagonal;
  else throw InvalidArgument("unknown state structure \"" + structure + "\"");
  c.max_attempts = max_attempts;
  return system_to_json(generate(c)).dump();
}

std::string solve_setcover_json(const std::string& text, bool exact, bool trace) {
  const auto inst = wsc_from_json(parse_json_text(text, "instance"));
  const auto cover = exact ? exact_solve(inst) : greedy_solve(inst);
  Json out = cover_to_json(cover, trace);
  out["max_set_size"] = inst.max_set_size();
  return out.dump();
}

std::string reduce_setcover_json(const std::string& text, bool dual) {
  const auto system = load_system(text);
  return wsc_to_json((dual ? reduce_sensability_to_wsc(system) : reduce_accessibility_to_wsc(system)).instance).dump();
}

std::string setcover_to_system_json(const std::string& text) {
  return system_to_json(reduce_wsc_to_accessibility(wsc_from_json(parse_json_text(text, "instance")))).dump();
}

}  // namespace

PYBIND11_MODULE(_ioselect, mod) {
  mod.doc() = "Minimum-cost input/output selection, JSON text in and out";

  auto error = py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);
  py::register_exception<Infeasible>(mod, "Infeasible", error.ptr());
  py::register_exception<ParseError>(mod, "ParseError", error.ptr());

  mod.def("select", &select_json, py::arg("system"), py::arg("exact") = false, py::arg("trace") = false);
  mod.def("check", &check_json, py::arg("system"), py::arg("inputs") = py::none(), py::arg("outputs") = py::none());
  mod.def("exact_select", &exact_select_json, py::arg("system"));
  mod.def("generate", &generate_json, py::arg("n") = 4, py::arg("m") = 2, py::arg("p") = 2,
          py::arg("state_density") = 0.3, py::arg("input_density") = 0.3, py::arg("output_density") = 0.3,
          py::arg("cost_lo") = "1", py::arg("cost_hi") = "10", py::arg("cost_decimals") = 0, py::arg("seed") = 0,
          py::arg("discrete") = false, py::arg("require_feasible") = true, py::arg("structure") = "random",
          py::arg("max_attempts") = 1000);
  mod.def("digest", [](const std::string& text) { return instance_digest(load_system(text)); }, py::arg("system"));
  mod.def("solve_setcover", &solve_setcover_json, py::arg("instance"), py::arg("exact") = false,
          py::arg("trace") = false);
  mod.def("reduce_setcover", &reduce_setcover_json, py::arg("system"), py::arg("dual") = false);
  mod.def("setcover_to_system", &setcover_to_system_json, py::arg("instance"));
}
