#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "ioselect/errors.hpp"
#include "ioselect/graph_core.hpp"
#include "ioselect/json_io.hpp"
#include "ioselect/oracle_bench.hpp"
#include "ioselect/selector.hpp"
#include "ioselect/set_cover.hpp"

namespace ioselect::cli {

namespace {

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) { return parse_json_text(read_text(path), path); }

StructuredSystem read_system(const std::string& path, bool force_discrete) {
  StructuredSystem system;
  try {
    system = system_from_json(read_json(path));
  } catch (const ParseError& e) {
    const std::string what = e.what();
    throw ParseError(what.rfind(path, 0) == 0 ? what : path + ": " + what);
  }
  if (force_discrete) system.mode = TimeMode::kDiscrete;
  return system;
}

std::vector<int> zero_based(const std::vector<int>& one_based, int limit, const char* what) {
  std::vector<int> out;
  for (int i : one_based) {
    if (i < 1 || i > limit) {
      throw ParseError(std::string("--") + what + " index " + std::to_string(i) + " outside 1.." + std::to_string(limit));
    }
    out.push_back(i - 1);
  }
  return out;
}

std::string names(char prefix, const std::vector<int>& indices) {
  std::string out;
  for (int i : indices) out += (out.empty() ? "" : " ") + (prefix + std::to_string(i + 1));
  return out.empty() ? "-" : out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ParseError(path + ": cannot write file");
  os << text;
}

struct Formats {
  std::string format = "json";
};

void add_format(CLI::App* cmd, Formats& f) {
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "table"}));
}

// check

struct CheckArgs {
  std::string file;
  std::optional<std::vector<int>> inputs;
  std::optional<std::vector<int>> outputs;
  bool discrete = false;
  Formats fmt;
};

int do_check(const CheckArgs& args, std::ostream& out) {
  const auto system = read_system(args.file, args.discrete);
  Selection sel = Selection::all(system);
  if (args.inputs) sel.inputs = zero_based(*args.inputs, system.m(), "inputs");
  if (args.outputs) sel.outputs = zero_based(*args.outputs, system.p(), "outputs");
  sel.canonicalize();
  const auto status = check_no_sfm(system, sel);
  const std::string witness = status == SfmStatus::kNoSfm ? "" : sfm_witness(system, sel);
  if (args.fmt.format == "table") {
    out << "inputs   " << names('u', sel.inputs) << "\n"
        << "outputs  " << names('y', sel.outputs) << "\n"
        << "status   " << sfm_status_name(status) << "\n";
    if (!witness.empty()) out << "reason   " << witness << "\n";
  } else {
    Json doc;
    doc["selection"] = selection_to_json(sel);
    doc["no_sfm"] = status == SfmStatus::kNoSfm;
    doc["status"] = sfm_status_name(status);
    if (!witness.empty()) doc["witness"] = witness;
    out << doc.dump(2) << "\n";
  }
  return status == SfmStatus::kNoSfm ? kExitOk : kExitInfeasible;
}

// select

struct SelectArgs {
  std::string file;
  bool exact = false;
  bool trace = false;
  bool discrete = false;
  std::string dump_graph;
  std::string dump_matching;
  Formats fmt;
};

int do_select(const SelectArgs& args, std::ostream& out) {
  const auto system = read_system(args.file, args.discrete);
  SelectOptions options;
  options.exact_set_cover = args.exact && system.m() <= kExactSetCoverMaxSets && system.p() <= kExactSetCoverMaxSets;
  auto report = select_min_cost_io(system, options);
  std::optional<ExactSelection> oracle;
  if (args.exact) {
    oracle = exact_select(system);
    attach_oracle(report, *oracle);
  }

  if (!args.dump_graph.empty()) {
    std::ostringstream os;
    write_edge_list(os, build_system_digraph(system));
    write_condensation(os, decompose_sccs(build_state_digraph(system)));
    write_file(args.dump_graph, os.str());
  }
  if (!args.dump_matching.empty()) {
    std::ostringstream os;
    if (report.matching && report.bipartite) write_matching(os, *report.bipartite, *report.matching);
    write_file(args.dump_matching, os.str());
  }

  if (args.fmt.format == "table") {
    out << "inputs         " << names('u', report.selection.inputs) << "\n"
        << "outputs        " << names('y', report.selection.outputs) << "\n"
        << "total cost     " << report.total_cost.to_string() << "\n"
        << "accessibility  " << report.accessibility.cost.to_string() << "\n"
        << "sensability    " << report.sensability.cost.to_string() << "\n"
        << "cycle          " << (report.cycle ? report.cycle->cost.to_string() : "-") << "\n"
        << "lower bound    " << report.lower_bound.to_string() << "\n"
        << "special case   " << special_case_name(report.special_case) << " ("
        << guarantee_text(report.special_case) << ")\n"
        << "no SFM         " << (report.no_sfm ? "yes" : "no") << "\n";
    if (oracle) {
      out << "optimum        " << oracle->cost.to_string() << " with " << names('u', oracle->selection.inputs) << " / "
          << names('y', oracle->selection.outputs) << "\n";
    }
  } else {
    Json doc = report_to_json(report, args.trace);
    if (oracle) {
      Json o;
      o["selection"] = selection_to_json(oracle->selection);
      o["cost"] = oracle->cost.to_string();
      o["ratio"] = oracle->cost == Cost{} ? 1.0 : report.total_cost.to_double() / oracle->cost.to_double();
      doc["oracle"] = std::move(o);
    }
    out << doc.dump(2) << "\n";
  }
  return kExitOk;
}

// set cover

struct ReduceArgs {
  std::string file;
  bool dual = false;
};

int do_reduce(const ReduceArgs& args, std::ostream& out) {
  const auto system = read_system(args.file, false);
  const auto reduction = args.dual ? reduce_sensability_to_wsc(system) : reduce_accessibility_to_wsc(system);
  out << wsc_to_json(reduction.instance).dump(2) << "\n";
  return kExitOk;
}

struct SolveArgs {
  std::string file;
  bool exact = false;
  bool trace = false;
};

int do_solve(const SolveArgs& args, std::ostream& out) {
  WeightedSetCoverInstance inst;
  try {
    inst = wsc_from_json(read_json(args.file));
  } catch (const ParseError& e) {
    const std::string what = e.what();
    throw ParseError(what.rfind(args.file, 0) == 0 ? what : args.file + ": " + what);
  }
  Json doc = cover_to_json(greedy_solve(inst), args.trace);
  doc["max_set_size"] = inst.max_set_size();
  if (args.exact) doc["exact"] = cover_to_json(exact_solve(inst), false);
  out << doc.dump(2) << "\n";
  return kExitOk;
}

// gen / bench

struct GenArgs {
  GeneratorConfig config;
  std::string cost_lo = "1";
  std::string cost_hi = "10";
  std::string structure = "random";
  bool discrete = false;
  bool allow_sfm = false;
};

void add_generator_options(CLI::App* cmd, GenArgs& g) {
  cmd->add_option("-n,--n", g.config.n, "States");
  cmd->add_option("-m,--m", g.config.m, "Inputs");
  cmd->add_option("-p,--p", g.config.p, "Outputs");
  cmd->add_option("--state-density", g.config.state_density, "Probability of each A star");
  cmd->add_option("--input-density", g.config.input_density, "Probability of each B star");
  cmd->add_option("--output-density", g.config.output_density, "Probability of each C star");
  cmd->add_option("--cost-lo", g.cost_lo, "Smallest cost");
  cmd->add_option("--cost-hi", g.cost_hi, "Largest cost");
  cmd->add_option("--cost-decimals", g.config.cost_decimals, "Fractional digits of drawn costs");
  cmd->add_option("--seed", g.config.seed, "Seed");
  cmd->add_option("--structure", g.structure, "State pattern")
      ->check(CLI::IsMember({"random", "irreducible", "diagonal"}));
  cmd->add_flag("--discrete", g.discrete, "Discrete-time mode");
  cmd->add_flag("--allow-sfm", g.allow_sfm, "Skip the feasibility rejection loop");
  cmd->add_option("--max-attempts", g.config.max_attempts, "Retry budget for feasible draws");
}

StateStructure parse_structure(const std::string& s) {
  if (s == "irreducible") return StateStructure::kIrreducible;
  if (s == "diagonal") return StateStructure::kDiagonal;
  if (s == "random") return StateStructure::kRandom;
  throw ParseError("unknown state structure \"" + s + "\"");
}

GeneratorConfig finish(GenArgs g) {
  g.config.cost_lo = Cost::parse(g.cost_lo);
  g.config.cost_hi = Cost::parse(g.cost_hi);
  g.config.state_structure = parse_structure(g.structure);
  g.config.mode = g.discrete ? TimeMode::kDiscrete : TimeMode::kContinuous;
  g.config.require_feasible = !g.allow_sfm;
  g.config.check();
  return g.config;
}

template <class T>
void take(const Json& doc, const char* key, T& into) {
  if (const auto it = doc.find(key); it != doc.end()) {
    try {
      into = it->get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ParseError(std::string("config field \"") + key + "\" has the wrong type");
    }
  }
}

GeneratorConfig config_from_json(const Json& doc, GeneratorConfig base) {
  if (!doc.is_object()) throw ParseError("bench config entries must be objects");
  static const std::vector<std::string> known = {
      "n", "m", "p", "state_density", "input_density", "output_density", "cost_lo", "cost_hi", "cost_decimals",
      "seed", "mode", "require_feasible", "structure", "max_attempts"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ParseError("unknown bench config field \"" + key + "\"");
    }
  }
  take(doc, "n", base.n);
  take(doc, "m", base.m);
  take(doc, "p", base.p);
  take(doc, "state_density", base.state_density);
  take(doc, "input_density", base.input_density);
  take(doc, "output_density", base.output_density);
  take(doc, "cost_decimals", base.cost_decimals);
  take(doc, "seed", base.seed);
  take(doc, "require_feasible", base.require_feasible);
  take(doc, "max_attempts", base.max_attempts);
  std::string text;
  if (doc.contains("cost_lo")) {
    take(doc, "cost_lo", text);
    base.cost_lo = Cost::parse(text);
  }
  if (doc.contains("cost_hi")) {
    take(doc, "cost_hi", text);
    base.cost_hi = Cost::parse(text);
  }
  if (doc.contains("structure")) {
    take(doc, "structure", text);
    base.state_structure = parse_structure(text);
  }
  if (doc.contains("mode")) {
    take(doc, "mode", text);
    if (text != "continuous" && text != "discrete") throw ParseError("config field \"mode\" is invalid");
    base.mode = text == "discrete" ? TimeMode::kDiscrete : TimeMode::kContinuous;
  }
  base.check();
  return base;
}

int do_gen(const GenArgs& args, std::ostream& out) {
  out << system_to_json(generate(finish(args))).dump() << "\n";
  return kExitOk;
}

struct BenchArgs {
  GenArgs gen;
  std::string config_file;
  int trials = 10;
  bool oracle = false;
  bool csv = false;
};

int thread_cap() {
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("IOSELECT_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw ParseError("IOSELECT_THREADS must be a positive integer");
    threads = std::min<long>(threads, v) > 0 ? static_cast<int>(std::min<long>(threads, v)) : 1;
  }
  return threads;
}

Json cost_or_null(const std::optional<Cost>& c) { return c ? Json(c->to_string()) : Json(nullptr); }

Json record_to_json(const BenchRecord& r) {
  Json doc;
  doc["config"] = r.config;
  doc["trial"] = r.trial;
  doc["seed"] = r.seed;
  doc["digest"] = r.digest;
  for (auto [key, v] : {std::pair{"n", r.n}, {"m", r.m}, {"p", r.p}, {"q", r.q}, {"k", r.k}, {"mu_max", r.mu_max},
                        {"eta_max", r.eta_max}}) {
    doc[key] = v;
  }
  doc["special_case"] = r.special_case;
  doc["algo_cost"] = cost_or_null(r.algo_cost);
  doc["lower_bound"] = cost_or_null(r.lower_bound);
  doc["cycle_cost"] = cost_or_null(r.cycle_cost);
  doc["oracle_cost"] = cost_or_null(r.oracle_cost);
  doc["ratio"] = r.ratio ? Json(*r.ratio) : Json(nullptr);
  doc["ratio_flagged"] = r.ratio_flagged;
  doc["feasible_output"] = r.feasible_output;
  doc["sandwich_ok"] = r.sandwich_ok;
  Json t;
  t["accessibility_ms"] = r.timings.accessibility_ms;
  t["sensability_ms"] = r.timings.sensability_ms;
  t["cycle_ms"] = r.timings.cycle_ms;
  t["select_ms"] = r.select_ms;
  t["oracle_ms"] = r.oracle_ms;
  doc["timings"] = std::move(t);
  doc["error"] = r.error.empty() ? Json(nullptr) : Json(r.error);
  return doc;
}

Json summary_to_json(const BenchSummary& s) {
  Json doc;
  doc["instances"] = s.instances;
  doc["failures"] = s.failures;
  doc["infeasible_outputs"] = s.infeasible_outputs;
  doc["sandwich_violations"] = s.sandwich_violations;
  doc["flagged_ratios"] = s.flagged_ratios;
  doc["max_ratio"] = s.max_ratio ? Json(*s.max_ratio) : Json(nullptr);
  doc["mean_ratio"] = s.mean_ratio ? Json(*s.mean_ratio) : Json(nullptr);
  Json rows = Json::array();
  for (const auto& row : s.runtime) {
    rows.push_back(Json{{"n", row.n}, {"count", row.count}, {"mean_ms", row.mean_ms}, {"max_ms", row.max_ms}});
  }
  doc["runtime"] = std::move(rows);
  return Json{{"summary", std::move(doc)}};
}

std::string csv_opt(const std::optional<Cost>& c) { return c ? c->to_string() : ""; }

int do_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  const GeneratorConfig base = finish(args.gen);
  std::vector<GeneratorConfig> configs;
  if (args.config_file.empty()) {
    configs.push_back(base);
  } else {
    const Json doc = read_json(args.config_file);
    if (doc.is_array()) {
      for (const auto& entry : doc) configs.push_back(config_from_json(entry, base));
    } else {
      configs.push_back(config_from_json(doc, base));
    }
  }
  BenchOptions options;
  options.oracle = args.oracle;
  options.threads = thread_cap();
  const auto result = bench(configs, args.trials, options);

  if (args.csv) {
    out << "config,trial,seed,digest,n,m,p,q,k,mu_max,eta_max,special_case,algo_cost,lower_bound,cycle_cost,"
           "oracle_cost,ratio,ratio_flagged,feasible_output,sandwich_ok,select_ms,oracle_ms,error\n";
    for (const auto& r : result.records) {
      out << r.config << ',' << r.trial << ',' << r.seed << ',' << r.digest << ',' << r.n << ',' << r.m << ','
          << r.p << ',' << r.q << ',' << r.k << ',' << r.mu_max << ',' << r.eta_max << ',' << r.special_case << ','
          << csv_opt(r.algo_cost) << ',' << csv_opt(r.lower_bound) << ',' << csv_opt(r.cycle_cost) << ','
          << csv_opt(r.oracle_cost) << ',' << (r.ratio ? Json(*r.ratio).dump() : "") << ',' << r.ratio_flagged
          << ',' << r.feasible_output << ',' << r.sandwich_ok << ',' << r.select_ms << ',' << r.oracle_ms << ','
          << Json(r.error).dump() << '\n';
    }
    err << summary_to_json(result.summary).dump() << "\n";
  } else {
    for (const auto& r : result.records) out << record_to_json(r).dump() << "\n";
    out << summary_to_json(result.summary).dump() << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum-cost input/output selection for structured systems", "ioselect"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Test a selection for structurally fixed modes");
  check_cmd->add_option("file", check.file, "Instance JSON ('-' for stdin)")->required();
  check_cmd->add_option("--inputs", check.inputs, "Selected inputs, 1-based (default: all)")->delimiter(',');
  check_cmd->add_option("--outputs", check.outputs, "Selected outputs, 1-based (default: all)")->delimiter(',');
  check_cmd->add_flag("--discrete", check.discrete, "Treat the system as discrete-time");
  add_format(check_cmd, check.fmt);

  SelectArgs select;
  auto* select_cmd = app.add_subcommand("select", "Approximate minimum-cost selection");
  select_cmd->add_option("file", select.file, "Instance JSON ('-' for stdin)")->required();
  select_cmd->add_flag("--exact", select.exact, "Also run the exhaustive oracle (m + p <= 16)");
  select_cmd->add_flag("--trace", select.trace, "Include greedy and matching traces");
  select_cmd->add_flag("--discrete", select.discrete, "Treat the system as discrete-time");
  select_cmd->add_option("--dump-graph", select.dump_graph, "Write the system digraph and condensation edges");
  select_cmd->add_option("--dump-matching", select.dump_matching, "Write the optimal matching edges");
  add_format(select_cmd, select.fmt);

  ReduceArgs reduce;
  auto* reduce_cmd = app.add_subcommand("reduce-setcover", "Emit the accessibility set cover instance");
  reduce_cmd->add_option("file", reduce.file, "Instance JSON ('-' for stdin)")->required();
  reduce_cmd->add_flag("--dual", reduce.dual, "Emit the sensability instance instead");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve-setcover", "Solve a weighted set cover instance");
  solve_cmd->add_option("file", solve.file, "Set cover JSON ('-' for stdin)")->required();
  solve_cmd->add_flag("--exact", solve.exact, "Also solve exactly (at most 25 sets)");
  solve_cmd->add_flag("--trace", solve.trace, "Include the greedy trace");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  add_generator_options(gen_cmd, gen);

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Run the ratio and runtime harness");
  add_generator_options(bench_cmd, bench_args.gen);
  bench_cmd->add_option("--config", bench_args.config_file, "Generator config JSON (object or list)");
  bench_cmd->add_option("--trials", bench_args.trials, "Trials per config")->check(CLI::NonNegativeNumber);
  bench_cmd->add_flag("--oracle", bench_args.oracle, "Compare against the exhaustive oracle");
  bench_cmd->add_flag("--csv", bench_args.csv, "CSV records; summary goes to stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*check_cmd) return do_check(check, out);
    if (*select_cmd) return do_select(select, out);
    if (*reduce_cmd) return do_reduce(reduce, out);
    if (*solve_cmd) return do_solve(solve, out);
    if (*gen_cmd) return do_gen(gen, out);
    if (*bench_cmd) return do_bench(bench_args, out, err);
  } catch (const Infeasible& e) {
    err << "error: " << e.what() << "\n";
    if (!e.witness().empty()) err << "witness: " << e.witness() << "\n";
    return kExitInfeasible;
  } catch (const GenerationFailed& e) {
    err << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ioselect::cli
