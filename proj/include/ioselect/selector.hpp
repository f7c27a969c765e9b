#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ioselect/errors.hpp"
#include "ioselect/graph_core.hpp"
#include "ioselect/matching.hpp"
#include "ioselect/set_cover.hpp"
#include "ioselect/system_model.hpp"

namespace ioselect {

/// Which fixed-mode conditions a closed loop violates. Type-1 is the
/// SCC-with-feedback-edge condition, Type-2 the disjoint-cycle condition.
enum class SfmStatus { kNoSfm, kType1, kType2, kBoth };
const char* sfm_status_name(SfmStatus status);

/// Decides absence of structurally fixed modes for the closed loop on `sel`.
/// Discrete-time systems are judged on the Type-1 condition alone.
SfmStatus check_no_sfm(const StructuredSystem& system, const Selection& sel);

/// Human-readable reason naming the failing states, empty for kNoSfm.
std::string sfm_witness(const StructuredSystem& system, const Selection& sel);

enum class SpecialCase { kGeneral, kIrreducible, kStatePm, kSingleNonTop, kSingleNonBottom, kDiscrete };
const char* special_case_name(SpecialCase tag);

/// Every special-case tag that applies, strongest guarantee first; kGeneral
/// only when nothing else does.
std::vector<SpecialCase> detect_special_cases(const StructuredSystem& system);
SpecialCase detect_special_case(const StructuredSystem& system);
/// Approximation guarantee attached to a tag, e.g. "optimal".
std::string guarantee_text(SpecialCase tag);

/// The full system has fixed modes, so no selection can remove them.
class SystemHasSfms : public Infeasible {
 public:
  SystemHasSfms(SfmStatus status, std::string witness)
      : Infeasible(std::string("system has structurally fixed modes (") + sfm_status_name(status) + ")",
                   std::move(witness)),
        status_(status) {}
  SfmStatus status() const noexcept { return status_; }

 private:
  SfmStatus status_;
};

struct SelectOptions {
  /// Solve the two covering stages exactly as well and raise the lower bound
  /// to max(c*, exact accessibility + exact sensability cost).
  bool exact_set_cover = false;
};

struct StageResult {
  Selection selection;
  Cost cost;
};

/// Wall-clock milliseconds per stage.
struct StageTimings {
  double accessibility_ms = 0.0;
  double sensability_ms = 0.0;
  double cycle_ms = 0.0;
};

struct SelectionReport {
  Selection selection;  // (I_a, J_a)
  Cost total_cost;
  StageResult accessibility;                // greedy cover of non-top SCCs
  StageResult sensability;                  // greedy cover of non-bottom SCCs
  std::optional<StageResult> cycle;         // min-cost matching; absent in discrete mode
  Cost lower_bound;
  SpecialCase special_case = SpecialCase::kGeneral;
  std::vector<SpecialCase> special_cases;
  bool no_sfm = false;

  // Certificates.
  Cover accessibility_cover;
  Cover sensability_cover;
  std::optional<Cover> exact_accessibility;
  std::optional<Cover> exact_sensability;
  std::optional<SystemBipartiteGraph> bipartite;
  std::optional<Matching> matching;
  std::vector<FeedbackWitness> feedback_witness;
  StageTimings timings;
};

/// Three-stage selection: greedy accessibility cover, greedy sensability
/// cover on the dual, and min-cost perfect matching; the result is the union.
/// Irreducible systems take the matching result alone (plus the cheapest
/// input/output pair when the matching needs none). Throws SystemHasSfms when
/// the full system already has fixed modes.
SelectionReport select_min_cost_io(const StructuredSystem& system, const SelectOptions& options = {});

}  // namespace ioselect
