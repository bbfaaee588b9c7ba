#ifndef MERGEPROBE_ANALYZER_HPP_
#define MERGEPROBE_ANALYZER_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mergeprobe/harness.hpp"

namespace mergeprobe {

/// H1: Base and Merge agree but at least one parent disagrees. H2: only
/// Merge deviates from the other three. None: no conflict evidence.
enum class ConflictSignal {
  H1_BaseMergeFail_ParentPass,
  H1_BaseMergePass_ParentFail,
  H2_OnlyMergeFails,
  H2_OnlyMergePasses,
  None,
};

std::string_view signal_name(ConflictSignal signal);

/// Total over stable vectors. Any Error outcome maps to None: the
/// heuristics are defined in pass/fail terms, and promoting environmental
/// noise to Fail would manufacture conflicts. Throws std::invalid_argument
/// on an unstable vector (caller contract violation).
ConflictSignal classify_outcome_vector(const OutcomeVector& v);

/// One test whose vector triggered a heuristic.
struct ConflictWitness {
  std::string artifact_file;
  int variant_id = 0;
  ConflictSignal signal = ConflictSignal::None;
  std::map<VersionId, TestOutcome> outcomes;
};

struct ScenarioVerdict {
  std::string scenario_id;
  bool conflict_detected = false;
  std::vector<ConflictWitness> witnesses;        // signal != None only
  std::map<ConflictSignal, int> signal_counts;   // over every classified vector
};

/// Collapses per-test signals into the scenario verdict. Witnesses keep
/// only conflicting signals, sorted by (variant_id, file_name) so reports
/// are deterministic.
ScenarioVerdict aggregate_scenario_verdict(const std::string& scenario_id,
                                           const std::vector<ConflictWitness>& signals);

}  // namespace mergeprobe

#endif  // MERGEPROBE_ANALYZER_HPP_
