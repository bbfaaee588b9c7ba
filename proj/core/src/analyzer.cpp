#include "mergeprobe/analyzer.hpp"

#include <algorithm>
#include <stdexcept>

namespace mergeprobe {

std::string_view signal_name(ConflictSignal signal) {
  switch (signal) {
    case ConflictSignal::H1_BaseMergeFail_ParentPass: return "H1_BaseMergeFail_ParentPass";
    case ConflictSignal::H1_BaseMergePass_ParentFail: return "H1_BaseMergePass_ParentFail";
    case ConflictSignal::H2_OnlyMergeFails: return "H2_OnlyMergeFails";
    case ConflictSignal::H2_OnlyMergePasses: return "H2_OnlyMergePasses";
    case ConflictSignal::None: return "None";
  }
  return "None";
}

ConflictSignal classify_outcome_vector(const OutcomeVector& v) {
  if (!v.stable) {
    throw std::invalid_argument("classify_outcome_vector requires a stable vector (" +
                                v.artifact_file + ")");
  }
  const TestOutcome b = v.outcomes.at(VersionId::Base);
  const TestOutcome l = v.outcomes.at(VersionId::Left);
  const TestOutcome r = v.outcomes.at(VersionId::Right);
  const TestOutcome m = v.outcomes.at(VersionId::Merge);

  for (TestOutcome o : {b, l, r, m}) {
    if (o == TestOutcome::Error) return ConflictSignal::None;
  }

  const bool bp = b == TestOutcome::Pass, lp = l == TestOutcome::Pass;
  const bool rp = r == TestOutcome::Pass, mp = m == TestOutcome::Pass;

  // H1 before H2 (normative order; the predicates are disjoint).
  if (!bp && !mp && (lp || rp)) return ConflictSignal::H1_BaseMergeFail_ParentPass;
  if (bp && mp && (!lp || !rp)) return ConflictSignal::H1_BaseMergePass_ParentFail;
  if (!mp && bp && lp && rp) return ConflictSignal::H2_OnlyMergeFails;
  if (mp && !bp && !lp && !rp) return ConflictSignal::H2_OnlyMergePasses;
  return ConflictSignal::None;
}

ScenarioVerdict aggregate_scenario_verdict(const std::string& scenario_id,
                                           const std::vector<ConflictWitness>& signals) {
  ScenarioVerdict verdict;
  verdict.scenario_id = scenario_id;
  for (const auto& s : signals) {
    ++verdict.signal_counts[s.signal];
    if (s.signal != ConflictSignal::None) verdict.witnesses.push_back(s);
  }
  std::sort(verdict.witnesses.begin(), verdict.witnesses.end(),
            [](const ConflictWitness& a, const ConflictWitness& b) {
              if (a.variant_id != b.variant_id) return a.variant_id < b.variant_id;
              return a.artifact_file < b.artifact_file;
            });
  verdict.conflict_detected = !verdict.witnesses.empty();
  return verdict;
}

}  // namespace mergeprobe
