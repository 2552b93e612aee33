#pragma once

// Win-count threshold pruning: iteratively drop low-win terms while the
// model's behaviour on the reference set stays within tolerance.

#include <cstddef>
#include <utility>
#include <vector>

#include "rulex/core.hpp"
#include "rulex/inference.hpp"

namespace rulex {

struct PruneConfig {
  /// Tolerated relative accuracy loss on the reference set, in [0, 1].
  /// theta = 0 is safe pruning: the pruned model must reproduce every
  /// reference-set prediction exactly.
  double theta = 0.0;
};

void validate_prune_config(const PruneConfig& config);

/// One accepted pruning step: all terms with win count <= k removed at once.
struct PruneStep {
  std::size_t k = 0;
  std::vector<int> removed_term_ids;  // ascending
  double accuracy_after = 0.0;
};

/// Audit trail of the pruning loop. Steps that removed nothing are omitted;
/// final_k is the largest win-count threshold whose removal was accepted.
struct PruneTrace {
  std::vector<PruneStep> steps;
  std::size_t final_k = 0;
};

/// Fraction of samples where the model's prediction equals y. A zero-term
/// model predicts the default class everywhere.
double model_accuracy(const RuleModel& model, const Dataset& x,
                      const LabelVector& y);

/// Threshold pruning. Win counts and the baseline accuracy are computed once
/// on the original model and never recomputed. The candidate at threshold k
/// removes every remaining term with wins <= k; a candidate is accepted while
///   theta = 0:  its reference-set predictions equal the original model's,
///               sample for sample, and
///   theta > 0:  its reference-set accuracy >= (1 - theta) * baseline.
/// The loop stops at the first rejected candidate or once k reaches the
/// maximum win count (beyond which every term is gone). Surviving terms keep
/// their ids and frozen accuracies; the default class is unchanged.
std::pair<RuleModel, PruneTrace> threshold_prune(const RuleModel& model,
                                                 const Dataset& x,
                                                 const LabelVector& y,
                                                 const PruneConfig& config);

}  // namespace rulex
