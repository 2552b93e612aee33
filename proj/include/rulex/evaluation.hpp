#pragma once

// Fidelity, size, ambiguity and coverage metrics plus before/after
// relative-change records.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rulex/core.hpp"

namespace rulex {

struct EvalReport {
  double f1_macro = 0.0;
  std::size_t size = 0;
  double ambiguity = 0.0;
  double coverage = 0.0;
  std::map<ClassId, double> per_class_f1;

  bool operator==(const EvalReport&) const = default;
};

/// Relative change of one metric. rel_change_pct = 100 * (after - before) /
/// before, absent when before is 0.
struct ChangeRecord {
  std::string metric;
  double before = 0.0;
  double after = 0.0;
  std::optional<double> rel_change_pct;

  bool operator==(const ChangeRecord&) const = default;
};

ChangeRecord make_change_record(std::string metric, double before, double after);

/// Unweighted mean over classes of per-class F1. Per-class F1 is
/// 2PR / (P + R), and 0 when P + R is 0. A class absent from both pred and
/// truth scores 0 and is reported through warnings when given.
/// Throws input_error on length mismatch.
double macro_f1(const LabelVector& pred, const LabelVector& truth,
                const std::vector<ClassId>& classes,
                std::vector<std::string>* warnings = nullptr);

/// F1 averaged over classes weighted by truth support. Classes with no truth
/// samples carry zero weight.
double weighted_f1(const LabelVector& pred, const LabelVector& truth,
                   const std::vector<ClassId>& classes);

/// Per-class F1 scores for the given classes.
std::map<ClassId, double> per_class_f1(const LabelVector& pred,
                                       const LabelVector& truth,
                                       const std::vector<ClassId>& classes);

/// Evaluates the model against reference labels (black-box predictions for
/// fidelity, or ground truth). Classes scored are the union of the model's
/// classes and the classes observed in y. Throws config_error on an empty
/// dataset.
EvalReport evaluate(const RuleModel& model, const Dataset& x_test,
                    const LabelVector& y_test);

/// Change records for f1_macro, size and ambiguity, plus the reference-set
/// F1 when both values are supplied.
std::vector<ChangeRecord> compare(
    const EvalReport& before, const EvalReport& after,
    std::optional<double> f1_ref_before = std::nullopt,
    std::optional<double> f1_ref_after = std::nullopt);

}  // namespace rulex
