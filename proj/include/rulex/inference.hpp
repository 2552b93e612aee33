#pragma once

// Applicability sets, accuracy-based tie-breaking prediction, per-term
// accuracy, win counts and the inter-class ambiguity metric.

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "rulex/core.hpp"

namespace rulex {

/// Win count per term id: how often a term is the tie-break-selected
/// predictor on a reference set. Keys are exactly the model's term ids.
using WinTable = std::map<int, std::size_t>;

/// Ids of all terms applicable to x, ascending. May be empty.
std::vector<int> applicable_terms(const RuleModel& model,
                                  std::span<const double> x);

/// Among samples where the term applies, the fraction labeled with the
/// term's class. 0 when the term applies to no sample.
double term_accuracy(const Term& term, const Dataset& x, const LabelVector& y);

/// Class of the applicable term with the highest frozen accuracy, ties
/// broken by lowest term id; default class when nothing applies.
ClassId predict(const RuleModel& model, std::span<const double> x);

/// predict() restricted to terms whose position in model.terms() is marked
/// active. Pruning uses this to score candidate subsets without
/// materializing models.
ClassId predict_masked(const RuleModel& model, std::span<const double> x,
                       const std::vector<char>& active);

/// Predictions for every row of x.
LabelVector predict_all(const RuleModel& model, const Dataset& x);

/// Fraction of samples whose applicable terms span more than one class.
/// Throws config_error on an empty dataset.
double ambiguity(const RuleModel& model, const Dataset& x);

/// Win count per term: for each sample with a nonempty applicable set, the
/// predict-selected term is credited one win. Samples with an empty
/// applicable set contribute nothing, so the win total equals the number of
/// covered samples.
WinTable win_counts(const RuleModel& model, const Dataset& x);

std::size_t total_wins(const WinTable& wins);

}  // namespace rulex
