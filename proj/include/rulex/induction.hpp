#pragma once

// Candidate box terms from itemsets and per-class DNF selection via greedy
// set cover; assembly of the global rule model.

#include <cstddef>
#include <string>
#include <vector>

#include "rulex/bitset.hpp"
#include "rulex/core.hpp"
#include "rulex/mining.hpp"

namespace rulex {

/// Candidate term with its coverage over the class samples and its precision
/// over the whole extraction set.
struct CandidateTerm {
  Term term;          // id stays -1 until model assembly
  Bitset coverage;    // over the indices of the class sample list
  double precision = 0.0;
};

struct ExtractionConfig {
  BinarizationPolicy policy;
  double min_support_fraction = 0.05;  // of the class's transaction count, floored to >= 2
  double min_precision = 0.5;
  double cover_target = 1.0;
};

void validate_extraction_config(const ExtractionConfig& config);

/// Per-class counters reported alongside extraction.
struct ClassExtractionStats {
  ClassId label = 0;
  std::size_t samples = 0;
  std::size_t empty_transactions = 0;
  std::size_t min_support = 0;
  std::size_t itemsets = 0;
  std::size_t candidates = 0;
  std::size_t selected = 0;
};

struct ExtractionDiagnostics {
  std::vector<ClassExtractionStats> per_class;
  std::vector<std::string> warnings;
};

/// One interval constraint per item, bounds = min/max of that feature over
/// the supporting rows. Every supporting row satisfies the returned term.
/// Throws internal_error on an empty row list (mining guarantees support).
Term build_term(const Itemset& itemset, ClassId class_label,
                const Dataset& x, const std::vector<std::size_t>& supporting_rows);

/// Greedy set cover over the class samples: repeatedly selects the candidate
/// with precision >= min_precision that covers the most not-yet-covered
/// samples, ties broken by higher precision then lower candidate order.
/// Stops once the covered fraction reaches cover_target or no candidate adds
/// a new sample. Returns the selected terms in selection order.
std::vector<Term> greedy_cover(const std::vector<CandidateTerm>& candidates,
                               std::size_t class_size,
                               const ExtractionConfig& config);

/// Full extraction: per class in ascending order, binarize the class's
/// attribution rows, mine closed frequent itemsets, build candidate box
/// terms and greedy-cover them into the class DNF. Term ids are assigned in
/// (class order, selection order); accuracies are computed on (x, y_hat) and
/// frozen into the model; the default class is the majority class of y_hat
/// (ties to the lowest class id).
RuleModel extract_rule_model(const Dataset& x, const LabelVector& y_hat,
                             const AttributionMatrix& attr,
                             const ExtractionConfig& config,
                             std::string provenance = {},
                             ExtractionDiagnostics* diagnostics = nullptr);

}  // namespace rulex
