#include "rulex/induction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "rulex/inference.hpp"

namespace rulex {

void validate_extraction_config(const ExtractionConfig& config) {
  validate_policy(config.policy);
  if (!(config.min_support_fraction > 0.0 && config.min_support_fraction <= 1.0))
    throw config_error("min_support_fraction must be in (0, 1]");
  if (!(config.min_precision >= 0.0 && config.min_precision <= 1.0))
    throw config_error("min_precision must be in [0, 1]");
  if (!(config.cover_target > 0.0 && config.cover_target <= 1.0))
    throw config_error("cover_target must be in (0, 1]");
}

Term build_term(const Itemset& itemset, ClassId class_label, const Dataset& x,
                const std::vector<std::size_t>& supporting_rows) {
  if (supporting_rows.empty())
    throw internal_error("build_term called without supporting rows");
  Term term;
  term.label = class_label;
  term.constraints.reserve(itemset.items.size());
  for (std::size_t dim : itemset.items) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t r : supporting_rows) {
      const double v = x.at(r, dim);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    term.constraints.push_back(IntervalConstraint{dim, lo, hi});
  }
  return term;
}

std::vector<Term> greedy_cover(const std::vector<CandidateTerm>& candidates,
                               std::size_t class_size,
                               const ExtractionConfig& config) {
  validate_extraction_config(config);
  for (const auto& c : candidates)
    if (c.coverage.size() != class_size)
      throw internal_error("candidate coverage not sized to the class");

  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (candidates[i].precision >= config.min_precision) eligible.push_back(i);

  std::vector<Term> selected;
  if (class_size == 0) return selected;

  Bitset covered(class_size);
  std::vector<char> used(candidates.size(), 0);
  const double target = config.cover_target * static_cast<double>(class_size);
  while (static_cast<double>(covered.count()) < target) {
    std::size_t best = candidates.size();
    std::size_t best_gain = 0;
    double best_precision = -1.0;
    for (std::size_t i : eligible) {
      if (used[i]) continue;
      const std::size_t gain = candidates[i].coverage.count_and_not(covered);
      if (gain > best_gain ||
          (gain == best_gain && gain > 0 &&
           candidates[i].precision > best_precision)) {
        best = i;
        best_gain = gain;
        best_precision = candidates[i].precision;
      }
    }
    if (best == candidates.size() || best_gain == 0) break;
    used[best] = 1;
    covered.or_with(candidates[best].coverage);
    selected.push_back(candidates[best].term);
  }
  return selected;
}

namespace {

std::vector<CandidateTerm> build_candidates(
    const Dataset& x, const LabelVector& y_hat, ClassId label,
    const std::vector<std::size_t>& class_rows,
    const std::vector<Transaction>& transactions,
    const std::vector<Itemset>& itemsets) {
  std::vector<CandidateTerm> candidates;
  candidates.reserve(itemsets.size());
  for (const Itemset& itemset : itemsets) {
    std::vector<std::size_t> supporting;
    for (std::size_t i = 0; i < class_rows.size(); ++i) {
      if (std::includes(transactions[i].begin(), transactions[i].end(),
                        itemset.items.begin(), itemset.items.end()))
        supporting.push_back(class_rows[i]);
    }
    if (supporting.empty()) continue;  // cannot happen for mined itemsets

    CandidateTerm cand;
    cand.term = build_term(itemset, label, x, supporting);

    cand.coverage = Bitset(class_rows.size());
    for (std::size_t i = 0; i < class_rows.size(); ++i)
      if (term_applies(cand.term, x.row(class_rows[i]))) cand.coverage.set(i);

    std::size_t applies = 0;
    std::size_t hits = 0;
    for (std::size_t r = 0; r < x.rows(); ++r) {
      if (!term_applies(cand.term, x.row(r))) continue;
      ++applies;
      if (y_hat[r] == label) ++hits;
    }
    cand.precision =
        applies == 0 ? 0.0
                     : static_cast<double>(hits) / static_cast<double>(applies);
    candidates.push_back(std::move(cand));
  }
  return candidates;
}

ClassId majority_class(const LabelVector& y) {
  std::map<ClassId, std::size_t> counts;
  for (ClassId c : y) ++counts[c];
  ClassId best = counts.begin()->first;
  std::size_t best_count = counts.begin()->second;
  for (const auto& [c, n] : counts) {
    if (n > best_count) {  // ties keep the lowest class id
      best = c;
      best_count = n;
    }
  }
  return best;
}

}  // namespace

RuleModel extract_rule_model(const Dataset& x, const LabelVector& y_hat,
                             const AttributionMatrix& attr,
                             const ExtractionConfig& config,
                             std::string provenance,
                             ExtractionDiagnostics* diagnostics) {
  validate_extraction_config(config);
  if (x.rows() != y_hat.size())
    throw input_error("dataset has " + std::to_string(x.rows()) +
                      " rows but " + std::to_string(y_hat.size()) +
                      " predictions");
  if (attr.rows() != x.rows() || attr.cols() != x.cols())
    throw input_error("attribution matrix is " + std::to_string(attr.rows()) +
                      "x" + std::to_string(attr.cols()) + " but the dataset is " +
                      std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
  if (y_hat.empty()) throw input_error("extraction needs at least one sample");

  const std::vector<ClassId> classes = distinct_classes(y_hat);
  std::vector<Term> terms;
  int next_id = 0;
  for (ClassId label : classes) {
    std::vector<std::size_t> class_rows;
    for (std::size_t i = 0; i < y_hat.size(); ++i)
      if (y_hat[i] == label) class_rows.push_back(i);

    ClassExtractionStats stats;
    stats.label = label;
    stats.samples = class_rows.size();

    std::vector<Transaction> transactions;  // parallel to class_rows
    transactions.reserve(class_rows.size());
    for (std::size_t r : class_rows) {
      Transaction t = binarize(attr.row(r), config.policy);
      if (t.empty()) ++stats.empty_transactions;
      transactions.push_back(std::move(t));
    }

    const auto floored = static_cast<std::size_t>(std::floor(
        config.min_support_fraction * static_cast<double>(class_rows.size())));
    stats.min_support = std::max<std::size_t>(2, floored);

    const std::vector<Itemset> itemsets =
        mine_closed_frequent(transactions, stats.min_support);
    stats.itemsets = itemsets.size();

    std::vector<CandidateTerm> candidates =
        build_candidates(x, y_hat, label, class_rows, transactions, itemsets);
    stats.candidates = candidates.size();

    std::vector<Term> dnf = greedy_cover(candidates, class_rows.size(), config);
    stats.selected = dnf.size();
    if (dnf.empty() && diagnostics)
      diagnostics->warnings.push_back(
          "class " + std::to_string(label) +
          ": no terms selected (no candidate reached min_support or min_precision)");
    for (Term& t : dnf) {
      t.id = next_id++;
      terms.push_back(std::move(t));
    }
    if (diagnostics) diagnostics->per_class.push_back(stats);
  }

  std::vector<double> accuracies;
  accuracies.reserve(terms.size());
  for (const Term& t : terms) accuracies.push_back(term_accuracy(t, x, y_hat));

  return RuleModel(classes, std::move(terms), majority_class(y_hat),
                   std::move(accuracies), std::move(provenance));
}

}  // namespace rulex
