#include "rulex/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

namespace rulex {

namespace {

std::vector<std::string> default_row_ids(std::size_t n) {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  return ids;
}

}  // namespace

Dataset::Dataset(std::vector<double> values, std::size_t n_rows,
                 std::size_t n_cols, std::vector<std::string> feature_names,
                 std::vector<std::string> row_ids)
    : values_(std::move(values)),
      n_rows_(n_rows),
      n_cols_(n_cols),
      feature_names_(std::move(feature_names)),
      row_ids_(std::move(row_ids)) {
  if (n_cols_ == 0) throw input_error("dataset needs at least one feature");
  if (values_.size() != n_rows_ * n_cols_)
    throw input_error("dataset value count " + std::to_string(values_.size()) +
                      " does not match " + std::to_string(n_rows_) + "x" +
                      std::to_string(n_cols_));
  if (feature_names_.size() != n_cols_)
    throw input_error("expected " + std::to_string(n_cols_) +
                      " feature names, got " +
                      std::to_string(feature_names_.size()));
  std::set<std::string> seen;
  for (const auto& name : feature_names_)
    if (!seen.insert(name).second)
      throw input_error("duplicate feature name '" + name + "'");
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i]))
      throw input_error("non-finite value at row " +
                        std::to_string(i / n_cols_) + ", column " +
                        std::to_string(i % n_cols_));
  if (row_ids_.empty())
    row_ids_ = default_row_ids(n_rows_);
  else if (row_ids_.size() != n_rows_)
    throw input_error("expected " + std::to_string(n_rows_) +
                      " row ids, got " + std::to_string(row_ids_.size()));
}

std::span<const double> Dataset::row(std::size_t i) const {
  if (i >= n_rows_) throw input_error("row index out of range");
  return {values_.data() + i * n_cols_, n_cols_};
}

double Dataset::at(std::size_t i, std::size_t j) const {
  if (i >= n_rows_ || j >= n_cols_) throw input_error("index out of range");
  return values_[i * n_cols_ + j];
}

AttributionMatrix::AttributionMatrix(std::vector<double> scores,
                                     std::size_t n_rows, std::size_t n_cols)
    : scores_(std::move(scores)), n_rows_(n_rows), n_cols_(n_cols) {
  if (n_cols_ == 0) throw input_error("attribution matrix needs at least one column");
  if (scores_.size() != n_rows_ * n_cols_)
    throw input_error("attribution score count " +
                      std::to_string(scores_.size()) + " does not match " +
                      std::to_string(n_rows_) + "x" + std::to_string(n_cols_));
  for (std::size_t i = 0; i < scores_.size(); ++i)
    if (!std::isfinite(scores_[i]))
      throw input_error("non-finite attribution at row " +
                        std::to_string(i / n_cols_) + ", column " +
                        std::to_string(i % n_cols_));
}

std::span<const double> AttributionMatrix::row(std::size_t i) const {
  if (i >= n_rows_) throw input_error("attribution row index out of range");
  return {scores_.data() + i * n_cols_, n_cols_};
}

void validate_term(const Term& term) {
  if (term.constraints.empty())
    throw input_error("term " + std::to_string(term.id) + " has no constraints");
  std::unordered_set<std::size_t> dims;
  for (const auto& c : term.constraints) {
    if (!dims.insert(c.dim).second)
      throw input_error("term " + std::to_string(term.id) +
                        " constrains dimension " + std::to_string(c.dim) +
                        " twice");
    if (!std::isfinite(c.lo) || !std::isfinite(c.hi))
      throw input_error("term " + std::to_string(term.id) +
                        " has a non-finite interval bound");
    if (c.lo > c.hi)
      throw input_error("term " + std::to_string(term.id) + " has lo > hi on dimension " +
                        std::to_string(c.dim));
  }
}

bool term_applies(const Term& term, std::span<const double> x) {
  for (const auto& c : term.constraints) {
    if (c.dim >= x.size())
      throw input_error("term " + std::to_string(term.id) +
                        " constrains dimension " + std::to_string(c.dim) +
                        " but the sample has " + std::to_string(x.size()) +
                        " features");
    const double v = x[c.dim];
    if (v < c.lo || v > c.hi) return false;
  }
  return true;
}

RuleModel::RuleModel(std::vector<ClassId> classes, std::vector<Term> terms,
                     ClassId default_class, std::vector<double> accuracies,
                     std::string provenance)
    : classes_(std::move(classes)),
      terms_(std::move(terms)),
      default_class_(default_class),
      accuracies_(std::move(accuracies)),
      provenance_(std::move(provenance)) {
  if (classes_.empty()) throw input_error("rule model has no classes");
  if (!std::is_sorted(classes_.begin(), classes_.end()) ||
      std::adjacent_find(classes_.begin(), classes_.end()) != classes_.end())
    throw input_error("model classes must be ascending and unique");
  if (std::find(classes_.begin(), classes_.end(), default_class_) ==
      classes_.end())
    throw input_error("default class " + std::to_string(default_class_) +
                      " is not in the model's class set");
  if (accuracies_.size() != terms_.size())
    throw input_error("expected one accuracy per term");
  int last_id = -1;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    validate_term(t);
    if (t.id <= last_id)
      throw input_error("term ids must be ascending and unique");
    last_id = t.id;
    if (std::find(classes_.begin(), classes_.end(), t.label) == classes_.end())
      throw input_error("term " + std::to_string(t.id) + " predicts class " +
                        std::to_string(t.label) +
                        " which is not in the model's class set");
    if (!(accuracies_[i] >= 0.0 && accuracies_[i] <= 1.0))
      throw input_error("accuracy of term " + std::to_string(t.id) +
                        " is outside [0, 1]");
  }
}

double RuleModel::accuracy_of(int term_id) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), term_id,
      [](const Term& t, int id) { return t.id < id; });
  if (it == terms_.end() || it->id != term_id)
    throw input_error("unknown term id " + std::to_string(term_id));
  return accuracies_[static_cast<std::size_t>(it - terms_.begin())];
}

RuleModel remove_terms(const RuleModel& model,
                       const std::vector<int>& term_ids_to_remove) {
  std::unordered_set<int> removed(term_ids_to_remove.begin(),
                                  term_ids_to_remove.end());
  std::vector<Term> kept;
  std::vector<double> kept_acc;
  kept.reserve(model.terms().size());
  kept_acc.reserve(model.terms().size());
  for (std::size_t i = 0; i < model.terms().size(); ++i) {
    if (removed.count(model.terms()[i].id)) continue;
    kept.push_back(model.terms()[i]);
    kept_acc.push_back(model.accuracies()[i]);
  }
  return RuleModel(model.classes(), std::move(kept), model.default_class(),
                   std::move(kept_acc), model.provenance());
}

std::vector<ClassId> distinct_classes(const LabelVector& labels) {
  std::set<ClassId> s(labels.begin(), labels.end());
  return {s.begin(), s.end()};
}

}  // namespace rulex
