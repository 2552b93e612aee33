#pragma once

// Core domain types for axis-aligned DNF rule models: datasets, attribution
// matrices, interval terms and the assembled rule model. All types are
// immutable after construction and safe to share across threads.

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rulex {

/// Malformed or inconsistent input (files, shapes, values). CLI exit code 2.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration (ranges, missing options). CLI exit code 2.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Broken internal invariant; indicates a bug, not bad input. CLI exit code 3.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using ClassId = int;

/// Class labels paired with a Dataset, one per row.
using LabelVector = std::vector<ClassId>;

/// Real-valued feature matrix with named columns. Rejects non-finite values
/// and duplicate feature names at construction.
class Dataset {
 public:
  Dataset(std::vector<double> values, std::size_t n_rows, std::size_t n_cols,
          std::vector<std::string> feature_names,
          std::vector<std::string> row_ids = {});

  std::size_t rows() const noexcept { return n_rows_; }
  std::size_t cols() const noexcept { return n_cols_; }
  std::span<const double> row(std::size_t i) const;
  double at(std::size_t i, std::size_t j) const;
  const std::vector<std::string>& feature_names() const noexcept {
    return feature_names_;
  }
  const std::vector<std::string>& row_ids() const noexcept { return row_ids_; }

 private:
  std::vector<double> values_;
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<std::string> feature_names_;
  std::vector<std::string> row_ids_;
};

/// Per-sample, per-feature importance scores produced by a local explainer.
/// Same shape as the paired Dataset; all entries must be finite.
class AttributionMatrix {
 public:
  AttributionMatrix(std::vector<double> scores, std::size_t n_rows,
                    std::size_t n_cols);

  std::size_t rows() const noexcept { return n_rows_; }
  std::size_t cols() const noexcept { return n_cols_; }
  std::span<const double> row(std::size_t i) const;

 private:
  std::vector<double> scores_;
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
};

/// Closed interval constraint lo <= x[dim] <= hi on a single feature.
struct IntervalConstraint {
  std::size_t dim = 0;
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const IntervalConstraint&) const = default;
};

/// Conjunction of interval constraints predicting one class. Constraint dims
/// are pairwise distinct and kept sorted ascending. The id is assigned once
/// at model assembly (-1 until then) and never reused.
struct Term {
  int id = -1;
  ClassId label = 0;
  std::vector<IntervalConstraint> constraints;

  bool operator==(const Term&) const = default;
};

/// Throws input_error if the term violates its invariants (empty constraint
/// list, duplicate dims, lo > hi, non-finite bounds).
void validate_term(const Term& term);

/// True iff every constraint of the term is satisfied, both interval ends
/// closed. Throws input_error when a constraint dim is out of range for x.
bool term_applies(const Term& term, std::span<const double> x);

/// Global rule model: the union of per-class DNFs plus the per-term
/// accuracies frozen at extraction time. Terms are stored in ascending id
/// order; ids are dense after assembly and stay stable under pruning (a
/// pruned model keeps the surviving subset of ids).
class RuleModel {
 public:
  RuleModel(std::vector<ClassId> classes, std::vector<Term> terms,
            ClassId default_class, std::vector<double> accuracies,
            std::string provenance = {});

  const std::vector<ClassId>& classes() const noexcept { return classes_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  ClassId default_class() const noexcept { return default_class_; }
  /// Parallel to terms(): accuracies()[i] is the accuracy of terms()[i].
  const std::vector<double>& accuracies() const noexcept { return accuracies_; }
  double accuracy_of(int term_id) const;
  const std::string& provenance() const noexcept { return provenance_; }
  std::size_t size() const noexcept { return terms_.size(); }

 private:
  std::vector<ClassId> classes_;
  std::vector<Term> terms_;
  ClassId default_class_ = 0;
  std::vector<double> accuracies_;
  std::string provenance_;
};

/// Copy of the model without the given term ids. Surviving terms keep their
/// ids and accuracies; classes, default class and provenance are unchanged.
RuleModel remove_terms(const RuleModel& model,
                       const std::vector<int>& term_ids_to_remove);

/// Distinct class ids of a label vector, ascending.
std::vector<ClassId> distinct_classes(const LabelVector& labels);

}  // namespace rulex
