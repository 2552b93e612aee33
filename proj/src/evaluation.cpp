#include "rulex/evaluation.hpp"

#include <algorithm>
#include <set>

#include "rulex/inference.hpp"

namespace rulex {

namespace {

struct ClassCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

ClassCounts count_class(const LabelVector& pred, const LabelVector& truth,
                        ClassId c) {
  ClassCounts n;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i] == c;
    const bool t = truth[i] == c;
    if (p && t) ++n.tp;
    else if (p && !t) ++n.fp;
    else if (!p && t) ++n.fn;
  }
  return n;
}

double f1_from_counts(const ClassCounts& n) {
  const double precision =
      n.tp + n.fp == 0 ? 0.0
                       : static_cast<double>(n.tp) / static_cast<double>(n.tp + n.fp);
  const double recall =
      n.tp + n.fn == 0 ? 0.0
                       : static_cast<double>(n.tp) / static_cast<double>(n.tp + n.fn);
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

void check_lengths(const LabelVector& pred, const LabelVector& truth) {
  if (pred.size() != truth.size())
    throw input_error("prediction vector has " + std::to_string(pred.size()) +
                      " entries but truth has " + std::to_string(truth.size()));
}

}  // namespace

std::map<ClassId, double> per_class_f1(const LabelVector& pred,
                                       const LabelVector& truth,
                                       const std::vector<ClassId>& classes) {
  check_lengths(pred, truth);
  std::map<ClassId, double> out;
  for (ClassId c : classes) out[c] = f1_from_counts(count_class(pred, truth, c));
  return out;
}

double macro_f1(const LabelVector& pred, const LabelVector& truth,
                const std::vector<ClassId>& classes,
                std::vector<std::string>* warnings) {
  check_lengths(pred, truth);
  if (classes.empty()) throw input_error("macro F1 needs at least one class");
  double sum = 0.0;
  for (ClassId c : classes) {
    const ClassCounts n = count_class(pred, truth, c);
    if (warnings && n.tp + n.fp + n.fn == 0)
      warnings->push_back("class " + std::to_string(c) +
                          " absent from both predictions and truth; scored 0");
    sum += f1_from_counts(n);
  }
  return sum / static_cast<double>(classes.size());
}

double weighted_f1(const LabelVector& pred, const LabelVector& truth,
                   const std::vector<ClassId>& classes) {
  check_lengths(pred, truth);
  if (classes.empty()) throw input_error("weighted F1 needs at least one class");
  if (truth.empty()) throw input_error("weighted F1 needs at least one sample");
  double sum = 0.0;
  for (ClassId c : classes) {
    const ClassCounts n = count_class(pred, truth, c);
    const std::size_t support = n.tp + n.fn;
    sum += f1_from_counts(n) * static_cast<double>(support);
  }
  return sum / static_cast<double>(truth.size());
}

EvalReport evaluate(const RuleModel& model, const Dataset& x_test,
                    const LabelVector& y_test) {
  if (x_test.rows() == 0) throw config_error("evaluation needs a nonempty dataset");
  if (x_test.rows() != y_test.size())
    throw input_error("dataset has " + std::to_string(x_test.rows()) +
                      " rows but " + std::to_string(y_test.size()) + " labels");

  std::set<ClassId> class_set(model.classes().begin(), model.classes().end());
  class_set.insert(y_test.begin(), y_test.end());
  const std::vector<ClassId> classes(class_set.begin(), class_set.end());

  const LabelVector pred = predict_all(model, x_test);

  EvalReport report;
  report.f1_macro = macro_f1(pred, y_test, classes);
  report.size = model.size();
  report.ambiguity = ambiguity(model, x_test);
  std::size_t covered = 0;
  for (std::size_t i = 0; i < x_test.rows(); ++i)
    if (!applicable_terms(model, x_test.row(i)).empty()) ++covered;
  report.coverage =
      static_cast<double>(covered) / static_cast<double>(x_test.rows());
  report.per_class_f1 = per_class_f1(pred, y_test, classes);
  return report;
}

ChangeRecord make_change_record(std::string metric, double before, double after) {
  ChangeRecord rec;
  rec.metric = std::move(metric);
  rec.before = before;
  rec.after = after;
  if (before != 0.0) rec.rel_change_pct = 100.0 * (after - before) / before;
  return rec;
}

std::vector<ChangeRecord> compare(const EvalReport& before,
                                  const EvalReport& after,
                                  std::optional<double> f1_ref_before,
                                  std::optional<double> f1_ref_after) {
  std::vector<ChangeRecord> records;
  records.push_back(make_change_record("f1_macro", before.f1_macro, after.f1_macro));
  if (f1_ref_before && f1_ref_after)
    records.push_back(make_change_record("f1_reference", *f1_ref_before, *f1_ref_after));
  records.push_back(make_change_record("size", static_cast<double>(before.size),
                                       static_cast<double>(after.size)));
  records.push_back(make_change_record("ambiguity", before.ambiguity, after.ambiguity));
  return records;
}

}  // namespace rulex
