#include "rulex/inference.hpp"

#include <set>

namespace rulex {

namespace {

void check_shapes(const Dataset& x, const LabelVector& y) {
  if (x.rows() != y.size())
    throw input_error("dataset has " + std::to_string(x.rows()) +
                      " rows but " + std::to_string(y.size()) + " labels");
}

// Index into model.terms() of the winning term for x, or -1 when nothing
// applies. Terms are stored in ascending id order, so keeping the first
// strict maximum breaks accuracy ties by lowest term id.
int winner_index(const RuleModel& model, std::span<const double> x,
                 const std::vector<char>* active) {
  int best = -1;
  double best_acc = -1.0;
  const auto& terms = model.terms();
  const auto& acc = model.accuracies();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (active && !(*active)[i]) continue;
    if (!term_applies(terms[i], x)) continue;
    if (acc[i] > best_acc) {
      best_acc = acc[i];
      best = static_cast<int>(i);
    }
  }
  return best;
}

}  // namespace

std::vector<int> applicable_terms(const RuleModel& model,
                                  std::span<const double> x) {
  std::vector<int> ids;
  for (const Term& t : model.terms())
    if (term_applies(t, x)) ids.push_back(t.id);
  return ids;
}

double term_accuracy(const Term& term, const Dataset& x, const LabelVector& y) {
  check_shapes(x, y);
  std::size_t applies = 0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (!term_applies(term, x.row(i))) continue;
    ++applies;
    if (y[i] == term.label) ++hits;
  }
  if (applies == 0) return 0.0;
  return static_cast<double>(hits) / static_cast<double>(applies);
}

ClassId predict(const RuleModel& model, std::span<const double> x) {
  const int w = winner_index(model, x, nullptr);
  return w < 0 ? model.default_class() : model.terms()[w].label;
}

ClassId predict_masked(const RuleModel& model, std::span<const double> x,
                       const std::vector<char>& active) {
  if (active.size() != model.terms().size())
    throw internal_error("active mask size does not match term count");
  const int w = winner_index(model, x, &active);
  return w < 0 ? model.default_class() : model.terms()[w].label;
}

LabelVector predict_all(const RuleModel& model, const Dataset& x) {
  LabelVector out;
  out.reserve(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) out.push_back(predict(model, x.row(i)));
  return out;
}

double ambiguity(const RuleModel& model, const Dataset& x) {
  if (x.rows() == 0) throw config_error("ambiguity needs a nonempty dataset");
  std::size_t ambiguous = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto row = x.row(i);
    ClassId first = 0;
    bool seen = false;
    for (const Term& t : model.terms()) {
      if (!term_applies(t, row)) continue;
      if (!seen) {
        first = t.label;
        seen = true;
      } else if (t.label != first) {
        ++ambiguous;
        break;
      }
    }
  }
  return static_cast<double>(ambiguous) / static_cast<double>(x.rows());
}

WinTable win_counts(const RuleModel& model, const Dataset& x) {
  WinTable wins;
  for (const Term& t : model.terms()) wins[t.id] = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const int w = winner_index(model, x.row(i), nullptr);
    if (w >= 0) ++wins[model.terms()[w].id];
  }
  return wins;
}

std::size_t total_wins(const WinTable& wins) {
  std::size_t sum = 0;
  for (const auto& [id, n] : wins) sum += n;
  return sum;
}

}  // namespace rulex
