#include "rulex/pruning.hpp"

#include <algorithm>
#include <set>

namespace rulex {

void validate_prune_config(const PruneConfig& config) {
  if (!(config.theta >= 0.0 && config.theta <= 1.0))
    throw config_error("theta must be in [0, 1]");
}

double model_accuracy(const RuleModel& model, const Dataset& x,
                      const LabelVector& y) {
  if (x.rows() != y.size())
    throw input_error("dataset has " + std::to_string(x.rows()) +
                      " rows but " + std::to_string(y.size()) + " labels");
  if (x.rows() == 0) throw config_error("accuracy needs a nonempty dataset");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    if (predict(model, x.row(i)) == y[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(x.rows());
}

namespace {

LabelVector predictions_masked(const RuleModel& model, const Dataset& x,
                               const std::vector<char>& active) {
  LabelVector out;
  out.reserve(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i)
    out.push_back(predict_masked(model, x.row(i), active));
  return out;
}

double label_accuracy(const LabelVector& pred, const LabelVector& y) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i)
    if (pred[i] == y[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

}  // namespace

std::pair<RuleModel, PruneTrace> threshold_prune(const RuleModel& model,
                                                 const Dataset& x,
                                                 const LabelVector& y,
                                                 const PruneConfig& config) {
  validate_prune_config(config);
  if (x.rows() != y.size())
    throw input_error("reference set has " + std::to_string(x.rows()) +
                      " rows but " + std::to_string(y.size()) + " labels");
  if (x.rows() == 0) throw config_error("pruning needs a nonempty reference set");

  // Wins, baseline accuracy and baseline predictions are computed once on
  // the original model and stay fixed through the loop.
  const WinTable wins = win_counts(model, x);
  std::vector<char> active(model.terms().size(), 1);
  const LabelVector baseline_pred = predictions_masked(model, x, active);
  const double baseline_acc = label_accuracy(baseline_pred, y);

  std::size_t max_wins = 0;
  std::set<std::size_t> thresholds;  // distinct win counts; candidates only
                                     // change at these values of k
  for (const Term& t : model.terms()) {
    const std::size_t w = wins.at(t.id);
    max_wins = std::max(max_wins, w);
    thresholds.insert(w);
  }

  PruneTrace trace;
  for (std::size_t k : thresholds) {
    std::vector<char> candidate = active;
    std::vector<int> removed;
    for (std::size_t i = 0; i < model.terms().size(); ++i) {
      if (candidate[i] && wins.at(model.terms()[i].id) <= k) {
        candidate[i] = 0;
        removed.push_back(model.terms()[i].id);
      }
    }
    if (removed.empty()) continue;

    const LabelVector pred = predictions_masked(model, x, candidate);
    const double acc = label_accuracy(pred, y);
    const bool accepted = config.theta == 0.0
                              ? pred == baseline_pred
                              : acc >= (1.0 - config.theta) * baseline_acc;
    if (!accepted) break;

    active = std::move(candidate);
    trace.steps.push_back(PruneStep{k, std::move(removed), acc});
    trace.final_k = k;
    if (k >= max_wins) break;  // everything is gone; nothing left to try
  }

  std::vector<int> removed_ids;
  for (std::size_t i = 0; i < model.terms().size(); ++i)
    if (!active[i]) removed_ids.push_back(model.terms()[i].id);
  return {remove_terms(model, removed_ids), std::move(trace)};
}

}  // namespace rulex
