#pragma once

// Minimal built-in black box (linear softmax classifier) and an occlusion
// explainer, so the full pipeline runs end-to-end without external tooling.
// Externally computed attribution files remain the primary ingestion path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rulex/core.hpp"

namespace rulex {

/// Linear softmax classifier: logits = W x + b, one row of W per class.
struct LinearSoftmaxModel {
  std::vector<ClassId> classes;   // fixed class order
  std::vector<double> weights;    // row-major |classes| x d
  std::vector<double> biases;     // |classes|
  std::size_t dims = 0;

  std::span<const double> class_weights(std::size_t class_index) const {
    return {weights.data() + class_index * dims, dims};
  }
};

/// Full-batch gradient descent on softmax cross-entropy, deterministic given
/// the seed. Throws config_error on epochs = 0 or learning_rate <= 0, and a
/// training-divergence config_error when the loss turns non-finite.
LinearSoftmaxModel train_linear_softmax(const Dataset& x, const LabelVector& y,
                                        std::size_t epochs,
                                        double learning_rate,
                                        std::uint64_t seed);

/// Per-epoch training losses of the last train_linear_softmax-style run;
/// exposed for tests via the out parameter overload.
LinearSoftmaxModel train_linear_softmax(const Dataset& x, const LabelVector& y,
                                        std::size_t epochs,
                                        double learning_rate,
                                        std::uint64_t seed,
                                        std::vector<double>* losses);

/// argmax over softmax logits, ties to the lowest class in model order.
ClassId predict_blackbox(const LinearSoftmaxModel& model,
                         std::span<const double> x);
LabelVector predict_blackbox(const LinearSoftmaxModel& model, const Dataset& x);

/// Softmax probability of class_index for sample x.
double class_probability(const LinearSoftmaxModel& model,
                         std::span<const double> x, std::size_t class_index);

/// Occlusion attributions: score[i][j] is the drop in the predicted class's
/// probability when feature j of sample i is replaced by baseline[j].
/// An empty baseline defaults to the per-feature mean of x.
AttributionMatrix occlusion_attributions(const LinearSoftmaxModel& model,
                                         const Dataset& x,
                                         std::vector<double> baseline = {});

}  // namespace rulex
