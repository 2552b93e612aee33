#include "rulex/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace rulex {

namespace {

void softmax_inplace(std::vector<double>& logits) {
  const double m = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double& v : logits) {
    v = std::exp(v - m);
    sum += v;
  }
  for (double& v : logits) v /= sum;
}

std::vector<double> probabilities(const LinearSoftmaxModel& model,
                                  std::span<const double> x) {
  std::vector<double> logits(model.classes.size());
  for (std::size_t c = 0; c < model.classes.size(); ++c) {
    double z = model.biases[c];
    const auto w = model.class_weights(c);
    for (std::size_t j = 0; j < model.dims; ++j) z += w[j] * x[j];
    logits[c] = z;
  }
  softmax_inplace(logits);
  return logits;
}

std::size_t argmax_lowest(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

}  // namespace

LinearSoftmaxModel train_linear_softmax(const Dataset& x, const LabelVector& y,
                                        std::size_t epochs,
                                        double learning_rate,
                                        std::uint64_t seed) {
  return train_linear_softmax(x, y, epochs, learning_rate, seed, nullptr);
}

LinearSoftmaxModel train_linear_softmax(const Dataset& x, const LabelVector& y,
                                        std::size_t epochs,
                                        double learning_rate,
                                        std::uint64_t seed,
                                        std::vector<double>* losses) {
  if (epochs < 1) throw config_error("training needs epochs >= 1");
  if (!(learning_rate > 0.0)) throw config_error("learning_rate must be > 0");
  if (x.rows() != y.size())
    throw input_error("dataset has " + std::to_string(x.rows()) +
                      " rows but " + std::to_string(y.size()) + " labels");
  if (x.rows() == 0) throw input_error("training needs at least one sample");

  LinearSoftmaxModel model;
  model.classes = distinct_classes(y);
  model.dims = x.cols();
  const std::size_t n_classes = model.classes.size();
  const std::size_t d = model.dims;
  const std::size_t n = x.rows();

  std::vector<std::size_t> class_index(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto it = std::lower_bound(model.classes.begin(), model.classes.end(), y[i]);
    class_index[i] = static_cast<std::size_t>(it - model.classes.begin());
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> init(0.0, 0.01);
  model.weights.resize(n_classes * d);
  for (double& w : model.weights) w = init(rng);
  model.biases.assign(n_classes, 0.0);

  std::vector<double> grad_w(n_classes * d);
  std::vector<double> grad_b(n_classes);
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    std::fill(grad_w.begin(), grad_w.end(), 0.0);
    std::fill(grad_b.begin(), grad_b.end(), 0.0);
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = x.row(i);
      std::vector<double> p = probabilities(model, row);
      loss -= std::log(std::max(p[class_index[i]], 1e-300));
      for (std::size_t c = 0; c < n_classes; ++c) {
        const double delta = p[c] - (c == class_index[i] ? 1.0 : 0.0);
        grad_b[c] += delta;
        for (std::size_t j = 0; j < d; ++j) grad_w[c * d + j] += delta * row[j];
      }
    }
    loss /= static_cast<double>(n);
    if (!std::isfinite(loss))
      throw config_error("training diverged (non-finite loss); lower learning_rate");
    if (losses) losses->push_back(loss);
    const double scale = learning_rate / static_cast<double>(n);
    for (std::size_t k = 0; k < grad_w.size(); ++k) model.weights[k] -= scale * grad_w[k];
    for (std::size_t c = 0; c < n_classes; ++c) model.biases[c] -= scale * grad_b[c];
  }
  return model;
}

ClassId predict_blackbox(const LinearSoftmaxModel& model,
                         std::span<const double> x) {
  if (x.size() != model.dims)
    throw input_error("sample has " + std::to_string(x.size()) +
                      " features but the model expects " +
                      std::to_string(model.dims));
  const std::vector<double> p = probabilities(model, x);
  return model.classes[argmax_lowest(p)];
}

LabelVector predict_blackbox(const LinearSoftmaxModel& model, const Dataset& x) {
  LabelVector out;
  out.reserve(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i)
    out.push_back(predict_blackbox(model, x.row(i)));
  return out;
}

double class_probability(const LinearSoftmaxModel& model,
                         std::span<const double> x, std::size_t class_index) {
  return probabilities(model, x)[class_index];
}

AttributionMatrix occlusion_attributions(const LinearSoftmaxModel& model,
                                         const Dataset& x,
                                         std::vector<double> baseline) {
  const std::size_t d = x.cols();
  if (d != model.dims)
    throw input_error("dataset has " + std::to_string(d) +
                      " features but the model expects " +
                      std::to_string(model.dims));
  if (baseline.empty()) {
    baseline.assign(d, 0.0);
    if (x.rows() > 0) {
      for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < d; ++j) baseline[j] += x.at(i, j);
      for (double& b : baseline) b /= static_cast<double>(x.rows());
    }
  } else if (baseline.size() != d) {
    throw input_error("baseline has " + std::to_string(baseline.size()) +
                      " entries but the dataset has " + std::to_string(d) +
                      " features");
  }
  for (double b : baseline)
    if (!std::isfinite(b)) throw input_error("baseline must be finite");

  std::vector<double> scores(x.rows() * d, 0.0);
  std::vector<double> occluded(d);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto row = x.row(i);
    const std::vector<double> p = probabilities(model, row);
    const std::size_t predicted = argmax_lowest(p);
    std::copy(row.begin(), row.end(), occluded.begin());
    for (std::size_t j = 0; j < d; ++j) {
      const double original = occluded[j];
      occluded[j] = baseline[j];
      scores[i * d + j] = p[predicted] - class_probability(model, occluded, predicted);
      occluded[j] = original;
    }
  }
  return AttributionMatrix(std::move(scores), x.rows(), d);
}

}  // namespace rulex
