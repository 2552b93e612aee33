#include "rulex/synth.hpp"

#include <random>
#include <string>

namespace rulex {

std::pair<Dataset, LabelVector> make_blob_mixture(const BlobMixtureConfig& config) {
  if (config.dims == 0 || config.n_classes == 0 || config.blobs_per_class == 0 ||
      config.samples_per_blob == 0)
    throw config_error("blob mixture needs dims, classes, blobs and samples >= 1");
  if (!(config.stddev > 0.0)) throw config_error("blob stddev must be > 0");

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> center(-config.mean_range, config.mean_range);
  std::normal_distribution<double> noise(0.0, config.stddev);

  const std::size_t n_blobs = config.n_classes * config.blobs_per_class;
  std::vector<std::vector<double>> means(n_blobs, std::vector<double>(config.dims));
  for (auto& mean : means)
    for (double& m : mean) m = center(rng);

  const std::size_t n = n_blobs * config.samples_per_blob;
  std::vector<double> values;
  values.reserve(n * config.dims);
  LabelVector labels;
  labels.reserve(n);
  for (std::size_t b = 0; b < n_blobs; ++b) {
    const ClassId label = static_cast<ClassId>(b % config.n_classes);
    for (std::size_t s = 0; s < config.samples_per_blob; ++s) {
      for (std::size_t j = 0; j < config.dims; ++j)
        values.push_back(means[b][j] + noise(rng));
      labels.push_back(label);
    }
  }

  std::vector<std::string> names;
  names.reserve(config.dims);
  for (std::size_t j = 0; j < config.dims; ++j) names.push_back("f" + std::to_string(j));
  return {Dataset(std::move(values), n, config.dims, std::move(names)),
          std::move(labels)};
}

}  // namespace rulex
