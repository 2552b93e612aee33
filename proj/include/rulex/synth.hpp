#pragma once

// Deterministic synthetic data: mixtures of Gaussian blobs with class labels,
// used by the demo command and test fixtures.

#include <cstddef>
#include <cstdint>
#include <utility>

#include "rulex/core.hpp"

namespace rulex {

struct BlobMixtureConfig {
  std::size_t dims = 2;
  std::size_t n_classes = 2;
  std::size_t blobs_per_class = 2;
  std::size_t samples_per_blob = 60;
  double mean_range = 4.0;  // blob centers drawn uniformly from [-range, range]
  double stddev = 1.0;
  std::uint64_t seed = 1;
};

/// Samples a blob mixture. Blob centers and draws come from a single seeded
/// generator, so identical configs produce identical data. Class overlap is
/// controlled by stddev relative to mean_range.
std::pair<Dataset, LabelVector> make_blob_mixture(const BlobMixtureConfig& config);

}  // namespace rulex
