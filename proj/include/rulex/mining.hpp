#pragma once

// Turning attribution rows into transactions of important dimensions and
// mining closed frequent itemsets per class.

#include <cstddef>
#include <span>
#include <vector>

#include "rulex/core.hpp"

namespace rulex {

/// Important dimensions of one sample, sorted ascending, no duplicates.
using Transaction = std::vector<std::size_t>;

/// Itemset with its transaction support. Items are sorted ascending.
struct Itemset {
  std::vector<std::size_t> items;
  std::size_t support = 0;

  bool operator==(const Itemset&) const = default;
};

enum class BinarizeMode { top_k, abs_threshold, positive };

/// How the important dimensions of an attribution row are selected.
struct BinarizationPolicy {
  BinarizeMode mode = BinarizeMode::top_k;
  std::size_t k = 3;   // top_k: number of dimensions by |score|
  double tau = 0.0;    // abs_threshold: keep dims with |score| >= tau
};

void validate_policy(const BinarizationPolicy& policy);

/// Selects the important dimensions of one attribution row.
///   top_k:         k dims with largest |score|, ties by lowest dim index
///   abs_threshold: dims with |score| >= tau
///   positive:      dims with score > 0
/// abs_threshold and positive may return an empty transaction.
/// Throws config_error when k exceeds the row length in top_k mode.
Transaction binarize(std::span<const double> attr_row,
                     const BinarizationPolicy& policy);

/// Mines exactly the nonempty itemsets with support >= min_support such that
/// no proper superset has equal support. Empty transactions are ignored and
/// the empty itemset is never reported. Output is sorted by (descending
/// support, ascending lexicographic items). Throws config_error when
/// min_support < 1.
std::vector<Itemset> mine_closed_frequent(
    const std::vector<Transaction>& transactions, std::size_t min_support);

}  // namespace rulex
