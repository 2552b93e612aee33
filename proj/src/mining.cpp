#include "rulex/mining.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rulex {

void validate_policy(const BinarizationPolicy& policy) {
  if (policy.mode == BinarizeMode::top_k && policy.k < 1)
    throw config_error("top_k binarization needs k >= 1");
  if (policy.mode == BinarizeMode::abs_threshold && policy.tau < 0.0)
    throw config_error("abs_threshold binarization needs tau >= 0");
}

Transaction binarize(std::span<const double> attr_row,
                     const BinarizationPolicy& policy) {
  validate_policy(policy);
  const std::size_t d = attr_row.size();
  Transaction out;
  switch (policy.mode) {
    case BinarizeMode::top_k: {
      if (policy.k > d)
        throw config_error("top_k k = " + std::to_string(policy.k) +
                           " exceeds feature count " + std::to_string(d));
      std::vector<std::size_t> order(d);
      std::iota(order.begin(), order.end(), std::size_t{0});
      // largest magnitude first, ties by lowest dim index
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return std::abs(attr_row[a]) > std::abs(attr_row[b]);
                       });
      out.assign(order.begin(), order.begin() + policy.k);
      std::sort(out.begin(), out.end());
      break;
    }
    case BinarizeMode::abs_threshold:
      for (std::size_t j = 0; j < d; ++j)
        if (std::abs(attr_row[j]) >= policy.tau) out.push_back(j);
      break;
    case BinarizeMode::positive:
      for (std::size_t j = 0; j < d; ++j)
        if (attr_row[j] > 0.0) out.push_back(j);
      break;
  }
  return out;
}

namespace {

// Closed-itemset DFS with prefix-preserving closure extensions. Each closed
// frequent itemset is produced exactly once: a child closure is kept only if
// its items below the extension item match the parent's.

using Tidset = std::vector<std::size_t>;

std::vector<std::size_t> closure_of(const std::vector<Transaction>& txns,
                                    const Tidset& tids) {
  std::vector<std::size_t> common = txns[tids[0]];
  std::vector<std::size_t> next;
  for (std::size_t i = 1; i < tids.size() && !common.empty(); ++i) {
    next.clear();
    std::set_intersection(common.begin(), common.end(),
                          txns[tids[i]].begin(), txns[tids[i]].end(),
                          std::back_inserter(next));
    common.swap(next);
  }
  return common;
}

bool prefix_matches(const std::vector<std::size_t>& a,
                    const std::vector<std::size_t>& b, std::size_t below) {
  auto a_end = std::lower_bound(a.begin(), a.end(), below);
  auto b_end = std::lower_bound(b.begin(), b.end(), below);
  return std::equal(a.begin(), a_end, b.begin(), b_end);
}

struct Miner {
  const std::vector<Transaction>& txns;
  const std::vector<std::size_t>& universe;  // all items present, ascending
  std::size_t min_support;
  std::vector<Itemset> out;

  void expand(const std::vector<std::size_t>& closed, const Tidset& tids,
              std::size_t min_next_item, bool has_min) {
    for (std::size_t item : universe) {
      if (has_min && item <= min_next_item) continue;
      if (std::binary_search(closed.begin(), closed.end(), item)) continue;
      Tidset sub;
      for (std::size_t t : tids)
        if (std::binary_search(txns[t].begin(), txns[t].end(), item))
          sub.push_back(t);
      if (sub.size() < min_support) continue;
      std::vector<std::size_t> child = closure_of(txns, sub);
      if (!prefix_matches(child, closed, item)) continue;
      out.push_back(Itemset{child, sub.size()});
      expand(child, sub, item, true);
    }
  }
};

}  // namespace

std::vector<Itemset> mine_closed_frequent(
    const std::vector<Transaction>& transactions, std::size_t min_support) {
  if (min_support < 1) throw config_error("min_support must be >= 1");

  std::vector<Transaction> txns;
  txns.reserve(transactions.size());
  for (const auto& t : transactions) {
    if (t.empty()) continue;
    Transaction canon = t;
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    txns.push_back(std::move(canon));
  }
  if (txns.size() < min_support) return {};

  std::vector<std::size_t> universe;
  for (const auto& t : txns) universe.insert(universe.end(), t.begin(), t.end());
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

  Tidset all(txns.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<std::size_t> root = closure_of(txns, all);

  Miner miner{txns, universe, min_support, {}};
  if (!root.empty()) miner.out.push_back(Itemset{root, all.size()});
  miner.expand(root, all, 0, false);

  std::sort(miner.out.begin(), miner.out.end(),
            [](const Itemset& a, const Itemset& b) {
              if (a.support != b.support) return a.support > b.support;
              return std::lexicographical_compare(a.items.begin(), a.items.end(),
                                                  b.items.begin(), b.items.end());
            });
  return miner.out;
}

}  // namespace rulex
