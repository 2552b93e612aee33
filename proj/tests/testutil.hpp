#pragma once

// Shared test fixtures: compact builders, seeded random generators and a
// brute-force reference miner that closed-itemset results are checked against.

#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "rulex/core.hpp"
#include "rulex/mining.hpp"

namespace rulex::test {

inline Dataset make_dataset(const std::vector<std::vector<double>>& rows) {
  const std::size_t d = rows.empty() ? 1 : rows[0].size();
  std::vector<double> values;
  values.reserve(rows.size() * d);
  for (const auto& row : rows) values.insert(values.end(), row.begin(), row.end());
  std::vector<std::string> names;
  for (std::size_t j = 0; j < d; ++j) names.push_back("f" + std::to_string(j));
  return Dataset(std::move(values), rows.size(), d, std::move(names));
}

inline AttributionMatrix make_attr(const std::vector<std::vector<double>>& rows) {
  const std::size_t d = rows.empty() ? 1 : rows[0].size();
  std::vector<double> scores;
  scores.reserve(rows.size() * d);
  for (const auto& row : rows) scores.insert(scores.end(), row.begin(), row.end());
  return AttributionMatrix(std::move(scores), rows.size(), d);
}

inline Dataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t d,
                              double range = 5.0) {
  std::uniform_real_distribution<double> value(-range, range);
  std::vector<double> values(n * d);
  for (double& v : values) v = value(rng);
  std::vector<std::string> names;
  for (std::size_t j = 0; j < d; ++j) names.push_back("f" + std::to_string(j));
  return Dataset(std::move(values), n, d, std::move(names));
}

inline LabelVector random_labels(std::mt19937_64& rng, std::size_t n, int n_classes) {
  std::uniform_int_distribution<int> label(0, n_classes - 1);
  LabelVector y(n);
  for (ClassId& c : y) c = label(rng);
  return y;
}

/// Model with random interval terms wide enough to cover a decent share of
/// uniform [-5, 5] data. Satisfies every RuleModel invariant by construction.
inline RuleModel random_model(std::mt19937_64& rng, std::size_t d, int n_classes,
                              std::size_t n_terms) {
  std::uniform_int_distribution<int> label(0, n_classes - 1);
  std::uniform_real_distribution<double> point(-6.0, 6.0);
  std::uniform_real_distribution<double> acc(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> n_constraints(
      1, std::min<std::size_t>(3, d));

  std::vector<ClassId> classes(n_classes);
  std::iota(classes.begin(), classes.end(), 0);

  std::vector<std::size_t> dims(d);
  std::iota(dims.begin(), dims.end(), std::size_t{0});

  std::vector<Term> terms;
  std::vector<double> accuracies;
  for (std::size_t t = 0; t < n_terms; ++t) {
    Term term;
    term.id = static_cast<int>(t);
    term.label = label(rng);
    std::vector<std::size_t> chosen;
    std::sample(dims.begin(), dims.end(), std::back_inserter(chosen),
                n_constraints(rng), rng);
    for (std::size_t dim : chosen) {
      const double a = point(rng);
      const double b = point(rng);
      term.constraints.push_back(
          IntervalConstraint{dim, std::min(a, b), std::max(a, b)});
    }
    terms.push_back(std::move(term));
    accuracies.push_back(acc(rng));
  }
  return RuleModel(std::move(classes), std::move(terms), label(rng),
                   std::move(accuracies));
}

inline std::vector<Transaction> random_transactions(std::mt19937_64& rng,
                                                    std::size_t n_txns,
                                                    std::size_t n_items) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double p = 0.1 + 0.5 * unit(rng);
  std::vector<Transaction> txns(n_txns);
  for (auto& t : txns)
    for (std::size_t i = 0; i < n_items; ++i)
      if (unit(rng) < p) t.push_back(i);
  return txns;
}

/// Reference miner: enumerates every nonempty item subset, keeps those with
/// support >= min_support whose closure equals themselves. Items must be < 20.
inline std::vector<Itemset> brute_force_closed(const std::vector<Transaction>& txns,
                                               std::size_t min_support) {
  std::vector<std::uint32_t> masks;
  std::size_t max_item = 0;
  for (const auto& t : txns) {
    std::uint32_t m = 0;
    for (std::size_t i : t) {
      m |= std::uint32_t{1} << i;
      max_item = std::max(max_item, i);
    }
    if (m) masks.push_back(m);
  }
  std::vector<Itemset> out;
  if (masks.size() < min_support) return out;

  const std::uint32_t limit = std::uint32_t{1} << (max_item + 1);
  for (std::uint32_t s = 1; s < limit; ++s) {
    std::size_t support = 0;
    std::uint32_t closure = ~std::uint32_t{0};
    for (std::uint32_t m : masks) {
      if ((m & s) == s) {
        ++support;
        closure &= m;
      }
    }
    if (support < min_support || closure != s) continue;
    Itemset itemset;
    itemset.support = support;
    for (std::size_t i = 0; i <= max_item; ++i)
      if (s & (std::uint32_t{1} << i)) itemset.items.push_back(i);
    out.push_back(std::move(itemset));
  }

  std::sort(out.begin(), out.end(), [](const Itemset& a, const Itemset& b) {
    if (a.support != b.support) return a.support > b.support;
    return std::lexicographical_compare(a.items.begin(), a.items.end(),
                                        b.items.begin(), b.items.end());
  });
  return out;
}

/// Fresh directory under the system temp root, removed on destruction.
struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& name)
      : path(std::filesystem::temp_directory_path() /
             ("rulex_" + name + "_" + std::to_string(::getpid()))) {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

}  // namespace rulex::test
