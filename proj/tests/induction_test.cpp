#include "doctest.h"

#include <random>

#include "rulex/induction.hpp"
#include "rulex/inference.hpp"
#include "testutil.hpp"

using namespace rulex;
using test::make_attr;
using test::make_dataset;

namespace {

CandidateTerm candidate(int tag, ClassId label, double precision,
                        std::size_t class_size,
                        const std::vector<std::size_t>& covered) {
  CandidateTerm c;
  c.term.label = label;
  // encode the tag in the constraint so selections are recognizable
  c.term.constraints.push_back(IntervalConstraint{0, 0.0, static_cast<double>(tag)});
  c.precision = precision;
  c.coverage = Bitset(class_size);
  for (std::size_t i : covered) c.coverage.set(i);
  return c;
}

int tag_of(const Term& t) { return static_cast<int>(t.constraints[0].hi); }

ExtractionConfig default_config() {
  ExtractionConfig config;
  config.policy.mode = BinarizeMode::top_k;
  config.policy.k = 1;
  return config;
}

}  // namespace

TEST_CASE("config validation") {
  ExtractionConfig c = default_config();
  CHECK_NOTHROW(validate_extraction_config(c));
  c.min_support_fraction = 0.0;
  CHECK_THROWS_AS(validate_extraction_config(c), config_error);
  c.min_support_fraction = 1.5;
  CHECK_THROWS_AS(validate_extraction_config(c), config_error);
  c = default_config();
  c.min_precision = -0.1;
  CHECK_THROWS_AS(validate_extraction_config(c), config_error);
  c = default_config();
  c.cover_target = 0.0;
  CHECK_THROWS_AS(validate_extraction_config(c), config_error);
}

TEST_CASE("build_term takes min and max over the supporting rows") {
  const Dataset x = make_dataset({
      {1.0, 5.0, -2.0},
      {3.0, 6.0, -4.0},
      {2.0, 7.0, -3.0},
  });
  const Itemset itemset{{0, 2}, 2};
  const Term t = build_term(itemset, 1, x, {0, 1});
  CHECK(t.label == 1);
  REQUIRE(t.constraints.size() == 2);
  CHECK(t.constraints[0] == IntervalConstraint{0, 1.0, 3.0});
  CHECK(t.constraints[1] == IntervalConstraint{2, -4.0, -2.0});
  CHECK(t.id == -1);
}

TEST_CASE("build_term covers every supporting row") {
  std::mt19937_64 rng(31);
  const Dataset x = test::random_dataset(rng, 30, 4);
  const Itemset itemset{{1, 3}, 5};
  const std::vector<std::size_t> rows{2, 7, 11, 19, 28};
  const Term t = build_term(itemset, 0, x, rows);
  for (std::size_t r : rows) CHECK(term_applies(t, x.row(r)));
}

TEST_CASE("build_term requires supporting rows") {
  const Dataset x = make_dataset({{1.0}});
  CHECK_THROWS_AS(build_term(Itemset{{0}, 1}, 0, x, {}), internal_error);
}

TEST_CASE("greedy cover picks max gain, then precision, then order") {
  const std::size_t class_size = 4;
  std::vector<CandidateTerm> candidates{
      candidate(1, 0, 0.8, class_size, {0, 1, 2}),
      candidate(2, 0, 0.9, class_size, {2, 3}),
      candidate(3, 0, 0.7, class_size, {3}),
      candidate(4, 0, 0.4, class_size, {0, 1, 2, 3}),  // below min_precision
  };
  const auto selected = greedy_cover(candidates, class_size, default_config());
  REQUIRE(selected.size() == 2);
  CHECK(tag_of(selected[0]) == 1);  // biggest gain
  CHECK(tag_of(selected[1]) == 2);  // gain tie with tag 3, higher precision
}

TEST_CASE("greedy cover breaks full ties by candidate order") {
  const std::size_t class_size = 2;
  std::vector<CandidateTerm> candidates{
      candidate(1, 0, 0.8, class_size, {0}),
      candidate(2, 0, 0.8, class_size, {0}),
      candidate(3, 0, 0.8, class_size, {1}),
  };
  const auto selected = greedy_cover(candidates, class_size, default_config());
  REQUIRE(selected.size() == 2);
  CHECK(tag_of(selected[0]) == 1);
  CHECK(tag_of(selected[1]) == 3);
}

TEST_CASE("greedy cover stops at the coverage target") {
  ExtractionConfig config = default_config();
  config.cover_target = 0.5;
  const std::size_t class_size = 4;
  std::vector<CandidateTerm> candidates{
      candidate(1, 0, 0.9, class_size, {0, 1, 2}),
      candidate(2, 0, 0.9, class_size, {3}),
  };
  const auto selected = greedy_cover(candidates, class_size, config);
  REQUIRE(selected.size() == 1);
  CHECK(tag_of(selected[0]) == 1);
}

TEST_CASE("greedy cover stops when no candidate adds coverage") {
  const std::size_t class_size = 3;
  std::vector<CandidateTerm> candidates{
      candidate(1, 0, 0.9, class_size, {0}),
      candidate(2, 0, 0.9, class_size, {0}),
  };
  const auto selected = greedy_cover(candidates, class_size, default_config());
  CHECK(selected.size() == 1);
}

TEST_CASE("greedy cover handles empty inputs") {
  CHECK(greedy_cover({}, 5, default_config()).empty());
  CHECK(greedy_cover({}, 0, default_config()).empty());
}

TEST_CASE("greedy cover rejects mis-sized coverage") {
  std::vector<CandidateTerm> candidates{candidate(1, 0, 0.9, 3, {0})};
  CHECK_THROWS_AS(greedy_cover(candidates, 4, default_config()), internal_error);
}

TEST_CASE("extraction on cleanly separated data finds one box per class") {
  const Dataset x = make_dataset({
      {0.0, 3.0}, {0.5, -1.0}, {1.0, 2.0}, {0.2, 0.0},      // class 0: f0 in [0,1]
      {10.0, 3.0}, {10.5, -1.0}, {11.0, 2.0}, {10.2, 0.0},  // class 1: f0 in [10,11]
  });
  const LabelVector y{0, 0, 0, 0, 1, 1, 1, 1};
  const AttributionMatrix attr = make_attr({
      {1.0, 0.1}, {0.9, 0.2}, {1.1, 0.0}, {0.8, 0.1},
      {0.9, 0.05}, {1.0, 0.1}, {0.7, 0.2}, {1.2, 0.0},
  });
  ExtractionConfig config;
  config.policy.mode = BinarizeMode::top_k;
  config.policy.k = 1;
  config.min_support_fraction = 0.5;

  ExtractionDiagnostics diagnostics;
  const RuleModel m = extract_rule_model(x, y, attr, config, "prov", &diagnostics);

  CHECK(m.classes() == std::vector<ClassId>{0, 1});
  CHECK(m.default_class() == 0);  // 4-4 tie keeps the lowest class
  CHECK(m.provenance() == "prov");
  REQUIRE(m.size() == 2);

  CHECK(m.terms()[0].id == 0);
  CHECK(m.terms()[0].label == 0);
  REQUIRE(m.terms()[0].constraints.size() == 1);
  CHECK(m.terms()[0].constraints[0] == IntervalConstraint{0, 0.0, 1.0});

  CHECK(m.terms()[1].id == 1);
  CHECK(m.terms()[1].label == 1);
  CHECK(m.terms()[1].constraints[0] == IntervalConstraint{0, 10.0, 11.0});

  CHECK(m.accuracies() == std::vector<double>{1.0, 1.0});

  REQUIRE(diagnostics.per_class.size() == 2);
  for (const auto& s : diagnostics.per_class) {
    CHECK(s.samples == 4);
    CHECK(s.min_support == 2);
    CHECK(s.itemsets == 1);
    CHECK(s.candidates == 1);
    CHECK(s.selected == 1);
    CHECK(s.empty_transactions == 0);
  }
  CHECK(diagnostics.warnings.empty());
}

TEST_CASE("min_support is the floored fraction of the class size, at least 2") {
  std::mt19937_64 rng(8);
  const Dataset x = test::random_dataset(rng, 10, 2);
  const LabelVector y(10, 0);
  const AttributionMatrix attr = make_attr(
      std::vector<std::vector<double>>(10, std::vector<double>{1.0, 0.5}));

  ExtractionConfig config;
  config.policy.k = 1;
  config.min_support_fraction = 0.05;  // floor(0.5) = 0, clamped to 2
  ExtractionDiagnostics diagnostics;
  extract_rule_model(x, y, attr, config, {}, &diagnostics);
  CHECK(diagnostics.per_class[0].min_support == 2);

  config.min_support_fraction = 0.5;  // floor(5) = 5
  diagnostics = {};
  extract_rule_model(x, y, attr, config, {}, &diagnostics);
  CHECK(diagnostics.per_class[0].min_support == 5);
}

TEST_CASE("a class with no mineable structure yields a warning") {
  const Dataset x = make_dataset({{0.0}, {1.0}, {10.0}, {11.0}});
  const LabelVector y{0, 0, 1, 1};
  const AttributionMatrix attr = make_attr({{1.0}, {0.9}, {0.01}, {0.02}});
  ExtractionConfig config;
  config.policy.mode = BinarizeMode::abs_threshold;
  config.policy.tau = 0.5;  // class 1 rows binarize to empty transactions

  ExtractionDiagnostics diagnostics;
  const RuleModel m = extract_rule_model(x, y, attr, config, {}, &diagnostics);
  CHECK(m.size() == 1);
  CHECK(m.terms()[0].label == 0);
  REQUIRE(diagnostics.warnings.size() == 1);
  CHECK(diagnostics.warnings[0].find("class 1") != std::string::npos);
  CHECK(diagnostics.per_class[1].empty_transactions == 2);
}

TEST_CASE("extraction validates shapes") {
  const Dataset x = make_dataset({{0.0}, {1.0}});
  const AttributionMatrix attr = make_attr({{1.0}, {1.0}});
  ExtractionConfig config = default_config();
  CHECK_THROWS_AS(extract_rule_model(x, {0}, attr, config), input_error);
  const AttributionMatrix bad = make_attr({{1.0}});
  CHECK_THROWS_AS(extract_rule_model(x, {0, 0}, bad, config), input_error);
}

TEST_CASE("extraction is deterministic") {
  std::mt19937_64 rng(99);
  const Dataset x = test::random_dataset(rng, 60, 3);
  const LabelVector y = test::random_labels(rng, 60, 2);
  std::vector<double> scores(60 * 3);
  std::uniform_real_distribution<double> s(-1.0, 1.0);
  for (double& v : scores) v = s(rng);
  const AttributionMatrix attr(std::move(scores), 60, 3);

  ExtractionConfig config;
  config.policy.k = 2;
  const RuleModel a = extract_rule_model(x, y, attr, config);
  const RuleModel b = extract_rule_model(x, y, attr, config);
  CHECK(a.terms() == b.terms());
  CHECK(a.accuracies() == b.accuracies());
  CHECK(a.default_class() == b.default_class());
}

TEST_CASE("term ids are dense and ascending across classes") {
  std::mt19937_64 rng(4);
  const Dataset x = test::random_dataset(rng, 80, 3);
  const LabelVector y = test::random_labels(rng, 80, 3);
  std::vector<double> scores(80 * 3);
  std::uniform_real_distribution<double> s(-1.0, 1.0);
  for (double& v : scores) v = s(rng);
  const AttributionMatrix attr(std::move(scores), 80, 3);

  ExtractionConfig config;
  config.policy.k = 2;
  config.min_precision = 0.0;
  const RuleModel m = extract_rule_model(x, y, attr, config);
  for (std::size_t i = 0; i < m.terms().size(); ++i)
    CHECK(m.terms()[i].id == static_cast<int>(i));

  // class labels appear in ascending blocks
  for (std::size_t i = 1; i < m.terms().size(); ++i)
    CHECK(m.terms()[i - 1].label <= m.terms()[i].label);
}

TEST_CASE("frozen term accuracies match term_accuracy on the extraction set") {
  std::mt19937_64 rng(12);
  const Dataset x = test::random_dataset(rng, 50, 2);
  const LabelVector y = test::random_labels(rng, 50, 2);
  std::vector<double> scores(50 * 2);
  std::uniform_real_distribution<double> s(-1.0, 1.0);
  for (double& v : scores) v = s(rng);
  const AttributionMatrix attr(std::move(scores), 50, 2);

  ExtractionConfig config;
  config.policy.k = 1;
  config.min_precision = 0.0;
  const RuleModel m = extract_rule_model(x, y, attr, config);
  for (std::size_t i = 0; i < m.size(); ++i)
    CHECK(m.accuracies()[i] == term_accuracy(m.terms()[i], x, y));
}
