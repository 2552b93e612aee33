#include "doctest.h"

#include <charconv>
#include <fstream>
#include <random>

#include "rulex/io.hpp"
#include "testutil.hpp"

using namespace rulex;
using test::make_dataset;
using test::TempDir;

namespace {

RuleModel sample_model() {
  Term t0{0, 0, {{0, 0.25, 1.0}, {2, -4.5, -1.0}}};
  Term t1{1, 1, {{1, 10.0, 11.5}}};
  return RuleModel({0, 1}, {t0, t1}, 1, {0.9375, 0.5}, "extract(k=2) inputs=abc");
}

}  // namespace

TEST_CASE("format_double emits the shortest exact form") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-3.25) == "-3.25");
  CHECK(format_double(0.0) == "0");

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> value(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = value(rng);
    const std::string s = format_double(v);
    double parsed = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), parsed);
    REQUIRE(ec == std::errc{});
    CHECK(parsed == v);
  }
}

TEST_CASE("dataset CSV round-trips values, names and bytes") {
  const TempDir dir("dataset_csv");
  const auto path = dir.path / "data.csv";
  const Dataset d = make_dataset({{0.5, -1.25}, {3.0, 0.1}});
  write_dataset_csv(path, d);

  const Dataset back = read_dataset_csv(path);
  CHECK(back.rows() == 2);
  CHECK(back.feature_names() == d.feature_names());
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(back.at(i, j) == d.at(i, j));

  const auto rewritten = dir.path / "again.csv";
  write_dataset_csv(rewritten, back);
  CHECK(read_text_file(rewritten) == read_text_file(path));
}

TEST_CASE("dataset CSV reader reports the offending cell") {
  const TempDir dir("dataset_bad");
  const auto path = dir.path / "bad.csv";
  write_text_file(path, "a,b\n1.0,2.0\n3.0,oops\n");
  try {
    read_dataset_csv(path);
    FAIL("expected input_error");
  } catch (const input_error& e) {
    const std::string what = e.what();
    CHECK(what.find("row 2") != std::string::npos);
    CHECK(what.find("oops") != std::string::npos);
  }
}

TEST_CASE("dataset CSV reader rejects ragged rows and empty files") {
  const TempDir dir("dataset_shape");
  const auto ragged = dir.path / "ragged.csv";
  write_text_file(ragged, "a,b\n1.0\n");
  CHECK_THROWS_AS(read_dataset_csv(ragged), input_error);

  const auto empty = dir.path / "empty.csv";
  write_text_file(empty, "");
  CHECK_THROWS_AS(read_dataset_csv(empty), input_error);

  CHECK_THROWS_AS(read_dataset_csv(dir.path / "missing.csv"), input_error);
}

TEST_CASE("CSV readers tolerate CRLF line endings") {
  const TempDir dir("crlf");
  const auto path = dir.path / "data.csv";
  write_text_file(path, "a,b\r\n1.0,2.0\r\n");
  const Dataset d = read_dataset_csv(path);
  CHECK(d.rows() == 1);
  CHECK(d.at(0, 1) == 2.0);
}

TEST_CASE("label CSV round-trips with its column name") {
  const TempDir dir("labels");
  const auto path = dir.path / "preds.csv";
  write_labels_csv(path, {0, 2, 1, 0}, "prediction");
  CHECK(read_labels_csv(path) == LabelVector{0, 2, 1, 0});
  CHECK(read_text_file(path) == "prediction\n0\n2\n1\n0\n");

  const auto bad = dir.path / "bad.csv";
  write_text_file(bad, "label\n1\nx\n");
  CHECK_THROWS_AS(read_labels_csv(bad), input_error);
}

TEST_CASE("attribution CSV checks its header against the data header") {
  const TempDir dir("attr");
  const auto path = dir.path / "attr.csv";
  const AttributionMatrix attr({0.5, -0.25, 1.0, 0.0}, 2, 2);
  write_attributions_csv(path, attr, {"a", "b"});

  const AttributionMatrix back = read_attributions_csv(path, {"a", "b"});
  CHECK(back.rows() == 2);
  CHECK(back.row(1)[0] == 1.0);

  CHECK_THROWS_AS(read_attributions_csv(path, {"a", "c"}), input_error);
  CHECK_NOTHROW(read_attributions_csv(path, {}));  // no expectation
}

TEST_CASE("model documents survive a serialize/deserialize round-trip") {
  const RuleModel m = sample_model();
  const std::string text = serialize_model(m);
  const RuleModel back = deserialize_model(text);

  CHECK(back.classes() == m.classes());
  CHECK(back.default_class() == m.default_class());
  CHECK(back.terms() == m.terms());
  CHECK(back.accuracies() == m.accuracies());
  CHECK(back.provenance() == m.provenance());

  // canonical writer: re-serializing reproduces the bytes exactly
  CHECK(serialize_model(back) == text);
}

TEST_CASE("model files round-trip through the filesystem") {
  const TempDir dir("model");
  const auto path = dir.path / "model.json";
  const RuleModel m = sample_model();
  write_model(path, m);
  const RuleModel back = read_model(path);
  CHECK(back.terms() == m.terms());
  CHECK(read_text_file(path) == serialize_model(m));
}

TEST_CASE("model deserialization rejects malformed documents") {
  CHECK_THROWS_AS(deserialize_model("not json"), input_error);
  CHECK_THROWS_AS(deserialize_model("{}"), input_error);

  std::string wrong_version = serialize_model(sample_model());
  const auto pos = wrong_version.find("\"schema_version\": 1");
  REQUIRE(pos != std::string::npos);
  wrong_version.replace(pos, 19, "\"schema_version\": 9");
  CHECK_THROWS_AS(deserialize_model(wrong_version), input_error);

  // structurally valid JSON violating a model invariant
  std::string bad_acc = serialize_model(sample_model());
  const auto acc_pos = bad_acc.find("0.9375");
  REQUIRE(acc_pos != std::string::npos);
  bad_acc.replace(acc_pos, 6, "1.9375");
  CHECK_THROWS_AS(deserialize_model(bad_acc), input_error);
}

TEST_CASE("report CSV round-trips every metric row") {
  const TempDir dir("report");
  const auto path = dir.path / "report.csv";

  ReportDocument doc;
  doc.report.f1_macro = 0.875;
  doc.report.size = 12;
  doc.report.ambiguity = 0.25;
  doc.report.coverage = 0.96875;
  doc.report.per_class_f1 = {{0, 1.0}, {1, 0.75}};
  doc.extra_metrics["f1_ground_truth"] = 0.8125;

  write_report_csv(path, doc);
  const ReportDocument back = read_report_csv(path);
  CHECK(back.report == doc.report);
  CHECK(back.extra_metrics == doc.extra_metrics);

  const auto again = dir.path / "again.csv";
  write_report_csv(again, back);
  CHECK(read_text_file(again) == read_text_file(path));
}

TEST_CASE("report CSV rejects unexpected layouts") {
  const TempDir dir("report_bad");
  const auto path = dir.path / "bad.csv";
  write_text_file(path, "name,value\nf1_macro,0.5\n");
  CHECK_THROWS_AS(read_report_csv(path), input_error);

  write_text_file(path, "metric,value\nsize,2.5\n");
  CHECK_THROWS_AS(read_report_csv(path), input_error);
}

TEST_CASE("report markdown renders a table") {
  const TempDir dir("report_md");
  const auto path = dir.path / "report.md";
  ReportDocument doc;
  doc.report.f1_macro = 0.5;
  doc.report.size = 3;
  write_report_markdown(path, doc, "Evaluation: model.json");
  const std::string text = read_text_file(path);
  CHECK(text.find("# Evaluation: model.json") != std::string::npos);
  CHECK(text.find("| F1 | 0.5000 |") != std::string::npos);
  CHECK(text.find("| Size | 3 |") != std::string::npos);
}

TEST_CASE("change CSV round-trips, including records without a relative change") {
  const TempDir dir("changes");
  const auto path = dir.path / "changes.csv";
  std::vector<ChangeRecord> records{
      make_change_record("size", 20.0, 11.0),
      make_change_record("ambiguity", 0.0, 0.5),
  };
  write_changes_csv(path, records);
  CHECK(read_changes_csv(path) == records);
  CHECK(read_text_file(path).find("n/a") != std::string::npos);
}

TEST_CASE("trace CSV round-trips steps and final threshold") {
  const TempDir dir("trace");
  const auto path = dir.path / "trace.csv";
  PruneTrace trace;
  trace.steps.push_back(PruneStep{0, {2, 5}, 1.0});
  trace.steps.push_back(PruneStep{3, {1}, 0.75});
  trace.final_k = 3;
  write_trace_csv(path, trace);

  const PruneTrace back = read_trace_csv(path);
  REQUIRE(back.steps.size() == 2);
  CHECK(back.steps[0].k == 0);
  CHECK(back.steps[0].removed_term_ids == std::vector<int>{2, 5});
  CHECK(back.steps[0].accuracy_after == 1.0);
  CHECK(back.steps[1].removed_term_ids == std::vector<int>{1});
  CHECK(back.final_k == 3);

  const PruneTrace empty = read_trace_csv((write_trace_csv(path, {}), path));
  CHECK(empty.steps.empty());
  CHECK(empty.final_k == 0);
}

TEST_CASE("text files round-trip bytes and report missing paths") {
  const TempDir dir("text");
  const auto path = dir.path / "nested" / "file.txt";
  write_text_file(path, "line\n");
  CHECK(read_text_file(path) == "line\n");
  CHECK_THROWS_AS(read_text_file(dir.path / "nope.txt"), input_error);
}
