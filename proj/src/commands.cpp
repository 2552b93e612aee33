#include "rulex/commands.hpp"

#include <cstdio>
#include <ostream>
#include <set>

#include "rulex/evaluation.hpp"
#include "rulex/io.hpp"
#include "rulex/surrogate.hpp"
#include "rulex/synth.hpp"

namespace rulex {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const std::string& text) {
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string input_fingerprint(const std::vector<std::filesystem::path>& paths) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const auto& p : paths) h = fnv1a(h, read_text_file(p));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BinarizeMode parse_binarize_mode(const std::string& name) {
  if (name == "top_k") return BinarizeMode::top_k;
  if (name == "abs_threshold") return BinarizeMode::abs_threshold;
  if (name == "positive") return BinarizeMode::positive;
  throw config_error("unknown binarize mode '" + name +
                     "' (expected top_k, abs_threshold or positive)");
}

std::vector<ClassId> scored_classes(const RuleModel& model, const LabelVector& y) {
  std::set<ClassId> s(model.classes().begin(), model.classes().end());
  s.insert(y.begin(), y.end());
  return {s.begin(), s.end()};
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f%%", 100.0 * v);
  return buf;
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

void run_extract(const ExtractOptions& options, std::ostream& log) {
  ExtractionConfig config = options.config;
  config.policy.mode = parse_binarize_mode(options.binarize_mode);
  config.policy.tau = options.tau;
  validate_extraction_config(config);

  const Dataset x = read_dataset_csv(options.data);
  const LabelVector y_hat = read_labels_csv(options.preds);
  const AttributionMatrix attr =
      read_attributions_csv(options.attr, x.feature_names());

  std::string provenance = "extract(binarize=" + options.binarize_mode;
  if (config.policy.mode == BinarizeMode::top_k)
    provenance += " k=" + std::to_string(config.policy.k);
  if (config.policy.mode == BinarizeMode::abs_threshold)
    provenance += " tau=" + format_double(config.policy.tau);
  provenance += ", min_support_fraction=" + format_double(config.min_support_fraction) +
                ", min_precision=" + format_double(config.min_precision) +
                ", cover_target=" + format_double(config.cover_target) + ")";
  provenance += " n=" + std::to_string(x.rows()) + " d=" + std::to_string(x.cols());
  provenance +=
      " inputs=" + input_fingerprint({options.data, options.preds, options.attr});

  ExtractionDiagnostics diagnostics;
  const RuleModel model =
      extract_rule_model(x, y_hat, attr, config, provenance, &diagnostics);

  for (const auto& s : diagnostics.per_class)
    log << "class " << s.label << ": " << s.samples << " samples, min_support "
        << s.min_support << ", " << s.itemsets << " itemsets, " << s.candidates
        << " candidates, " << s.selected << " terms\n";
  for (const auto& w : diagnostics.warnings) log << "warning: " << w << "\n";

  write_model(options.out, model);
  log << "wrote " << options.out.string() << " (" << model.size() << " terms, "
      << model.classes().size() << " classes)\n";
}

void run_prune(const PruneOptions& options, std::ostream& log) {
  PruneConfig config;
  config.theta = options.theta;
  validate_prune_config(config);

  const RuleModel model = read_model(options.model);
  const Dataset x = read_dataset_csv(options.data);
  const LabelVector y = read_labels_csv(options.preds);

  const auto [pruned, trace] = threshold_prune(model, x, y, config);

  const EvalReport before = evaluate(model, x, y);
  const EvalReport after = evaluate(pruned, x, y);

  write_model(options.out / "pruned_model.json", pruned);
  write_trace_csv(options.out / "prune_trace.csv", trace);
  write_changes_csv(options.out / "changes.csv", compare(before, after));

  log << "pruned " << model.size() << " -> " << pruned.size()
      << " terms (theta=" << format_double(config.theta)
      << ", final_k=" << trace.final_k << ", " << trace.steps.size()
      << " steps)\n";
  log << "reference accuracy " << fixed4(model_accuracy(model, x, y)) << " -> "
      << fixed4(model_accuracy(pruned, x, y)) << "\n";
  log << "wrote " << (options.out / "pruned_model.json").string() << "\n";
}

void run_eval(const EvalOptions& options, std::ostream& log) {
  const RuleModel model = read_model(options.model);
  const Dataset x = read_dataset_csv(options.data);
  const LabelVector preds = read_labels_csv(options.preds);
  LabelVector labels;
  if (!options.labels.empty()) labels = read_labels_csv(options.labels);

  const bool against_truth = options.f1_target == F1Target::ground_truth;
  if (against_truth && labels.empty())
    throw config_error("--f1-target ground_truth requires --labels");
  const LabelVector& reference = against_truth ? labels : preds;

  ReportDocument doc;
  doc.report = evaluate(model, x, reference);

  const LabelVector model_preds = predict_all(model, x);
  const std::vector<ClassId> classes = scored_classes(model, reference);
  if (options.f1_averaging == F1Averaging::weighted)
    doc.extra_metrics["f1_weighted"] = weighted_f1(model_preds, reference, classes);
  if (against_truth)
    doc.extra_metrics["f1_fidelity"] =
        macro_f1(model_preds, preds, scored_classes(model, preds));
  else if (!labels.empty())
    doc.extra_metrics["f1_ground_truth"] =
        macro_f1(model_preds, labels, scored_classes(model, labels));

  const auto csv = options.out / (options.report_name + ".csv");
  const auto md = options.out / (options.report_name + ".md");
  write_report_csv(csv, doc);
  write_report_markdown(md, doc, "Evaluation: " + options.model.filename().string());

  log << "f1 " << fixed4(doc.report.f1_macro) << " ("
      << (against_truth ? "ground truth" : "fidelity") << "), size "
      << doc.report.size << ", ambiguity " << percent(doc.report.ambiguity)
      << ", coverage " << percent(doc.report.coverage) << "\n";
  log << "wrote " << csv.string() << "\n";
}

void run_compare(const CompareOptions& options, std::ostream& log) {
  const ReportDocument before = read_report_csv(options.before);
  const ReportDocument after = read_report_csv(options.after);

  std::optional<double> ref_before;
  std::optional<double> ref_after;
  const auto b = before.extra_metrics.find("f1_ground_truth");
  const auto a = after.extra_metrics.find("f1_ground_truth");
  if (b != before.extra_metrics.end() && a != after.extra_metrics.end()) {
    ref_before = b->second;
    ref_after = a->second;
  }

  const auto records = compare(before.report, after.report, ref_before, ref_after);
  write_changes_csv(options.out, records);

  for (const auto& rec : records) {
    log << rec.metric << ": " << format_double(rec.before) << " -> "
        << format_double(rec.after);
    if (rec.rel_change_pct) log << " (" << fixed4(*rec.rel_change_pct) << "%)";
    log << "\n";
  }
  log << "wrote " << options.out.string() << "\n";
}

void run_demo(const DemoOptions& options, std::ostream& log) {
  PruneConfig prune_config;
  prune_config.theta = options.theta;
  validate_prune_config(prune_config);

  BlobMixtureConfig blob;
  blob.dims = 6;
  blob.n_classes = 3;
  blob.blobs_per_class = 1;
  blob.samples_per_blob = 200;
  blob.mean_range = 5.0;
  blob.stddev = 1.6;
  blob.seed = options.seed;
  const auto [full, full_labels] = make_blob_mixture(blob);

  // alternate rows into train and held-out so both halves share every blob
  std::vector<double> train_values;
  std::vector<double> held_values;
  LabelVector train_labels;
  LabelVector held_labels;
  for (std::size_t i = 0; i < full.rows(); ++i) {
    const auto row = full.row(i);
    auto& values = (i % 2 == 0) ? train_values : held_values;
    auto& labels = (i % 2 == 0) ? train_labels : held_labels;
    values.insert(values.end(), row.begin(), row.end());
    labels.push_back(full_labels[i]);
  }
  const Dataset train(std::move(train_values), train_labels.size(), full.cols(),
                      full.feature_names());
  const Dataset held(std::move(held_values), held_labels.size(), full.cols(),
                     full.feature_names());

  const LinearSoftmaxModel blackbox =
      train_linear_softmax(train, train_labels, 300, 0.05, options.seed);
  const LabelVector train_preds = predict_blackbox(blackbox, train);
  const LabelVector held_preds = predict_blackbox(blackbox, held);
  const AttributionMatrix attr = occlusion_attributions(blackbox, train);

  write_dataset_csv(options.out / "train.csv", train);
  write_labels_csv(options.out / "train_preds.csv", train_preds, "prediction");
  write_attributions_csv(options.out / "train_attr.csv", attr,
                         train.feature_names());
  write_dataset_csv(options.out / "heldout.csv", held);
  write_labels_csv(options.out / "heldout_preds.csv", held_preds, "prediction");

  ExtractionConfig config;
  config.policy.mode = BinarizeMode::top_k;
  config.policy.k = 3;
  const std::string provenance =
      "demo(seed=" + std::to_string(options.seed) +
      ", theta=" + format_double(options.theta) + ")";

  ExtractionDiagnostics diagnostics;
  const RuleModel model =
      extract_rule_model(train, train_preds, attr, config, provenance, &diagnostics);
  for (const auto& w : diagnostics.warnings) log << "warning: " << w << "\n";
  write_model(options.out / "model.json", model);

  const auto [pruned, trace] = threshold_prune(model, train, train_preds, prune_config);
  write_model(options.out / "pruned_model.json", pruned);
  write_trace_csv(options.out / "prune_trace.csv", trace);

  ReportDocument before;
  before.report = evaluate(model, held, held_preds);
  ReportDocument after;
  after.report = evaluate(pruned, held, held_preds);
  write_report_csv(options.out / "report_before.csv", before);
  write_report_csv(options.out / "report_after.csv", after);
  write_changes_csv(options.out / "changes.csv",
                    compare(before.report, after.report));

  log << "black box: linear softmax on " << train.rows() << " samples, "
      << blob.n_classes << " classes\n";
  log << "extracted " << model.size() << " terms; pruned to " << pruned.size()
      << " (theta=" << format_double(options.theta)
      << ", final_k=" << trace.final_k << ")\n";
  log << "held-out fidelity f1 " << fixed4(before.report.f1_macro) << " -> "
      << fixed4(after.report.f1_macro) << ", ambiguity "
      << percent(before.report.ambiguity) << " -> "
      << percent(after.report.ambiguity) << "\n";
  log << "artifacts in " << options.out.string() << "\n";
}

int run_guarded(const std::function<void()>& body, std::ostream& err) {
  try {
    body();
    return 0;
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const config_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const internal_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace rulex
