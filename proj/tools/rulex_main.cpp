#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "rulex/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"rulex: global DNF rule models from local attributions"};
  app.require_subcommand(1);

  std::string data, preds, attr, model, out, labels, before, after;
  std::string binarize = "top_k";
  std::string f1_target = "fidelity";
  std::string f1_average = "macro";
  std::string report_name = "report";
  double theta = 0.0;
  double demo_theta = 0.05;
  double tau = 0.0;
  double min_support = 0.05;
  double min_precision = 0.5;
  double cover_target = 1.0;
  std::size_t top_k = 3;
  std::uint64_t seed = 2;

  CLI::App* extract = app.add_subcommand(
      "extract", "Mine a rule model from data, predictions and attributions");
  extract->add_option("--data", data, "feature matrix CSV")->required();
  extract->add_option("--preds", preds, "black-box predictions CSV")->required();
  extract->add_option("--attr", attr, "attribution matrix CSV")->required();
  extract->add_option("--out", out, "output model JSON path")->required();
  extract->add_option("--binarize", binarize,
                      "row binarization: top_k, abs_threshold or positive");
  extract->add_option("--top-k", top_k, "dimensions kept per row (top_k mode)");
  extract->add_option("--tau", tau, "score threshold (abs_threshold mode)");
  extract->add_option("--min-support", min_support,
                      "minimum itemset support as a fraction of the class size");
  extract->add_option("--min-precision", min_precision,
                      "minimum candidate precision");
  extract->add_option("--cover-target", cover_target,
                      "per-class coverage fraction to reach");

  CLI::App* prune = app.add_subcommand(
      "prune", "Threshold-prune a model against a reference set");
  prune->add_option("--model", model, "model JSON path")->required();
  prune->add_option("--data", data, "reference feature matrix CSV")->required();
  prune->add_option("--preds", preds, "reference predictions CSV")->required();
  prune->add_option("--out", out, "output directory")->required();
  prune->add_option("--theta", theta, "tolerated relative accuracy loss in [0,1]");

  CLI::App* eval = app.add_subcommand(
      "eval", "Score a model: F1, size, ambiguity, coverage");
  eval->add_option("--model", model, "model JSON path")->required();
  eval->add_option("--data", data, "feature matrix CSV")->required();
  eval->add_option("--preds", preds, "black-box predictions CSV")->required();
  eval->add_option("--labels", labels, "ground-truth labels CSV");
  eval->add_option("--out", out, "output directory")->required();
  eval->add_option("--f1-target", f1_target, "fidelity or ground_truth");
  eval->add_option("--f1-average", f1_average, "macro or weighted");
  eval->add_option("--report-name", report_name, "basename of the report files");

  CLI::App* compare = app.add_subcommand(
      "compare", "Relative changes between two evaluation reports");
  compare->add_option("--before", before, "report CSV before")->required();
  compare->add_option("--after", after, "report CSV after")->required();
  compare->add_option("--out", out, "output changes CSV path")->required();

  CLI::App* demo = app.add_subcommand(
      "demo", "End-to-end run on synthetic data with a built-in black box");
  demo->add_option("--out", out, "output directory")->required();
  demo->add_option("--theta", demo_theta, "pruning tolerance");
  demo->add_option("--seed", seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  return rulex::run_guarded(
      [&] {
        if (extract->parsed()) {
          rulex::ExtractOptions options;
          options.data = data;
          options.preds = preds;
          options.attr = attr;
          options.out = out;
          options.binarize_mode = binarize;
          options.tau = tau;
          options.config.policy.k = top_k;
          options.config.min_support_fraction = min_support;
          options.config.min_precision = min_precision;
          options.config.cover_target = cover_target;
          rulex::run_extract(options, std::cout);
        } else if (prune->parsed()) {
          rulex::PruneOptions options;
          options.model = model;
          options.data = data;
          options.preds = preds;
          options.out = out;
          options.theta = theta;
          rulex::run_prune(options, std::cout);
        } else if (eval->parsed()) {
          rulex::EvalOptions options;
          options.model = model;
          options.data = data;
          options.preds = preds;
          options.labels = labels;
          options.out = out;
          options.report_name = report_name;
          if (f1_target == "fidelity") {
            options.f1_target = rulex::F1Target::fidelity;
          } else if (f1_target == "ground_truth") {
            options.f1_target = rulex::F1Target::ground_truth;
          } else {
            throw rulex::config_error("unknown --f1-target '" + f1_target + "'");
          }
          if (f1_average == "macro") {
            options.f1_averaging = rulex::F1Averaging::macro;
          } else if (f1_average == "weighted") {
            options.f1_averaging = rulex::F1Averaging::weighted;
          } else {
            throw rulex::config_error("unknown --f1-average '" + f1_average + "'");
          }
          rulex::run_eval(options, std::cout);
        } else if (compare->parsed()) {
          rulex::CompareOptions options;
          options.before = before;
          options.after = after;
          options.out = out;
          rulex::run_compare(options, std::cout);
        } else if (demo->parsed()) {
          rulex::DemoOptions options;
          options.out = out;
          options.theta = demo_theta;
          options.seed = seed;
          rulex::run_demo(options, std::cout);
        }
      },
      std::cerr);
}
