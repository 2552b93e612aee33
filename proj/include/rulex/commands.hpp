#pragma once

// Drivers behind the CLI subcommands. The CLI binary only parses flags and
// maps exceptions to exit codes; everything testable lives here.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

#include "rulex/induction.hpp"
#include "rulex/pruning.hpp"

namespace rulex {

enum class F1Target { fidelity, ground_truth };
enum class F1Averaging { macro, weighted };

struct ExtractOptions {
  std::filesystem::path data;
  std::filesystem::path preds;
  std::filesystem::path attr;
  std::filesystem::path out;  // model file
  ExtractionConfig config;
  std::string binarize_mode = "top_k";  // top_k | abs_threshold | positive
  double tau = 0.0;
};

struct PruneOptions {
  std::filesystem::path model;
  std::filesystem::path data;
  std::filesystem::path preds;
  std::filesystem::path out;  // output directory
  double theta = 0.0;
};

struct EvalOptions {
  std::filesystem::path model;
  std::filesystem::path data;
  std::filesystem::path preds;
  std::filesystem::path labels;  // optional ground truth
  std::filesystem::path out;     // output directory
  F1Target f1_target = F1Target::fidelity;
  F1Averaging f1_averaging = F1Averaging::macro;
  std::string report_name = "report";
};

struct CompareOptions {
  std::filesystem::path before;
  std::filesystem::path after;
  std::filesystem::path out;  // changes CSV
};

struct DemoOptions {
  std::filesystem::path out;  // output directory
  double theta = 0.05;
  std::uint64_t seed = 2;
};

void run_extract(const ExtractOptions& options, std::ostream& log);
void run_prune(const PruneOptions& options, std::ostream& log);
void run_eval(const EvalOptions& options, std::ostream& log);
void run_compare(const CompareOptions& options, std::ostream& log);
void run_demo(const DemoOptions& options, std::ostream& log);

/// Runs a command body and maps exceptions to the CLI exit code contract:
/// 0 success, 2 input or config error, 3 internal invariant violation.
int run_guarded(const std::function<void()>& body, std::ostream& err);

}  // namespace rulex
