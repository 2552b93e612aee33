#pragma once

// File formats: CSV ingestion for data, labels and attributions; the
// versioned JSON rule-model document; report and trace files. Writers emit
// canonical bytes (shortest round-trip numbers, '\n' line ends), so
// serialize(deserialize(file)) is byte-identical for files produced here.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "rulex/core.hpp"
#include "rulex/evaluation.hpp"
#include "rulex/pruning.hpp"

namespace rulex {

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double value);

// --- CSV: feature matrix with a header of feature names -------------------

Dataset read_dataset_csv(const std::filesystem::path& path);
void write_dataset_csv(const std::filesystem::path& path, const Dataset& data);

// --- CSV: single integer column with a header ------------------------------

LabelVector read_labels_csv(const std::filesystem::path& path);
void write_labels_csv(const std::filesystem::path& path, const LabelVector& labels,
                      const std::string& column_name = "label");

// --- CSV: n x d attribution matrix; header must match the data header ------

AttributionMatrix read_attributions_csv(const std::filesystem::path& path,
                                        const std::vector<std::string>& expected_header);
void write_attributions_csv(const std::filesystem::path& path,
                            const AttributionMatrix& attr,
                            const std::vector<std::string>& header);

// --- Rule model document ----------------------------------------------------

std::string serialize_model(const RuleModel& model);
RuleModel deserialize_model(const std::string& text);
RuleModel read_model(const std::filesystem::path& path);
void write_model(const std::filesystem::path& path, const RuleModel& model);

// --- Evaluation reports -----------------------------------------------------

/// Long-format CSV: "metric,value" rows. Extra metric rows (for example a
/// secondary F1) are carried verbatim.
struct ReportDocument {
  EvalReport report;
  std::map<std::string, double> extra_metrics;
};

ReportDocument read_report_csv(const std::filesystem::path& path);
void write_report_csv(const std::filesystem::path& path, const ReportDocument& doc);
void write_report_markdown(const std::filesystem::path& path,
                           const ReportDocument& doc, const std::string& title);

// --- Change records ---------------------------------------------------------

std::vector<ChangeRecord> read_changes_csv(const std::filesystem::path& path);
void write_changes_csv(const std::filesystem::path& path,
                       const std::vector<ChangeRecord>& records);

// --- Prune trace -------------------------------------------------------------

PruneTrace read_trace_csv(const std::filesystem::path& path);
void write_trace_csv(const std::filesystem::path& path, const PruneTrace& trace);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace rulex
