#include "rulex/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace rulex {

namespace {

using nlohmann::json;

constexpr int kModelSchemaVersion = 1;

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  // ignore a trailing blank line
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

double parse_double(const std::string& cell, const std::string& where) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw input_error(where + ": cannot parse '" + cell + "' as a number");
  return value;
}

long long parse_int(const std::string& cell, const std::string& where) {
  long long value = 0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw input_error(where + ": cannot parse '" + cell + "' as an integer");
  return value;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.push_back(sep);
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw internal_error("number formatting failed");
  return std::string(buf, ptr);
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw input_error(path.string() + ": empty file");
  const std::vector<std::string> names = split_line(lines[0]);
  const std::size_t d = names.size();
  std::vector<double> values;
  values.reserve((lines.size() - 1) * d);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split_line(lines[r]);
    if (cells.size() != d)
      throw input_error(path.string() + " row " + std::to_string(r) +
                        ": expected " + std::to_string(d) + " columns, got " +
                        std::to_string(cells.size()));
    for (std::size_t j = 0; j < d; ++j)
      values.push_back(parse_double(
          cells[j], path.string() + " row " + std::to_string(r) + " column " +
                        std::to_string(j)));
  }
  return Dataset(std::move(values), lines.size() - 1, d, names);
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& data) {
  std::string out = join(data.feature_names(), ',') + "\n";
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto row = data.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out.push_back(',');
      out += format_double(row[j]);
    }
    out.push_back('\n');
  }
  write_text_file(path, out);
}

LabelVector read_labels_csv(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw input_error(path.string() + ": empty file");
  LabelVector labels;
  labels.reserve(lines.size() - 1);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split_line(lines[r]);
    if (cells.size() != 1)
      throw input_error(path.string() + " row " + std::to_string(r) +
                        ": expected a single column");
    labels.push_back(static_cast<ClassId>(
        parse_int(cells[0], path.string() + " row " + std::to_string(r))));
  }
  return labels;
}

void write_labels_csv(const std::filesystem::path& path, const LabelVector& labels,
                      const std::string& column_name) {
  std::string out = column_name + "\n";
  for (ClassId c : labels) out += std::to_string(c) + "\n";
  write_text_file(path, out);
}

AttributionMatrix read_attributions_csv(
    const std::filesystem::path& path,
    const std::vector<std::string>& expected_header) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw input_error(path.string() + ": empty file");
  const std::vector<std::string> names = split_line(lines[0]);
  if (!expected_header.empty() && names != expected_header)
    throw input_error(path.string() +
                      ": attribution header does not match the data header");
  const std::size_t d = names.size();
  std::vector<double> scores;
  scores.reserve((lines.size() - 1) * d);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split_line(lines[r]);
    if (cells.size() != d)
      throw input_error(path.string() + " row " + std::to_string(r) +
                        ": expected " + std::to_string(d) + " columns, got " +
                        std::to_string(cells.size()));
    for (std::size_t j = 0; j < d; ++j)
      scores.push_back(parse_double(
          cells[j], path.string() + " row " + std::to_string(r) + " column " +
                        std::to_string(j)));
  }
  return AttributionMatrix(std::move(scores), lines.size() - 1, d);
}

void write_attributions_csv(const std::filesystem::path& path,
                            const AttributionMatrix& attr,
                            const std::vector<std::string>& header) {
  if (header.size() != attr.cols())
    throw input_error("attribution header size does not match column count");
  std::string out = join(header, ',') + "\n";
  for (std::size_t i = 0; i < attr.rows(); ++i) {
    const auto row = attr.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out.push_back(',');
      out += format_double(row[j]);
    }
    out.push_back('\n');
  }
  write_text_file(path, out);
}

std::string serialize_model(const RuleModel& model) {
  json doc;
  doc["schema_version"] = kModelSchemaVersion;
  doc["classes"] = model.classes();
  doc["default_class"] = model.default_class();
  doc["provenance"] = model.provenance();
  json terms = json::array();
  for (std::size_t i = 0; i < model.terms().size(); ++i) {
    const Term& t = model.terms()[i];
    json jt;
    jt["id"] = t.id;
    jt["class"] = t.label;
    jt["accuracy"] = model.accuracies()[i];
    json constraints = json::array();
    for (const auto& c : t.constraints) {
      json jc;
      jc["dim"] = c.dim;
      jc["lo"] = c.lo;
      jc["hi"] = c.hi;
      constraints.push_back(jc);
    }
    jt["constraints"] = constraints;
    terms.push_back(jt);
  }
  doc["terms"] = terms;
  return doc.dump(2) + "\n";
}

RuleModel deserialize_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw input_error(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    const int version = doc.at("schema_version").get<int>();
    if (version != kModelSchemaVersion)
      throw input_error("unsupported model schema_version " +
                        std::to_string(version));
    std::vector<ClassId> classes = doc.at("classes").get<std::vector<ClassId>>();
    const ClassId default_class = doc.at("default_class").get<ClassId>();
    std::string provenance = doc.value("provenance", std::string{});
    std::vector<Term> terms;
    std::vector<double> accuracies;
    for (const json& jt : doc.at("terms")) {
      Term t;
      t.id = jt.at("id").get<int>();
      t.label = jt.at("class").get<ClassId>();
      for (const json& jc : jt.at("constraints")) {
        IntervalConstraint c;
        c.dim = jc.at("dim").get<std::size_t>();
        c.lo = jc.at("lo").get<double>();
        c.hi = jc.at("hi").get<double>();
        t.constraints.push_back(c);
      }
      terms.push_back(std::move(t));
      accuracies.push_back(jt.at("accuracy").get<double>());
    }
    return RuleModel(std::move(classes), std::move(terms), default_class,
                     std::move(accuracies), std::move(provenance));
  } catch (const json::exception& e) {
    throw input_error(std::string("malformed model document: ") + e.what());
  }
}

RuleModel read_model(const std::filesystem::path& path) {
  return deserialize_model(read_text_file(path));
}

void write_model(const std::filesystem::path& path, const RuleModel& model) {
  write_text_file(path, serialize_model(model));
}

ReportDocument read_report_csv(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || split_line(lines[0]) != std::vector<std::string>{"metric", "value"})
    throw input_error(path.string() + ": expected a 'metric,value' report CSV");
  ReportDocument doc;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split_line(lines[r]);
    if (cells.size() != 2)
      throw input_error(path.string() + " row " + std::to_string(r) +
                        ": expected two columns");
    const std::string& metric = cells[0];
    const double value =
        parse_double(cells[1], path.string() + " row " + std::to_string(r));
    if (metric == "f1_macro") {
      doc.report.f1_macro = value;
    } else if (metric == "size") {
      doc.report.size = static_cast<std::size_t>(value);
      if (static_cast<double>(doc.report.size) != value)
        throw input_error(path.string() + ": size must be an integer");
    } else if (metric == "ambiguity") {
      doc.report.ambiguity = value;
    } else if (metric == "coverage") {
      doc.report.coverage = value;
    } else if (metric.rfind("f1_class_", 0) == 0) {
      const ClassId c = static_cast<ClassId>(parse_int(
          metric.substr(9), path.string() + " metric '" + metric + "'"));
      doc.report.per_class_f1[c] = value;
    } else {
      doc.extra_metrics[metric] = value;
    }
  }
  return doc;
}

void write_report_csv(const std::filesystem::path& path, const ReportDocument& doc) {
  std::string out = "metric,value\n";
  out += "f1_macro," + format_double(doc.report.f1_macro) + "\n";
  out += "size," + format_double(static_cast<double>(doc.report.size)) + "\n";
  out += "ambiguity," + format_double(doc.report.ambiguity) + "\n";
  out += "coverage," + format_double(doc.report.coverage) + "\n";
  for (const auto& [c, f1] : doc.report.per_class_f1)
    out += "f1_class_" + std::to_string(c) + "," + format_double(f1) + "\n";
  for (const auto& [name, value] : doc.extra_metrics)
    out += name + "," + format_double(value) + "\n";
  write_text_file(path, out);
}

void write_report_markdown(const std::filesystem::path& path,
                           const ReportDocument& doc, const std::string& title) {
  char buf[64];
  auto pct = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.1f%%", 100.0 * v);
    return std::string(buf);
  };
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return std::string(buf);
  };
  std::string out = "# " + title + "\n\n";
  out += "| Metric | Value |\n|---|---|\n";
  out += "| F1 | " + num(doc.report.f1_macro) + " |\n";
  out += "| Size | " + std::to_string(doc.report.size) + " |\n";
  out += "| Amb | " + pct(doc.report.ambiguity) + " |\n";
  out += "| Coverage | " + pct(doc.report.coverage) + " |\n";
  for (const auto& [c, f1] : doc.report.per_class_f1)
    out += "| F1 (class " + std::to_string(c) + ") | " + num(f1) + " |\n";
  for (const auto& [name, value] : doc.extra_metrics)
    out += "| " + name + " | " + num(value) + " |\n";
  write_text_file(path, out);
}

std::vector<ChangeRecord> read_changes_csv(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  const std::vector<std::string> header{"metric", "before", "after", "rel_change_pct"};
  if (lines.empty() || split_line(lines[0]) != header)
    throw input_error(path.string() + ": expected a change-record CSV");
  std::vector<ChangeRecord> records;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split_line(lines[r]);
    if (cells.size() != 4)
      throw input_error(path.string() + " row " + std::to_string(r) +
                        ": expected four columns");
    ChangeRecord rec;
    rec.metric = cells[0];
    rec.before = parse_double(cells[1], path.string() + " row " + std::to_string(r));
    rec.after = parse_double(cells[2], path.string() + " row " + std::to_string(r));
    if (cells[3] != "n/a")
      rec.rel_change_pct =
          parse_double(cells[3], path.string() + " row " + std::to_string(r));
    records.push_back(std::move(rec));
  }
  return records;
}

void write_changes_csv(const std::filesystem::path& path,
                       const std::vector<ChangeRecord>& records) {
  std::string out = "metric,before,after,rel_change_pct\n";
  for (const auto& rec : records) {
    out += rec.metric + "," + format_double(rec.before) + "," +
           format_double(rec.after) + ",";
    out += rec.rel_change_pct ? format_double(*rec.rel_change_pct) : "n/a";
    out.push_back('\n');
  }
  write_text_file(path, out);
}

PruneTrace read_trace_csv(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  const std::vector<std::string> header{"k", "removed_term_ids", "accuracy_after"};
  if (lines.empty() || split_line(lines[0]) != header)
    throw input_error(path.string() + ": expected a prune-trace CSV");
  PruneTrace trace;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split_line(lines[r]);
    if (cells.size() != 3)
      throw input_error(path.string() + " row " + std::to_string(r) +
                        ": expected three columns");
    PruneStep step;
    step.k = static_cast<std::size_t>(
        parse_int(cells[0], path.string() + " row " + std::to_string(r)));
    std::stringstream ids(cells[1]);
    std::string id;
    while (std::getline(ids, id, ';'))
      step.removed_term_ids.push_back(static_cast<int>(
          parse_int(id, path.string() + " row " + std::to_string(r))));
    step.accuracy_after =
        parse_double(cells[2], path.string() + " row " + std::to_string(r));
    trace.steps.push_back(std::move(step));
  }
  if (!trace.steps.empty()) trace.final_k = trace.steps.back().k;
  return trace;
}

void write_trace_csv(const std::filesystem::path& path, const PruneTrace& trace) {
  std::string out = "k,removed_term_ids,accuracy_after\n";
  for (const auto& step : trace.steps) {
    std::vector<std::string> ids;
    ids.reserve(step.removed_term_ids.size());
    for (int id : step.removed_term_ids) ids.push_back(std::to_string(id));
    out += std::to_string(step.k) + "," + join(ids, ';') + "," +
           format_double(step.accuracy_after) + "\n";
  }
  write_text_file(path, out);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write " + path.string());
  out << text;
  if (!out) throw input_error("failed writing " + path.string());
}

}  // namespace rulex
