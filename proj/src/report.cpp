#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "gmh/io.hpp"

namespace gmh {

namespace {

struct Column {
  std::string name;
  std::function<double(const RunRow&)> get;
};

std::vector<Column> columns(const std::vector<RunRow>& rows) {
  std::vector<Column> out{{"darts", [](const RunRow& r) { return static_cast<double>(r.darts); }},
                          {"final_darts", [](const RunRow& r) { return static_cast<double>(r.final_darts); }}};
  std::size_t dims = 0;
  for (const auto& r : rows) dims = std::max({dims, r.cells.size(), r.final_cells.size(), r.betti.size()});
  for (std::size_t k = 0; k < dims; ++k) {
    auto at = [k](const auto& v) { return k < v.size() ? static_cast<double>(v[k]) : 0.0; };
    out.push_back({"S" + std::to_string(k), [at](const RunRow& r) { return at(r.cells); }});
    out.push_back({"final_S" + std::to_string(k), [at](const RunRow& r) { return at(r.final_cells); }});
  }
  for (std::size_t k = 0; k < dims; ++k) {
    auto at = [k](const auto& v) { return k < v.size() ? static_cast<double>(v[k]) : 0.0; };
    out.push_back({"B" + std::to_string(k), [at](const RunRow& r) { return at(r.betti); }});
  }
  out.push_back({"time_simplify", [](const RunRow& r) { return r.time_simplify; }});
  out.push_back({"time_homology", [](const RunRow& r) { return r.time_homology; }});
  return out;
}

std::string format_number(double v) {
  std::ostringstream s;
  if (v == std::floor(v) && std::fabs(v) < 1e15)
    s << static_cast<long long>(v);
  else
    s << std::setprecision(6) << v;
  return s.str();
}

}  // namespace

nlohmann::json to_json(const RunRow& row) {
  return {{"name", row.name},
          {"seed", row.seed},
          {"darts", row.darts},
          {"cells", row.cells},
          {"final_darts", row.final_darts},
          {"final_cells", row.final_cells},
          {"betti", row.betti},
          {"torsion", row.torsion},
          {"time_simplify", row.time_simplify},
          {"time_homology", row.time_homology}};
}

nlohmann::json report_document(const std::vector<RunRow>& rows, bool batch) {
  if (rows.empty()) throw Error(ErrorKind::EmptyBatch, "nothing to report");
  if (!batch && rows.size() == 1) return to_json(rows.front());
  nlohmann::json doc;
  doc["rows"] = nlohmann::json::array();
  for (const auto& r : rows) doc["rows"].push_back(to_json(r));
  for (const auto& s : summarize(rows)) {
    doc["summary"]["min"][s.column] = s.min;
    doc["summary"]["max"][s.column] = s.max;
    doc["summary"]["mean"][s.column] = s.mean;
    doc["summary"]["std"][s.column] = s.stddev;
  }
  return doc;
}

std::vector<ColumnSummary> summarize(const std::vector<RunRow>& rows) {
  if (rows.empty()) throw Error(ErrorKind::EmptyBatch, "batch has no runs");
  std::vector<ColumnSummary> out;
  for (const auto& col : columns(rows)) {
    ColumnSummary s{col.name};
    s.min = s.max = col.get(rows.front());
    double sum = 0;
    for (const auto& r : rows) {
      const double v = col.get(r);
      s.min = std::min(s.min, v);
      s.max = std::max(s.max, v);
      sum += v;
    }
    s.mean = sum / static_cast<double>(rows.size());
    double sq = 0;
    for (const auto& r : rows) sq += (col.get(r) - s.mean) * (col.get(r) - s.mean);
    s.stddev = std::sqrt(sq / static_cast<double>(rows.size()));
    out.push_back(std::move(s));
  }
  return out;
}

void write_report(const std::vector<RunRow>& rows, std::ostream& out, ReportFormat format, const nlohmann::json& extra,
                  bool batch) {
  if (rows.empty()) throw Error(ErrorKind::EmptyBatch, "nothing to report");
  batch = batch || rows.size() > 1;
  if (format == ReportFormat::Json) {
    nlohmann::json doc = report_document(rows, batch);
    for (const auto& [key, value] : extra.items()) doc[key] = value;
    out << doc.dump(2) << '\n';
    return;
  }
  const auto cols = columns(rows);
  out << "name";
  for (const auto& c : cols) out << '\t' << c.name;
  out << "\ttorsion\n";
  for (const auto& r : rows) {
    out << r.name;
    for (const auto& c : cols) out << '\t' << format_number(c.get(r));
    out << '\t' << nlohmann::json(r.torsion).dump() << '\n';
  }
  if (!batch) return;
  const auto sums = summarize(rows);
  for (const char* stat : {"min", "max", "mean", "std"}) {
    out << stat;
    for (const auto& s : sums) {
      const std::string k = stat;
      const double v = k == "min" ? s.min : k == "max" ? s.max : k == "mean" ? s.mean : s.stddev;
      out << '\t' << format_number(v);
    }
    out << "\t-\n";
  }
}

void write_report(const std::vector<RunRow>& rows, const std::string& path, ReportFormat format,
                  const nlohmann::json& extra, bool batch) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  write_report(rows, out, format, extra, batch);
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path);
}

}  // namespace gmh
