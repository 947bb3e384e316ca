#include "glmsel/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "glmsel/errors.hpp"

namespace glmsel {

namespace {

std::vector<std::string> split_line(const std::string& line, char sep = ',') {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, const std::string& context) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || end != begin + text.size())
    throw DataError("non-numeric value '" + text + "' in " + context);
  return value;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return in;
}

void expect_header(const std::string& got, const std::string& want, const std::string& path) {
  if (got != want) throw DataError("unexpected header in '" + path + "'");
}

std::string join_support(const ModelSupport& support) {
  std::string out;
  for (Index k = 0; k < support.size(); ++k) {
    if (k > 0) out += ';';
    out += std::to_string(support.indices[k]);
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  // 17 significant digits round-trip any double through strtod.
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

Dataset read_csv_dataset(const std::string& path, const std::string& response_column) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty CSV file '" + path + "'");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const std::vector<std::string> header = split_line(line);
  Index response_idx = -1;
  std::vector<std::string> design_names;
  for (Index j = 0; j < static_cast<Index>(header.size()); ++j) {
    if (header[j] == response_column) {
      if (response_idx >= 0) throw DataError("duplicate response column '" + response_column + "'");
      response_idx = j;
    } else {
      design_names.push_back(header[j]);
    }
  }
  if (response_idx < 0)
    throw DataError("response column '" + response_column + "' not found in '" + path + "'");
  if (design_names.empty()) throw DataError("no covariate columns in '" + path + "'");

  std::vector<std::vector<double>> rows;
  Index line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_line(line);
    if (fields.size() != header.size())
      throw DataError("row " + std::to_string(line_no) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(header.size()));
    std::vector<double> row;
    row.reserve(fields.size());
    for (const std::string& f : fields)
      row.push_back(parse_double(f, "row " + std::to_string(line_no) + " of '" + path + "'"));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("no data rows in '" + path + "'");

  Dataset data;
  const Index n = static_cast<Index>(rows.size());
  const Index p = static_cast<Index>(design_names.size());
  data.response.resize(n);
  data.design.resize(n, p);
  data.column_names = design_names;
  for (Index i = 0; i < n; ++i) {
    Index col = 0;
    for (Index j = 0; j < static_cast<Index>(rows[i].size()); ++j) {
      if (j == response_idx)
        data.response[i] = rows[i][j];
      else
        data.design(i, col++) = rows[i][j];
    }
  }
  return data;
}

void write_metrics_csv(const MetricsReport& report, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "criterion,p,n,consistent_pct,sure_pct,mean_err,se_err,mean_fp\n";
  for (const CriterionMetrics& row : report.rows) {
    out << row.criterion << ',' << report.p << ',' << report.n << ','
        << format_double(row.consistent_pct) << ',' << format_double(row.sure_pct) << ','
        << format_double(row.mean_err) << ',' << format_double(row.se_err) << ','
        << format_double(row.mean_fp) << '\n';
  }
}

MetricsReport read_metrics_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty CSV file '" + path + "'");
  expect_header(line, "criterion,p,n,consistent_pct,sure_pct,mean_err,se_err,mean_fp", path);

  MetricsReport report;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_line(line);
    if (f.size() != 8) throw DataError("malformed row in '" + path + "'");
    CriterionMetrics row;
    row.criterion = f[0];
    report.p = static_cast<Index>(parse_double(f[1], path));
    report.n = static_cast<Index>(parse_double(f[2], path));
    row.consistent_pct = parse_double(f[3], path);
    row.sure_pct = parse_double(f[4], path);
    row.mean_err = parse_double(f[5], path);
    row.se_err = parse_double(f[6], path);
    row.mean_fp = parse_double(f[7], path);
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_sweep_csv(const std::vector<SweepPoint>& points, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "zeta,mean_fdp,mean_tpr\n";
  for (const SweepPoint& pt : points)
    out << format_double(pt.zeta) << ',' << format_double(pt.mean_fdp) << ','
        << format_double(pt.mean_tpr) << '\n';
}

std::vector<SweepPoint> read_sweep_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty CSV file '" + path + "'");
  expect_header(line, "zeta,mean_fdp,mean_tpr", path);

  std::vector<SweepPoint> points;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_line(line);
    if (f.size() != 3) throw DataError("malformed row in '" + path + "'");
    points.push_back(
        SweepPoint{parse_double(f[0], path), parse_double(f[1], path), parse_double(f[2], path)});
  }
  return points;
}

void write_candidates_csv(const DatasetAnalysis& analysis,
                          const std::vector<CriterionKind>& kinds, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "candidate,support_size,support,rejected,reason,loglik";
  for (const CriterionKind& kind : kinds) out << ',' << criterion_name(kind);
  out << '\n';

  std::vector<std::vector<CriterionValue>> values;
  values.reserve(kinds.size());
  for (const CriterionKind& kind : kinds) values.push_back(evaluate_candidates(kind, analysis));

  for (Index i = 0; i < static_cast<Index>(analysis.candidates.size()); ++i) {
    const CandidateFit& cand = analysis.candidates[i];
    out << i << ',' << cand.support.size() << ',' << join_support(cand.support) << ','
        << (cand.rejected ? 1 : 0) << ',' << cand.reject_reason << ','
        << format_double(cand.fit.loglik);
    for (const auto& per_kind : values) out << ',' << format_double(per_kind[i].value);
    out << '\n';
  }
}

void write_selection_csv(const DatasetAnalysis& analysis,
                         const std::vector<CriterionKind>& kinds,
                         const std::vector<SelectionResult>& selections,
                         const std::string& path) {
  std::ofstream out = open_out(path);
  out << "criterion,chosen_index,support_size,support,value,tie_break_used\n";
  for (Index k = 0; k < static_cast<Index>(kinds.size()); ++k) {
    const SelectionResult& sel = selections[k];
    const CandidateFit& chosen = analysis.candidates[sel.chosen_index];
    out << criterion_name(kinds[k]) << ',' << sel.chosen_index << ',' << chosen.support.size()
        << ',' << join_support(chosen.support) << ','
        << format_double(sel.per_candidate[sel.chosen_index].value) << ','
        << (sel.tie_break_used ? 1 : 0) << '\n';
  }
}

}  // namespace glmsel
