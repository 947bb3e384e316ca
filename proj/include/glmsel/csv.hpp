#pragma once

#include <string>
#include <vector>

#include "glmsel/analyze.hpp"
#include "glmsel/data.hpp"
#include "glmsel/simulate.hpp"

namespace glmsel {

// Shortest representation that parses back to the identical double.
std::string format_double(double value);

// Headered numeric CSV; the named response column becomes the response and the
// remaining columns, in file order, form the design. Throws DataError.
Dataset read_csv_dataset(const std::string& path, const std::string& response_column);

// Columns: criterion,p,n,consistent_pct,sure_pct,mean_err,se_err,mean_fp.
void write_metrics_csv(const MetricsReport& report, const std::string& path);
MetricsReport read_metrics_csv(const std::string& path);

// Columns: zeta,mean_fdp,mean_tpr.
void write_sweep_csv(const std::vector<SweepPoint>& points, const std::string& path);
std::vector<SweepPoint> read_sweep_csv(const std::string& path);

// Per-candidate criterion table for the select command.
void write_candidates_csv(const DatasetAnalysis& analysis,
                          const std::vector<CriterionKind>& kinds, const std::string& path);

// One row per criterion with the chosen candidate.
void write_selection_csv(const DatasetAnalysis& analysis,
                         const std::vector<CriterionKind>& kinds,
                         const std::vector<SelectionResult>& selections,
                         const std::string& path);

}  // namespace glmsel
