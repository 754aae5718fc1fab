#pragma once

#include <string>
#include <vector>

#include "driftgas/gng.hpp"
#include "driftgas/metrics.hpp"
#include "driftgas/pipeline.hpp"

namespace driftgas {

// Plot-ready trace files and model dumps. All writers throw on I/O failure.

// columns: t,y_true,y_pred (t is 1-based over the unsupervised suffix)
void write_predictions_csv(const PredictionTrace& trace, const std::string& path);

// columns: t,value
void write_prequential_csv(const std::vector<double>& trace, const std::string& path);

// columns: t_center,macro_f1
void write_f1_window_csv(const std::vector<std::pair<double, double>>& points,
                         const std::string& path);

// one JSON object per line: batch index, prototype count, wall time, and the
// fitted (R, t) when present
void write_transforms_jsonl(const PredictionTrace& trace, const std::string& path);

// nodes (id, position, error), edges (a, b, age), signal count
void write_gng_json(const GngModel& model, const std::string& path);
void write_gng_csv(const GngModel& model, const std::string& path);

}  // namespace driftgas
