#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "driftgas/core.hpp"

namespace driftgas {

// Per-class precision/recall/F1 plus the unweighted macro average and the
// full confusion matrix (rows = truth, cols = prediction, index order of
// `classes`). Zero-denominator precision/recall/F1 resolve to 0.
struct F1Report {
    struct Prf {
        double precision = 0.0;
        double recall = 0.0;
        double f1 = 0.0;
    };
    std::vector<ClassId> classes;
    std::map<ClassId, Prf> per_class;
    std::vector<std::vector<long long>> confusion;
    double macro_f1 = 0.0;
};

// Running mean of zero-one losses in percent: value[t-1] = 100/t * errors
// among the first t predictions.
std::vector<double> prequential_error(const std::vector<ClassId>& y_true,
                                      const std::vector<ClassId>& y_pred);

F1Report macro_f1(const std::vector<ClassId>& y_true,
                  const std::vector<ClassId>& y_pred,
                  const std::vector<ClassId>& classes);

// Sliding-window macro F1: windows of `window` samples advancing by
// round(window * (1 - overlap_fraction)), stride floored at 1. Each window
// averages F1 over the classes occurring in that window's truth. Returns
// (window center t, macro F1) with center = start + window/2, 0-based.
std::vector<std::pair<double, double>> windowed_f1(const std::vector<ClassId>& y_true,
                                                   const std::vector<ClassId>& y_pred,
                                                   std::size_t window,
                                                   double overlap_fraction);

// mean and (population) standard deviation of a sample; used by the sweep
// aggregate rows
std::pair<double, double> mean_std(const std::vector<double>& values);

}  // namespace driftgas
