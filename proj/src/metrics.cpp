#include "driftgas/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace driftgas {

std::vector<double> prequential_error(const std::vector<ClassId>& y_true,
                                      const std::vector<ClassId>& y_pred) {
    require(y_true.size() == y_pred.size(), "prequential_error: length mismatch");
    require(!y_true.empty(), "prequential_error: empty sequences");

    std::vector<double> trace(y_true.size());
    std::size_t errors = 0;
    for (std::size_t t = 0; t < y_true.size(); ++t) {
        if (y_true[t] != y_pred[t]) ++errors;
        trace[t] = 100.0 * static_cast<double>(errors) / static_cast<double>(t + 1);
    }
    return trace;
}

namespace {

F1Report::Prf prf_from_counts(long long tp, long long fp, long long fn) {
    F1Report::Prf r;
    r.precision = (tp + fp) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    r.recall = (tp + fn) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    r.f1 = (r.precision + r.recall) > 0.0
               ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
               : 0.0;
    return r;
}

}  // namespace

F1Report macro_f1(const std::vector<ClassId>& y_true,
                  const std::vector<ClassId>& y_pred,
                  const std::vector<ClassId>& classes) {
    require(y_true.size() == y_pred.size(), "macro_f1: length mismatch");
    require(!classes.empty(), "macro_f1: empty class set");

    std::map<ClassId, std::size_t> index;
    for (std::size_t i = 0; i < classes.size(); ++i) index[classes[i]] = i;

    F1Report rep;
    rep.classes = classes;
    rep.confusion.assign(classes.size(), std::vector<long long>(classes.size(), 0));
    for (std::size_t t = 0; t < y_true.size(); ++t) {
        auto it_t = index.find(y_true[t]);
        auto it_p = index.find(y_pred[t]);
        require(it_t != index.end() && it_p != index.end(), "macro_f1: unknown label");
        ++rep.confusion[it_t->second][it_p->second];
    }

    double sum_f1 = 0.0;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        long long tp = rep.confusion[c][c], fp = 0, fn = 0;
        for (std::size_t o = 0; o < classes.size(); ++o) {
            if (o == c) continue;
            fp += rep.confusion[o][c];
            fn += rep.confusion[c][o];
        }
        const auto prf = prf_from_counts(tp, fp, fn);
        rep.per_class[classes[c]] = prf;
        sum_f1 += prf.f1;
    }
    rep.macro_f1 = sum_f1 / static_cast<double>(classes.size());
    return rep;
}

std::vector<std::pair<double, double>> windowed_f1(const std::vector<ClassId>& y_true,
                                                   const std::vector<ClassId>& y_pred,
                                                   std::size_t window,
                                                   double overlap_fraction) {
    require(y_true.size() == y_pred.size(), "windowed_f1: length mismatch");
    require(window >= 1 && window <= y_true.size(), "windowed_f1: bad window size");
    require(overlap_fraction >= 0.0 && overlap_fraction < 1.0,
            "windowed_f1: overlap must be in [0,1)");

    const auto stride = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::llround(static_cast<double>(window) * (1.0 - overlap_fraction))));

    std::vector<std::pair<double, double>> out;
    for (std::size_t start = 0; start + window <= y_true.size(); start += stride) {
        // classes present in this window's truth
        std::vector<ClassId> present;
        for (std::size_t t = start; t < start + window; ++t)
            if (std::find(present.begin(), present.end(), y_true[t]) == present.end())
                present.push_back(y_true[t]);
        std::sort(present.begin(), present.end());

        double sum_f1 = 0.0;
        for (ClassId c : present) {
            long long tp = 0, fp = 0, fn = 0;
            for (std::size_t t = start; t < start + window; ++t) {
                const bool truth_c = y_true[t] == c;
                const bool pred_c = y_pred[t] == c;
                if (truth_c && pred_c) ++tp;
                else if (!truth_c && pred_c) ++fp;
                else if (truth_c && !pred_c) ++fn;
            }
            sum_f1 += prf_from_counts(tp, fp, fn).f1;
        }
        out.emplace_back(static_cast<double>(start) + static_cast<double>(window) / 2.0,
                         sum_f1 / static_cast<double>(present.size()));
    }
    return out;
}

std::pair<double, double> mean_std(const std::vector<double>& values) {
    require(!values.empty(), "mean_std: empty sample");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    return {mean, std::sqrt(var)};
}

}  // namespace driftgas
