#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace driftgas {

using Vec = std::vector<double>;
using ClassId = int;

constexpr const char* kVersion = "0.1.0";

// One stream sample: feature vector in R^N plus an optional class label.
// Unsupervised instances carry label = nullopt once split (the ground truth
// moves to the evaluation channel, see StreamSplit).
struct LabeledInstance {
    Vec features;
    std::optional<ClassId> label;
};

inline bool is_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

inline double squared_distance(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double distance(const Vec& a, const Vec& b) {
    return std::sqrt(squared_distance(a, b));
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace driftgas
