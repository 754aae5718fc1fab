#pragma once

#include <cstddef>
#include <vector>

#include "driftgas/core.hpp"
#include "driftgas/gng.hpp"

namespace driftgas {

// Supervised prefix / unsupervised suffix of one stream, in arrival order.
// Labels of the suffix are stripped from the instances themselves and kept
// in eval_labels, a parallel channel the pipeline never reads; only the
// evaluation harness consults it.
struct StreamSplit {
    std::vector<LabeledInstance> supervised;    // labels present
    std::vector<LabeledInstance> unsupervised;  // labels erased
    std::vector<ClassId> eval_labels;           // ground truth of the suffix
    std::size_t t_s = 0;                        // size of the supervised prefix
    std::vector<ClassId> classes;               // declared class set Y (sorted)
};

// A fixed-size group of suffix instances. `offset` is the position of the
// first instance within the unsupervised suffix (0-based).
struct Batch {
    int index = 0;  // batch counter b >= 1
    std::size_t offset = 0;
    std::vector<LabeledInstance> instances;
};

// Experiment knobs shared by the pipeline and the baselines.
struct RunConfig {
    double labeled_fraction = 0.05;
    std::size_t num_batches = 100;
    std::size_t g_base = 100;     // G
    std::size_t k_predict = 5;    // K (clamped to prototype count at query time)
    std::size_t k_gng = 3;        // K_GNG
    int passes = 3;               // presentation passes per batch
    std::size_t sld_window = 0;   // SLD baseline window; 0 = supervised prefix size
    std::uint64_t seed = 0;
    GngParams gng_params;
};

// First floor(fraction*len) instances become the supervised prefix; the rest
// form the unsupervised suffix with labels moved to the evaluation channel.
// All input instances must carry labels. Throws if either side ends up empty.
StreamSplit split_stream(const std::vector<LabeledInstance>& instances,
                         double labeled_fraction);

// Ceiling split of the suffix into at most num_batches batches, arrival order
// preserved; the last batch may be short.
std::vector<Batch> batch_iter(const StreamSplit& split, std::size_t num_batches);

// xi >= 1: most populated / least populated class count in the supervised
// prefix. Throws if a declared class is absent (the GNG budget cannot be
// sized without it).
double class_imbalance_ratio(const std::vector<LabeledInstance>& supervised,
                             const std::vector<ClassId>& classes);

}  // namespace driftgas
