#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "driftgas/core.hpp"
#include "driftgas/gng.hpp"
#include "driftgas/knn.hpp"
#include "driftgas/registration.hpp"
#include "driftgas/stream.hpp"

namespace driftgas {

// Snapshot of the prototype model after one batch: node positions, their
// voted class labels, and the positions projected one step forward through
// the fitted drift dynamics. Equal lengths throughout.
struct PrototypeSet {
    int batch_index = 0;
    std::vector<Vec> positions;
    std::vector<ClassId> labels;
    std::vector<Vec> projected_positions;
};

struct BatchRecord {
    int batch_index = 0;
    std::vector<ClassId> predicted;
    std::vector<ClassId> truth;  // evaluation channel, filled by the runner
    std::optional<RigidTransform> transform;
    std::size_t prototype_count = 0;
    double wall_ms = 0.0;
};

struct PredictionTrace {
    std::vector<BatchRecord> records;

    std::vector<ClassId> collate_predictions() const;
    std::vector<ClassId> collate_truth() const;
};

// Mutable pipeline state between batches: the persistent GNG, the prototype
// set of the last processed batch, and the run RNG. `current` is the only
// history the step reads; earlier batches are gone by construction.
struct AigasState {
    RunConfig cfg;
    std::vector<ClassId> classes;
    GngModel gng;
    PrototypeSet current;
    std::mt19937_64 rng;
};

struct StepResult {
    std::vector<ClassId> predictions;
    RigidTransform transform;
    bool identity_fallback = false;  // too few matched pairs to fit
};

// Supervised phase: sizes the GNG budget as round((1 + xi) * G), fits the
// GNG over the supervised features, labels the nodes by k-NN (k = K) against
// the supervised instances, and initializes the projection to the identity.
AigasState aigas_init(const std::vector<LabeledInstance>& supervised,
                      const std::vector<ClassId>& classes, const RunConfig& cfg);

// One batch: predict with the previous projected prototypes, update the
// GNG, label the new nodes (K_GNG) against the previous projected
// prototypes, match old to new nodes, fit the rigid motion, project.
StepResult aigas_step(AigasState& state, const Batch& batch);

// final_state, when given, receives the pipeline state after the last batch
// (used to export the final GNG).
PredictionTrace run_aigas(const StreamSplit& split, const RunConfig& cfg,
                          std::optional<AigasState>* final_state = nullptr);

enum class BaselineKind { Static, SlidingWindow, Incremental };

// The three naive baselines: a frozen k-NN (STC), a pseudo-labeling k-NN
// over the most recent W references (SLD), and a never-forgetting
// pseudo-labeling k-NN (INC).
PredictionTrace run_baseline(BaselineKind kind, const StreamSplit& split,
                             const RunConfig& cfg);

}  // namespace driftgas
