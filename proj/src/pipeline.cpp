#include "driftgas/pipeline.hpp"

#include <chrono>
#include <cmath>

namespace driftgas {

std::vector<ClassId> PredictionTrace::collate_predictions() const {
    std::vector<ClassId> out;
    for (const auto& r : records) out.insert(out.end(), r.predicted.begin(), r.predicted.end());
    return out;
}

std::vector<ClassId> PredictionTrace::collate_truth() const {
    std::vector<ClassId> out;
    for (const auto& r : records) out.insert(out.end(), r.truth.begin(), r.truth.end());
    return out;
}

namespace {

std::vector<Vec> features_of(const std::vector<LabeledInstance>& instances) {
    std::vector<Vec> out;
    out.reserve(instances.size());
    for (const auto& inst : instances) out.push_back(inst.features);
    return out;
}

GngModel seeded_gng(const std::vector<Vec>& xs, GngParams params) {
    require(xs.size() >= 2, "aigas_init: need at least two supervised instances");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] != xs.front()) return GngModel(xs.front(), xs[i], params);
    throw std::invalid_argument("aigas_init: all supervised features identical");
}

}  // namespace

AigasState aigas_init(const std::vector<LabeledInstance>& supervised,
                      const std::vector<ClassId>& classes, const RunConfig& cfg) {
    require(!supervised.empty(), "aigas_init: empty supervised prefix");

    const double xi = class_imbalance_ratio(supervised, classes);
    const auto g0 = static_cast<std::size_t>(
        std::floor((1.0 + xi) * static_cast<double>(cfg.g_base) + 0.5));

    GngParams params = cfg.gng_params;
    params.max_nodes = std::max<std::size_t>(2, g0);

    const std::vector<Vec> xs = features_of(supervised);
    std::mt19937_64 rng(cfg.seed);
    GngModel gng = seeded_gng(xs, params);
    gng.fit_batch(xs, cfg.passes, rng);

    // label the initial nodes against the supervised instances with k = K
    std::vector<ClassId> sup_labels;
    sup_labels.reserve(supervised.size());
    for (const auto& inst : supervised) sup_labels.push_back(*inst.label);
    const ReferenceSet sup_refs(xs, sup_labels);

    PrototypeSet proto;
    proto.batch_index = 0;
    proto.positions = gng.snapshot();
    proto.labels = knn_predict_batch(proto.positions, sup_refs, cfg.k_predict);
    proto.projected_positions = proto.positions;  // no projection before b=1

    return AigasState{cfg, classes, std::move(gng), std::move(proto), std::move(rng)};
}

StepResult aigas_step(AigasState& state, const Batch& batch) {
    require(!batch.instances.empty(), "aigas_step: empty batch");
    const PrototypeSet& prev = state.current;

    // (1) predict the batch with the previous projected prototypes
    const ReferenceSet prev_refs(prev.projected_positions, prev.labels);
    const std::vector<Vec> xs = features_of(batch.instances);
    StepResult result;
    result.predictions = knn_predict_batch(xs, prev_refs, state.cfg.k_predict);

    // (2) update the persistent GNG and snapshot the new node distribution
    state.gng.fit_batch(xs, state.cfg.passes, state.rng);
    PrototypeSet next;
    next.batch_index = batch.index;
    next.positions = state.gng.snapshot();

    // (3) label the new nodes from the previous projected prototypes
    next.labels = knn_predict_batch(next.positions, prev_refs, state.cfg.k_gng);

    // (4)-(5) match previous to current nodes, fit the drift dynamics
    const NodeMapping mapping =
        solve_assignment(pairwise_distances(prev.positions, next.positions));
    result.identity_fallback = mapping.pairs.size() < 2;
    result.transform = result.identity_fallback
                           ? RigidTransform::identity(state.gng.dim())
                           : fit_rigid(prev.positions, next.positions, mapping);

    // (6) project the current nodes one step forward
    next.projected_positions = project(next.positions, result.transform);

    state.current = std::move(next);
    return result;
}

PredictionTrace run_aigas(const StreamSplit& split, const RunConfig& cfg,
                          std::optional<AigasState>* final_state) {
    AigasState state = aigas_init(split.supervised, split.classes, cfg);

    PredictionTrace trace;
    for (const Batch& batch : batch_iter(split, cfg.num_batches)) {
        const auto start = std::chrono::steady_clock::now();
        StepResult step = aigas_step(state, batch);
        const auto stop = std::chrono::steady_clock::now();

        BatchRecord rec;
        rec.batch_index = batch.index;
        rec.predicted = std::move(step.predictions);
        rec.truth.assign(
            split.eval_labels.begin() + static_cast<std::ptrdiff_t>(batch.offset),
            split.eval_labels.begin() +
                static_cast<std::ptrdiff_t>(batch.offset + batch.instances.size()));
        rec.transform = std::move(step.transform);
        rec.prototype_count = state.current.positions.size();
        rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        trace.records.push_back(std::move(rec));
    }
    if (final_state) *final_state = std::move(state);
    return trace;
}

PredictionTrace run_baseline(BaselineKind kind, const StreamSplit& split,
                             const RunConfig& cfg) {
    require(!split.supervised.empty(), "run_baseline: empty supervised prefix");

    ReferenceSet refs;
    for (const auto& inst : split.supervised) refs.add(inst.features, *inst.label);
    const std::size_t window = cfg.sld_window > 0 ? cfg.sld_window : split.supervised.size();

    PredictionTrace trace;
    for (const Batch& batch : batch_iter(split, cfg.num_batches)) {
        const auto start = std::chrono::steady_clock::now();

        const std::vector<Vec> xs = features_of(batch.instances);
        std::vector<ClassId> preds = knn_predict_batch(xs, refs, cfg.k_predict);

        if (kind != BaselineKind::Static) {
            // append the batch under its own predictions (pseudo-labels)
            for (std::size_t i = 0; i < xs.size(); ++i) refs.add(xs[i], preds[i]);
            if (kind == BaselineKind::SlidingWindow && refs.size() > window)
                refs.pop_oldest(refs.size() - window);
        }

        const auto stop = std::chrono::steady_clock::now();

        BatchRecord rec;
        rec.batch_index = batch.index;
        rec.predicted = std::move(preds);
        rec.truth.assign(
            split.eval_labels.begin() + static_cast<std::ptrdiff_t>(batch.offset),
            split.eval_labels.begin() +
                static_cast<std::ptrdiff_t>(batch.offset + batch.instances.size()));
        rec.prototype_count = refs.size();
        rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        trace.records.push_back(std::move(rec));
    }
    return trace;
}

}  // namespace driftgas
