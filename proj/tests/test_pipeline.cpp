#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "driftgas/datasets.hpp"
#include "driftgas/export.hpp"
#include "driftgas/metrics.hpp"
#include "driftgas/pipeline.hpp"

using namespace driftgas;

namespace {

std::vector<LabeledInstance> balanced_prefix(std::size_t n) {
    std::vector<LabeledInstance> out;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) * 0.01;
        out.push_back({{x, (i % 2) ? 1.0 + x : -1.0 - x}, static_cast<ClassId>(i % 2)});
    }
    return out;
}

RunConfig small_config() {
    RunConfig cfg;
    cfg.g_base = 30;
    cfg.num_batches = 20;
    cfg.seed = 17;
    return cfg;
}

StreamSplit synth_split(const std::string& preset, std::size_t n_instances,
                        std::uint64_t seed, double frac = 0.05) {
    auto params = make_synth_preset(preset, seed);
    params.spec.n_instances = n_instances;
    auto stream = generate_stream(params);
    normalize_prefix_minmax(stream, frac);
    return split_stream(stream, frac);
}

}  // namespace

TEST_CASE("aigas_init sizes the budget from the imbalance ratio") {
    RunConfig cfg;
    cfg.g_base = 100;
    cfg.passes = 1;

    SUBCASE("balanced 2-class prefix gives G0 = 200") {
        const auto state = aigas_init(balanced_prefix(100), {0, 1}, cfg);
        CHECK(state.gng.params().max_nodes == 200);
    }
    SUBCASE("90/10 counts give G0 = 1000") {
        std::vector<LabeledInstance> sup;
        for (int i = 0; i < 90; ++i)
            sup.push_back({{static_cast<double>(i), 0.0}, 0});
        for (int i = 0; i < 10; ++i)
            sup.push_back({{static_cast<double>(i), 5.0}, 1});
        const auto state = aigas_init(sup, {0, 1}, cfg);
        CHECK(state.gng.params().max_nodes == 1000);
    }
    SUBCASE("every initial node carries a label from Y") {
        const auto state = aigas_init(balanced_prefix(200), {0, 1}, cfg);
        REQUIRE(state.current.labels.size() == state.current.positions.size());
        for (ClassId y : state.current.labels) CHECK((y == 0 || y == 1));
        // projection starts as the identity
        CHECK(state.current.projected_positions == state.current.positions);
        CHECK(state.current.batch_index == 0);
    }
    SUBCASE("missing class in prefix is rejected") {
        std::vector<LabeledInstance> sup;
        for (int i = 0; i < 50; ++i) sup.push_back({{static_cast<double>(i), 0.0}, 0});
        CHECK_THROWS(aigas_init(sup, {0, 1}, cfg));
    }
}

TEST_CASE("single-batch stream yields one record with batch-sized predictions") {
    const auto split = synth_split("static-2c", 400, 9, 0.5);  // suffix 200
    RunConfig cfg = small_config();
    cfg.num_batches = 1;
    const auto trace = run_aigas(split, cfg);
    REQUIRE(trace.records.size() == 1);
    CHECK(trace.records[0].predicted.size() == split.unsupervised.size());
    CHECK(trace.records[0].batch_index == 1);
    CHECK(trace.records[0].transform.has_value());
}

TEST_CASE("collation covers the suffix and runs are bit-identical under a seed") {
    const auto split = synth_split("static-2c", 2000, 4);
    const RunConfig cfg = small_config();

    const auto t1 = run_aigas(split, cfg);
    const auto t2 = run_aigas(split, cfg);

    const auto p1 = t1.collate_predictions();
    const auto p2 = t2.collate_predictions();
    CHECK(p1.size() == split.unsupervised.size());
    CHECK(p1 == p2);
    CHECK(t1.collate_truth() == split.eval_labels);

    REQUIRE(t1.records.size() == t2.records.size());
    for (std::size_t i = 0; i < t1.records.size(); ++i) {
        REQUIRE(t1.records[i].transform.has_value());
        CHECK(t1.records[i].transform->rotation == t2.records[i].transform->rotation);
        CHECK(t1.records[i].prototype_count == t2.records[i].prototype_count);
    }
}

TEST_CASE("prototype count never exceeds the budget") {
    const auto split = synth_split("rectilinear-2c", 3000, 21);
    RunConfig cfg = small_config();
    std::optional<AigasState> state;
    const auto trace = run_aigas(split, cfg, &state);
    REQUIRE(state.has_value());
    const std::size_t budget = state->gng.params().max_nodes;
    for (const auto& rec : trace.records) CHECK(rec.prototype_count <= budget);
}

TEST_CASE("stationary stream fits a near-identity transform after burn-in") {
    const auto split = synth_split("static-2c", 4000, 11);
    RunConfig cfg = small_config();
    const auto trace = run_aigas(split, cfg);

    // data scale: widest feature range in the supervised prefix
    double scale = 0.0;
    for (std::size_t d = 0; d < 2; ++d) {
        double lo = 1e300, hi = -1e300;
        for (const auto& inst : split.supervised) {
            lo = std::min(lo, inst.features[d]);
            hi = std::max(hi, inst.features[d]);
        }
        scale = std::max(scale, hi - lo);
    }

    for (std::size_t b = 5; b < trace.records.size(); ++b) {
        const auto& xf = *trace.records[b].transform;
        const auto n = xf.rotation.rows();
        CHECK((xf.rotation - Eigen::MatrixXd::Identity(n, n)).norm() <= 0.1);
        CHECK(xf.translation.norm() <= 0.1 * scale);
    }
}

TEST_CASE("fitted transform moves the matched centroid by the drift step") {
    // joint translation of both classes, one drift step per batch: the fit
    // must satisfy ||R(c+t) - (c+delta)|| <= 2|delta| for the centroid c of
    // the matched previous prototypes
    GeneratorParams params;
    params.spec = {"track", 2, 2, 4000, 190, DriftKind::RectilinearTranslation};
    params.pivot = {0.0, 0.0};
    params.seed = 33;
    params.concepts = {{0, {0.0, 0.0}, {0.04, 0.04}, {0.35, 0.35}},
                       {1, {2.5, 0.0}, {0.04, 0.04}, {0.35, 0.35}}};
    auto stream = generate_stream(params);
    const auto split = split_stream(stream, 0.05);  // suffix 3800
    RunConfig cfg = small_config();
    cfg.g_base = 40;
    cfg.num_batches = 20;  // B = 190 = drift interval

    const auto batches = batch_iter(split, cfg.num_batches);
    AigasState state = aigas_init(split.supervised, split.classes, cfg);

    const Vec delta = {0.04, 0.04};
    for (std::size_t b = 0; b < batches.size(); ++b) {
        const auto prev_positions = state.current.positions;
        const auto step = aigas_step(state, batches[b]);
        if (b < 5) continue;  // burn-in while the graph is still growing fast

        const auto mapping =
            solve_assignment(pairwise_distances(prev_positions, state.current.positions));
        Vec c(2, 0.0);
        for (const auto& [p, q] : mapping.pairs)
            for (std::size_t d = 0; d < 2; ++d) c[d] += prev_positions[p][d];
        for (auto& v : c) v /= static_cast<double>(mapping.pairs.size());

        const Vec moved = project({c}, step.transform)[0];
        const Vec target = {c[0] + delta[0], c[1] + delta[1]};
        CHECK(distance(moved, target) <= 2.0 * std::hypot(delta[0], delta[1]));
    }
}

TEST_CASE("node labels at batch b are a pure function of batch b-1") {
    const auto split = synth_split("rectilinear-2c", 2000, 2);
    RunConfig cfg = small_config();
    cfg.num_batches = 5;

    AigasState state = aigas_init(split.supervised, split.classes, cfg);
    for (const auto& batch : batch_iter(split, cfg.num_batches)) {
        const AigasState before = state;  // the only history the step may read
        aigas_step(state, batch);

        const ReferenceSet prev_refs(before.current.projected_positions,
                                     before.current.labels);
        const auto expected =
            knn_predict_batch(state.current.positions, prev_refs, cfg.k_gng);
        CHECK(state.current.labels == expected);
    }
}

TEST_CASE("corrupting the evaluation channel changes no prediction") {
    auto split = synth_split("rectilinear-2c", 2000, 8);
    const RunConfig cfg = small_config();

    const auto aigas_before = run_aigas(split, cfg).collate_predictions();
    const auto sld_before =
        run_baseline(BaselineKind::SlidingWindow, split, cfg).collate_predictions();
    const auto stc_before =
        run_baseline(BaselineKind::Static, split, cfg).collate_predictions();

    for (auto& y : split.eval_labels) y = 0;  // trash the ground truth

    CHECK(run_aigas(split, cfg).collate_predictions() == aigas_before);
    CHECK(run_baseline(BaselineKind::SlidingWindow, split, cfg).collate_predictions() ==
          sld_before);
    CHECK(run_baseline(BaselineKind::Static, split, cfg).collate_predictions() ==
          stc_before);
}

TEST_CASE("label closure: predictions and prototype labels stay inside Y") {
    const auto split = synth_split("rotation-4c", 3000, 5);
    RunConfig cfg = small_config();
    std::optional<AigasState> state;
    const auto trace = run_aigas(split, cfg, &state);

    auto in_y = [&](ClassId y) {
        return std::find(split.classes.begin(), split.classes.end(), y) !=
               split.classes.end();
    };
    for (ClassId y : trace.collate_predictions()) CHECK(in_y(y));
    REQUIRE(state.has_value());
    for (ClassId y : state->current.labels) CHECK(in_y(y));
}

TEST_CASE("baseline reference-set dynamics") {
    const auto split = synth_split("static-2c", 2000, 3);
    RunConfig cfg = small_config();
    cfg.sld_window = 150;

    const auto stc = run_baseline(BaselineKind::Static, split, cfg);
    for (const auto& rec : stc.records)
        CHECK(rec.prototype_count == split.supervised.size());

    const auto inc = run_baseline(BaselineKind::Incremental, split, cfg);
    CHECK(inc.records.back().prototype_count ==
          split.supervised.size() + split.unsupervised.size());

    const auto sld = run_baseline(BaselineKind::SlidingWindow, split, cfg);
    for (const auto& rec : sld.records) CHECK(rec.prototype_count <= 150);
}

TEST_CASE("SLD with an unbounded window reproduces INC exactly") {
    const auto split = synth_split("rectilinear-2c", 2000, 6);
    RunConfig cfg = small_config();
    cfg.sld_window = 1000000;
    const auto sld = run_baseline(BaselineKind::SlidingWindow, split, cfg);
    const auto inc = run_baseline(BaselineKind::Incremental, split, cfg);
    CHECK(sld.collate_predictions() == inc.collate_predictions());
}

TEST_CASE("imbalanced stream scales the budget and still classifies well") {
    // 90/10 separable stationary stream: xi = 9, budget = round((1+9) * G)
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss(0.0, 0.4);
    std::vector<LabeledInstance> stream;
    for (int i = 0; i < 4000; ++i) {
        const ClassId cls = (i % 10) == 9 ? 1 : 0;
        const double cx = cls == 0 ? 0.0 : 3.0;
        stream.push_back({{cx + gauss(rng), gauss(rng)}, cls});
    }
    const auto split = split_stream(stream, 0.05);
    RunConfig cfg = small_config();
    cfg.g_base = 20;
    cfg.seed = 9;

    std::optional<AigasState> state;
    const auto trace = run_aigas(split, cfg, &state);
    REQUIRE(state.has_value());
    CHECK(state->gng.params().max_nodes == 200);

    const auto truth = trace.collate_truth();
    const auto preds = trace.collate_predictions();
    CHECK(macro_f1(truth, preds, split.classes).macro_f1 >= 0.95);
    CHECK(prequential_error(truth, preds).back() <= 2.0);
}

TEST_CASE("gng snapshot export writers") {
    const auto split = synth_split("static-2c", 400, 9, 0.5);
    RunConfig cfg = small_config();
    cfg.num_batches = 2;
    std::optional<AigasState> state;
    run_aigas(split, cfg, &state);
    REQUIRE(state.has_value());

    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path();
    write_gng_csv(state->gng, (dir / "dg_nodes.csv").string());
    write_gng_json(state->gng, (dir / "dg_nodes.json").string());

    std::ifstream csv(dir / "dg_nodes.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "id,x0,x1,error");
    std::size_t rows = 0;
    for (std::string line; std::getline(csv, line);)
        if (!line.empty()) ++rows;
    CHECK(rows == state->gng.nodes().size());

    std::ifstream js(dir / "dg_nodes.json");
    const std::string blob((std::istreambuf_iterator<char>(js)),
                           std::istreambuf_iterator<char>());
    CHECK(blob.find("\"nodes\"") != std::string::npos);
    CHECK(blob.find("\"edges\"") != std::string::npos);
    CHECK(blob.find("\"signal_count\"") != std::string::npos);
}

TEST_CASE("STC and INC agree on a stationary stream") {
    const auto split = synth_split("static-2c", 4000, 12);
    const RunConfig cfg = small_config();

    const auto stc = run_baseline(BaselineKind::Static, split, cfg);
    const auto inc = run_baseline(BaselineKind::Incremental, split, cfg);

    const auto f1_stc =
        macro_f1(stc.collate_truth(), stc.collate_predictions(), split.classes).macro_f1;
    const auto f1_inc =
        macro_f1(inc.collate_truth(), inc.collate_predictions(), split.classes).macro_f1;
    CHECK(std::abs(f1_stc - f1_inc) <= 0.05);
}
