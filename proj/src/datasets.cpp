#include "driftgas/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace driftgas {

std::string drift_kind_name(DriftKind kind) {
    switch (kind) {
        case DriftKind::RectilinearTranslation: return "rectilinear-translation";
        case DriftKind::Rotation: return "rotation";
        case DriftKind::Surround: return "surround";
        case DriftKind::Expansion: return "expansion";
        case DriftKind::MultiModal: return "multi-modal";
        case DriftKind::Static: return "static";
    }
    return "unknown";
}

namespace {

double norm2(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// planar rotation of (x, y) offsets about the pivot, dims >= 2
Vec rotate_about(const Vec& point, const Vec& pivot, double angle) {
    Vec out = point;
    const double dx = point[0] - pivot[0];
    const double dy = point[1] - pivot[1];
    const double c = std::cos(angle), s = std::sin(angle);
    out[0] = pivot[0] + c * dx - s * dy;
    out[1] = pivot[1] + s * dx + c * dy;
    return out;
}

// Position after walking `arc` units counterclockwise along the axis-aligned
// square of half-side L centered at the pivot. `start` lies on that
// perimeter by construction (L is its max-norm distance from the pivot).
Vec square_circuit(const Vec& start, const Vec& pivot, double half_side, double arc) {
    const double L = half_side;
    // corners in walk order: (+L,+L) -> (-L,+L) -> (-L,-L) -> (+L,-L)
    const double perimeter = 8.0 * L;

    // arclength of the start point, measured from corner (+L,+L)
    const double dx = start[0] - pivot[0];
    const double dy = start[1] - pivot[1];
    double s0 = 0.0;
    if (std::abs(dy - L) < 1e-9) s0 = L - dx;            // top edge, heading -x
    else if (std::abs(dx + L) < 1e-9) s0 = 2.0 * L + (L - dy);  // left edge, heading -y
    else if (std::abs(dy + L) < 1e-9) s0 = 4.0 * L + (dx + L);  // bottom edge, heading +x
    else s0 = 6.0 * L + (dy + L);                         // right edge, heading +y

    double s = std::fmod(s0 + arc, perimeter);
    if (s < 0.0) s += perimeter;

    Vec out = start;
    if (s < 2.0 * L) {
        out[0] = pivot[0] + (L - s);
        out[1] = pivot[1] + L;
    } else if (s < 4.0 * L) {
        out[0] = pivot[0] - L;
        out[1] = pivot[1] + (L - (s - 2.0 * L));
    } else if (s < 6.0 * L) {
        out[0] = pivot[0] + ((s - 4.0 * L) - L);
        out[1] = pivot[1] - L;
    } else {
        out[0] = pivot[0] + L;
        out[1] = pivot[1] + ((s - 6.0 * L) - L);
    }
    return out;
}

}  // namespace

std::vector<Vec> concept_centers_at(const GeneratorParams& params,
                                    std::size_t instance_index) {
    const auto& spec = params.spec;
    const bool planar = spec.drift_kind == DriftKind::Rotation ||
                        spec.drift_kind == DriftKind::Expansion ||
                        spec.drift_kind == DriftKind::Surround;
    if (planar) {
        require(spec.n_features >= 2, "drift schedule: planar kinds need >= 2 features");
        require(params.pivot.size() >= 2, "drift schedule: pivot needs >= 2 components");
    }
    const std::size_t steps =
        spec.drift_interval > 0 ? instance_index / spec.drift_interval : 0;
    const auto fsteps = static_cast<double>(steps);

    std::vector<Vec> centers;
    centers.reserve(params.concepts.size());
    for (const auto& gc : params.concepts) {
        Vec c = gc.center;
        switch (spec.drift_kind) {
            case DriftKind::Static:
                break;
            case DriftKind::RectilinearTranslation:
            case DriftKind::MultiModal:
                for (std::size_t d = 0; d < c.size(); ++d)
                    c[d] += fsteps * gc.velocity[d];
                break;
            case DriftKind::Rotation:
                c = rotate_about(c, params.pivot, fsteps * params.angular_step);
                break;
            case DriftKind::Expansion: {
                c = rotate_about(c, params.pivot, fsteps * params.angular_step);
                double scale = 1.0;
                if (params.expansion_period > 0)
                    scale += params.expansion_amplitude *
                             std::sin(2.0 * std::numbers::pi * fsteps /
                                      static_cast<double>(params.expansion_period));
                for (std::size_t d = 0; d < c.size(); ++d)
                    c[d] = params.pivot[d] + scale * (c[d] - params.pivot[d]);
                break;
            }
            case DriftKind::Surround: {
                const double speed = norm2(gc.velocity);
                if (speed > 0.0) {
                    const double half_side =
                        std::max(std::abs(gc.center[0] - params.pivot[0]),
                                 std::abs(gc.center[1] - params.pivot[1]));
                    c = square_circuit(gc.center, params.pivot, half_side,
                                       fsteps * speed);
                }
                break;
            }
        }
        centers.push_back(std::move(c));
    }
    return centers;
}

std::vector<LabeledInstance> generate_stream(const GeneratorParams& params) {
    const auto& spec = params.spec;
    require(spec.n_features >= 1 && spec.n_classes >= 2, "generate_stream: bad spec");
    require(!params.concepts.empty(), "generate_stream: no concepts");
    for (const auto& gc : params.concepts) {
        require(gc.center.size() == spec.n_features &&
                    gc.sigma.size() == spec.n_features,
                "generate_stream: concept dimension mismatch");
        for (double s : gc.sigma)
            require(s > 0.0, "generate_stream: sigma must be positive");
        require(gc.label >= 0 && static_cast<std::size_t>(gc.label) < spec.n_classes,
                "generate_stream: concept label outside class range");
    }

    // concept indices per class, in declaration order
    std::vector<std::vector<std::size_t>> by_class(spec.n_classes);
    for (std::size_t k = 0; k < params.concepts.size(); ++k)
        by_class[static_cast<std::size_t>(params.concepts[k].label)].push_back(k);
    for (std::size_t c = 0; c < spec.n_classes; ++c)
        require(!by_class[c].empty(),
                "generate_stream: class " + std::to_string(c) + " has no concept");

    std::mt19937_64 rng(params.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::size_t> cursor(spec.n_classes, 0);

    std::vector<LabeledInstance> stream;
    stream.reserve(spec.n_instances);
    for (std::size_t i = 0; i < spec.n_instances; ++i) {
        const auto cls = i % spec.n_classes;
        const auto& pool = by_class[cls];
        const std::size_t k = pool[cursor[cls]++ % pool.size()];
        const Vec center = concept_centers_at(params, i)[k];

        Vec x(spec.n_features);
        for (std::size_t d = 0; d < spec.n_features; ++d)
            x[d] = center[d] + params.concepts[k].sigma[d] * gauss(rng);
        stream.push_back({std::move(x), static_cast<ClassId>(cls)});
    }
    return stream;
}

namespace {

GeneratorParams preset_base(const std::string& name, DriftKind kind,
                            std::size_t n_classes, std::uint64_t seed) {
    GeneratorParams p;
    p.spec.name = name;
    p.spec.n_features = 2;
    p.spec.n_classes = n_classes;
    p.spec.n_instances = 16000;
    p.spec.drift_interval = 400;
    p.spec.drift_kind = kind;
    p.pivot = {0.0, 0.0};
    p.seed = seed;
    return p;
}

}  // namespace

GeneratorParams make_synth_preset(const std::string& name, std::uint64_t seed) {
    if (name == "static-2c") {
        auto p = preset_base(name, DriftKind::Static, 2, seed);
        p.spec.n_instances = 8000;
        p.spec.drift_interval = 0;
        p.concepts = {{0, {0.0, 0.0}, {0.0, 0.0}, {0.5, 0.5}},
                      {1, {3.0, 0.0}, {0.0, 0.0}, {0.5, 0.5}}};
        return p;
    }
    if (name == "rectilinear-2c") {
        // one concept translating diagonally past a static one
        auto p = preset_base(name, DriftKind::RectilinearTranslation, 2, seed);
        p.concepts = {{0, {1.0, 1.0}, {0.0, 0.0}, {0.3, 0.3}},
                      {1, {4.0, 1.0}, {0.12, 0.12}, {0.3, 0.3}}};
        return p;
    }
    if (name == "rectilinear-2c-joint") {
        // both classes translate along the axis joining them; the trailing
        // class walks straight through the leading class's initial region
        auto p = preset_base(name, DriftKind::RectilinearTranslation, 2, seed);
        p.concepts = {{0, {0.0, 0.0}, {0.06, 0.06}, {0.4, 0.4}},
                      {1, {2.0, 2.0}, {0.06, 0.06}, {0.4, 0.4}}};
        return p;
    }
    if (name == "rotation-4c") {
        auto p = preset_base(name, DriftKind::Rotation, 4, seed);
        p.angular_step = 0.02;
        p.concepts = {{0, {3.0, 0.0}, {0.0, 0.0}, {0.35, 0.35}},
                      {1, {0.0, 3.0}, {0.0, 0.0}, {0.35, 0.35}},
                      {2, {-3.0, 0.0}, {0.0, 0.0}, {0.35, 0.35}},
                      {3, {0.0, -3.0}, {0.0, 0.0}, {0.35, 0.35}}};
        return p;
    }
    if (name == "surround-2c") {
        auto p = preset_base(name, DriftKind::Surround, 2, seed);
        p.concepts = {{0, {0.0, 0.0}, {0.0, 0.0}, {0.5, 0.5}},
                      {1, {2.5, 2.5}, {0.18, 0.0}, {0.5, 0.5}}};
        return p;
    }
    if (name == "expansion-4c") {
        auto p = preset_base(name, DriftKind::Expansion, 4, seed);
        p.angular_step = 0.02;
        p.expansion_amplitude = 0.08;
        p.expansion_period = 20;
        p.concepts = {{0, {3.0, 0.0}, {0.0, 0.0}, {0.3, 0.3}},
                      {1, {0.0, 3.0}, {0.0, 0.0}, {0.3, 0.3}},
                      {2, {-3.0, 0.0}, {0.0, 0.0}, {0.3, 0.3}},
                      {3, {0.0, -3.0}, {0.0, 0.0}, {0.3, 0.3}}};
        return p;
    }
    if (name == "multimodal-2c") {
        auto p = preset_base(name, DriftKind::MultiModal, 2, seed);
        p.concepts = {{0, {0.0, 0.0}, {0.04, 0.02}, {0.4, 0.4}},
                      {0, {5.0, 5.0}, {-0.04, -0.02}, {0.4, 0.4}},
                      {1, {5.0, 0.0}, {-0.02, 0.04}, {0.4, 0.4}},
                      {1, {0.0, 5.0}, {0.02, -0.04}, {0.4, 0.4}}};
        return p;
    }
    throw std::invalid_argument("unknown synth preset: " + name);
}

std::vector<std::string> synth_preset_names() {
    return {"static-2c",   "rectilinear-2c", "rectilinear-2c-joint", "rotation-4c",
            "surround-2c", "expansion-4c",   "multimodal-2c"};
}

void normalize_prefix_minmax(std::vector<LabeledInstance>& instances, double fraction) {
    require(!instances.empty(), "normalize: empty stream");
    require(fraction > 0.0 && fraction < 1.0, "normalize: fraction must be in (0,1)");
    const auto prefix = std::max<std::size_t>(
        1, static_cast<std::size_t>(static_cast<double>(instances.size()) * fraction));
    const std::size_t dim = instances.front().features.size();

    Vec lo(dim, std::numeric_limits<double>::infinity());
    Vec hi(dim, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < prefix; ++i)
        for (std::size_t d = 0; d < dim; ++d) {
            lo[d] = std::min(lo[d], instances[i].features[d]);
            hi[d] = std::max(hi[d], instances[i].features[d]);
        }

    for (auto& inst : instances)
        for (std::size_t d = 0; d < dim; ++d) {
            const double range = hi[d] - lo[d];
            inst.features[d] = range > 0.0 ? (inst.features[d] - lo[d]) / range
                                           : inst.features[d] - lo[d];
        }
}

LoadedDataset load_csv(const std::string& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open " + path);

    LoadedDataset out;
    std::map<std::string, ClassId> label_ids;

    std::string line;
    std::size_t row = 0;
    std::size_t n_cols = 0;
    bool first_data_row = true;
    while (std::getline(in, line)) {
        ++row;
        if (row == 1 && schema.has_header) continue;
        // tolerate trailing CR from DOS files and skip blank lines
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);

        if (first_data_row) {
            n_cols = cells.size();
            if (n_cols < 2)
                throw std::runtime_error("load_csv: row " + std::to_string(row) +
                                         ": need at least one feature and a label");
            first_data_row = false;
        } else if (cells.size() != n_cols) {
            throw std::runtime_error("load_csv: row " + std::to_string(row) +
                                     ": ragged row (" + std::to_string(cells.size()) +
                                     " columns, expected " + std::to_string(n_cols) + ")");
        }

        const std::size_t label_idx =
            schema.label_column < 0 ? n_cols - 1 : static_cast<std::size_t>(schema.label_column);
        if (label_idx >= n_cols)
            throw std::runtime_error("load_csv: label column out of range");

        LabeledInstance inst;
        inst.features.reserve(n_cols - 1);
        for (std::size_t c = 0; c < n_cols; ++c) {
            if (c == label_idx) continue;
            std::size_t pos = 0;
            double v = 0.0;
            try {
                v = std::stod(cells[c], &pos);
            } catch (const std::exception&) {
                throw std::runtime_error("load_csv: row " + std::to_string(row) +
                                         ": non-numeric feature '" + cells[c] + "'");
            }
            if (pos != cells[c].size() || !std::isfinite(v))
                throw std::runtime_error("load_csv: row " + std::to_string(row) +
                                         ": invalid feature '" + cells[c] + "'");
            inst.features.push_back(v);
        }

        std::string label_text = cells[label_idx];
        auto [it, inserted] =
            label_ids.try_emplace(label_text, static_cast<ClassId>(label_ids.size()));
        if (inserted) out.label_names.push_back(label_text);
        inst.label = it->second;
        out.instances.push_back(std::move(inst));
    }

    if (out.instances.empty()) throw std::runtime_error("load_csv: empty file " + path);

    normalize_prefix_minmax(out.instances, schema.normalize_fraction);

    const auto slash = path.find_last_of("/\\");
    std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = stem.find_last_of('.');
    if (dot != std::string::npos) stem = stem.substr(0, dot);

    out.spec.name = stem;
    out.spec.n_features = out.instances.front().features.size();
    out.spec.n_classes = label_ids.size();
    out.spec.n_instances = out.instances.size();
    out.spec.drift_interval = 0;  // unknown for external files
    out.spec.drift_kind = DriftKind::Static;
    return out;
}

void write_csv(const std::vector<LabeledInstance>& instances, const std::string& path) {
    std::ofstream outf(path);
    if (!outf) throw std::runtime_error("write_csv: cannot open " + path);
    outf.precision(17);
    for (const auto& inst : instances) {
        for (double v : inst.features) outf << v << ',';
        outf << inst.label.value_or(-1) << '\n';
    }
}

}  // namespace driftgas
