#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "driftgas/core.hpp"

namespace driftgas {

enum class DriftKind {
    RectilinearTranslation,
    Rotation,
    Surround,
    Expansion,
    MultiModal,
    Static,
};

std::string drift_kind_name(DriftKind kind);

struct DatasetSpec {
    std::string name;
    std::size_t n_features = 0;
    std::size_t n_classes = 0;
    std::size_t n_instances = 0;
    std::size_t drift_interval = 0;  // instances between drift steps; 0 = none
    DriftKind drift_kind = DriftKind::Static;
};

// One Gaussian concept of one class. velocity is the per-drift-step center
// displacement (rectilinear/multi-modal) or the perimeter speed (surround,
// magnitude only); sigma is the per-dimension standard deviation.
struct ConceptSpec {
    ClassId label = 0;
    Vec center;
    Vec velocity;
    Vec sigma;
};

struct GeneratorParams {
    DatasetSpec spec;
    std::vector<ConceptSpec> concepts;
    Vec pivot;                        // rotation / expansion / surround anchor
    double angular_step = 0.0;        // radians per drift step, first two dims
    double expansion_amplitude = 0.0;
    std::size_t expansion_period = 0;  // drift steps per expansion cycle
    std::uint64_t seed = 0;
};

// Closed-form concept centers after the drift steps elapsed at
// instance_index (steps = index / drift_interval). One entry per concept,
// in concepts order.
std::vector<Vec> concept_centers_at(const GeneratorParams& params,
                                    std::size_t instance_index);

// Deterministic synthetic stream: classes round-robin over instances, each
// class cycling through its concepts, samples drawn from axis-aligned
// Gaussians centered on the drift schedule.
std::vector<LabeledInstance> generate_stream(const GeneratorParams& params);

// Named desk-scale presets of the benchmark drift families (see README).
GeneratorParams make_synth_preset(const std::string& name, std::uint64_t seed);
std::vector<std::string> synth_preset_names();

struct CsvSchema {
    int label_column = -1;           // -1 = last column
    bool has_header = false;
    double normalize_fraction = 0.05;  // prefix used for min-max statistics
};

struct LoadedDataset {
    std::vector<LabeledInstance> instances;
    DatasetSpec spec;
    std::vector<std::string> label_names;  // dense id -> original label text
};

// Numeric CSV in file order: features parsed as reals, labels mapped to
// dense ids 0..|Y|-1 in first-appearance order, features min-max normalized
// to [0,1] with statistics from the supervised prefix only.
LoadedDataset load_csv(const std::string& path, const CsvSchema& schema);

// The normalization step of load_csv, exposed so generated streams follow
// the same protocol. Statistics come from the first
// floor(fraction * size) instances; a zero range maps to x - min.
void normalize_prefix_minmax(std::vector<LabeledInstance>& instances, double fraction);

// Round-trippable CSV writer (features then label, no header).
void write_csv(const std::vector<LabeledInstance>& instances, const std::string& path);

}  // namespace driftgas
