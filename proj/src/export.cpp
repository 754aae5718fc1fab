#include "driftgas/export.hpp"

#include <fstream>

#include <json.hpp>

namespace driftgas {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export: cannot open " + path);
    out.precision(17);
    return out;
}

}  // namespace

void write_predictions_csv(const PredictionTrace& trace, const std::string& path) {
    auto out = open_out(path);
    out << "t,y_true,y_pred\n";
    std::size_t t = 1;
    for (const auto& rec : trace.records)
        for (std::size_t i = 0; i < rec.predicted.size(); ++i, ++t)
            out << t << ',' << rec.truth[i] << ',' << rec.predicted[i] << '\n';
}

void write_prequential_csv(const std::vector<double>& trace, const std::string& path) {
    auto out = open_out(path);
    out << "t,value\n";
    for (std::size_t t = 0; t < trace.size(); ++t) out << (t + 1) << ',' << trace[t] << '\n';
}

void write_f1_window_csv(const std::vector<std::pair<double, double>>& points,
                         const std::string& path) {
    auto out = open_out(path);
    out << "t,value\n";
    for (const auto& [t, f1] : points) out << t << ',' << f1 << '\n';
}

void write_transforms_jsonl(const PredictionTrace& trace, const std::string& path) {
    auto out = open_out(path);
    for (const auto& rec : trace.records) {
        nlohmann::json j;
        j["batch"] = rec.batch_index;
        j["prototype_count"] = rec.prototype_count;
        j["wall_ms"] = rec.wall_ms;
        j["predicted"] = rec.predicted;
        j["truth"] = rec.truth;
        if (rec.transform) {
            const auto& xf = *rec.transform;
            std::vector<std::vector<double>> rot(static_cast<std::size_t>(xf.rotation.rows()));
            for (Eigen::Index r = 0; r < xf.rotation.rows(); ++r)
                for (Eigen::Index c = 0; c < xf.rotation.cols(); ++c)
                    rot[static_cast<std::size_t>(r)].push_back(xf.rotation(r, c));
            j["rotation"] = rot;
            j["translation"] = std::vector<double>(
                xf.translation.data(), xf.translation.data() + xf.translation.size());
        }
        out << j.dump() << '\n';
    }
}

void write_gng_json(const GngModel& model, const std::string& path) {
    nlohmann::json j;
    j["signal_count"] = model.signal_count();
    j["nodes"] = nlohmann::json::array();
    for (const auto& n : model.nodes())
        j["nodes"].push_back({{"id", n.id}, {"position", n.position}, {"error", n.error}});
    j["edges"] = nlohmann::json::array();
    for (const auto& e : model.edges())
        j["edges"].push_back({{"a", e.a}, {"b", e.b}, {"age", e.age}});

    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_gng_csv(const GngModel& model, const std::string& path) {
    auto out = open_out(path);
    out << "id";
    for (std::size_t d = 0; d < model.dim(); ++d) out << ",x" << d;
    out << ",error\n";
    for (const auto& n : model.nodes()) {
        out << n.id;
        for (double v : n.position) out << ',' << v;
        out << ',' << n.error << '\n';
    }
}

}  // namespace driftgas
