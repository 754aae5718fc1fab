// driftgas command line: reproducible stream-classification experiment runs.
//
//   driftgas run   --synth rectilinear-2c --method aigas --seed 7 --out runs/
//   driftgas run   --dataset 1cdt.csv --method stc
//   driftgas sweep --synth rectilinear-2c --synth rotation-4c
//                  --method aigas --method stc --out runs/sweep
//
// Each run writes manifest.json, predictions.csv, prequential.csv,
// f1_window.csv, transforms.jsonl and (for aigas) gng_final.json into its
// own directory.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "driftgas/datasets.hpp"
#include "driftgas/export.hpp"
#include "driftgas/metrics.hpp"
#include "driftgas/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string method = "aigas";
    double labeled_frac = 0.05;
    std::size_t batches = 100;
    std::size_t g = 100;
    std::size_t k = 5;
    std::size_t kgng = 3;
    int passes = 3;
    std::size_t sld_window = 0;
    std::uint64_t seed = 0;
    std::string out_dir;
    std::string label_col = "last";
    bool csv_header = false;
    double window_overlap = 0.2;
};

std::string default_out_dir() {
    if (const char* env = std::getenv("DRIFTGAS_OUT")) return env;
    return "runs";
}

std::uint64_t fnv1a(const unsigned char* data, std::size_t n, std::uint64_t h = 14695981039346656037ull) {
    for (std::size_t i = 0; i < n; ++i) {
        h ^= data[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::uint64_t h = 14695981039346656037ull;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0)
        h = fnv1a(reinterpret_cast<const unsigned char*>(buf),
                  static_cast<std::size_t>(in.gcount()), h);
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::string hash_instances(const std::vector<driftgas::LabeledInstance>& instances) {
    std::uint64_t h = 14695981039346656037ull;
    for (const auto& inst : instances) {
        h = fnv1a(reinterpret_cast<const unsigned char*>(inst.features.data()),
                  inst.features.size() * sizeof(double), h);
        const int lbl = inst.label.value_or(-1);
        h = fnv1a(reinterpret_cast<const unsigned char*>(&lbl), sizeof(lbl), h);
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

struct SourceData {
    std::vector<driftgas::LabeledInstance> instances;
    std::string name;
    std::string source;  // "csv" or "synth"
    std::string path;
    std::string hash;
    std::vector<std::string> label_names;  // dense id -> original label text
    driftgas::DatasetSpec spec;
};

SourceData load_source(const std::string& dataset_path, const std::string& synth_name,
                       const CommonOpts& opts) {
    if (!dataset_path.empty() && !synth_name.empty())
        throw std::runtime_error("choose either --dataset or --synth, not both");
    if (dataset_path.empty() && synth_name.empty())
        throw std::runtime_error("one of --dataset or --synth is required");

    SourceData src;
    if (!dataset_path.empty()) {
        driftgas::CsvSchema schema;
        schema.has_header = opts.csv_header;
        schema.normalize_fraction = opts.labeled_frac;
        if (opts.label_col != "last") schema.label_column = std::stoi(opts.label_col);
        auto loaded = driftgas::load_csv(dataset_path, schema);
        src.instances = std::move(loaded.instances);
        src.spec = loaded.spec;
        src.name = loaded.spec.name;
        src.source = "csv";
        src.path = dataset_path;
        src.hash = hash_file(dataset_path);
        src.label_names = std::move(loaded.label_names);
    } else {
        auto params = driftgas::make_synth_preset(synth_name, opts.seed);
        src.instances = driftgas::generate_stream(params);
        driftgas::normalize_prefix_minmax(src.instances, opts.labeled_frac);
        src.spec = params.spec;
        src.name = synth_name;
        src.source = "synth";
        src.hash = hash_instances(src.instances);
    }
    return src;
}

driftgas::RunConfig to_config(const CommonOpts& opts) {
    driftgas::RunConfig cfg;
    cfg.labeled_fraction = opts.labeled_frac;
    cfg.num_batches = opts.batches;
    cfg.g_base = opts.g;
    cfg.k_predict = opts.k;
    cfg.k_gng = opts.kgng;
    cfg.passes = opts.passes;
    cfg.sld_window = opts.sld_window;
    cfg.seed = opts.seed;
    return cfg;
}

struct RunOutcome {
    std::string dataset;
    std::string method;
    double preq_error_pct = 0.0;
    double macro_f1 = 0.0;
    double wall_s = 0.0;
    std::string run_dir;
    bool ok = false;
    std::string error;
};

RunOutcome execute_run(const SourceData& src, const CommonOpts& opts) {
    RunOutcome outcome;
    outcome.dataset = src.name;
    outcome.method = opts.method;

    const auto t0 = std::chrono::steady_clock::now();

    const auto split = driftgas::split_stream(src.instances, opts.labeled_frac);
    const auto cfg = to_config(opts);

    driftgas::PredictionTrace trace;
    std::optional<driftgas::AigasState> final_state;
    if (opts.method == "aigas") {
        trace = driftgas::run_aigas(split, cfg, &final_state);
    } else {
        driftgas::BaselineKind kind;
        if (opts.method == "stc") kind = driftgas::BaselineKind::Static;
        else if (opts.method == "sld") kind = driftgas::BaselineKind::SlidingWindow;
        else if (opts.method == "inc") kind = driftgas::BaselineKind::Incremental;
        else throw std::runtime_error("unknown method: " + opts.method);
        trace = driftgas::run_baseline(kind, split, cfg);
    }

    const auto truth = trace.collate_truth();
    const auto preds = trace.collate_predictions();
    const auto preq = driftgas::prequential_error(truth, preds);
    const auto f1 = driftgas::macro_f1(truth, preds, split.classes);

    const std::size_t batch_size = trace.records.front().predicted.size();
    const auto window = std::min(batch_size, truth.size());
    const auto f1_trace = driftgas::windowed_f1(truth, preds, window, opts.window_overlap);

    const fs::path run_dir = fs::path(opts.out_dir) /
                             (src.name + "_" + opts.method + "_seed" + std::to_string(opts.seed));
    fs::create_directories(run_dir);

    driftgas::write_predictions_csv(trace, (run_dir / "predictions.csv").string());
    driftgas::write_prequential_csv(preq, (run_dir / "prequential.csv").string());
    driftgas::write_f1_window_csv(f1_trace, (run_dir / "f1_window.csv").string());
    driftgas::write_transforms_jsonl(trace, (run_dir / "transforms.jsonl").string());
    if (final_state)
        driftgas::write_gng_json(final_state->gng, (run_dir / "gng_final.json").string());

    const auto t1 = std::chrono::steady_clock::now();
    outcome.preq_error_pct = preq.back();
    outcome.macro_f1 = f1.macro_f1;
    outcome.wall_s = std::chrono::duration<double>(t1 - t0).count();
    outcome.run_dir = run_dir.string();

    json manifest;
    manifest["tool"] = "driftgas";
    manifest["version"] = driftgas::kVersion;
    manifest["dataset"] = {{"name", src.name},
                           {"source", src.source},
                           {"path", src.path},
                           {"hash", src.hash},
                           {"n_features", src.spec.n_features},
                           {"n_classes", src.spec.n_classes},
                           {"n_instances", src.spec.n_instances},
                           {"drift_interval", src.spec.drift_interval},
                           {"drift_kind", driftgas::drift_kind_name(src.spec.drift_kind)},
                           {"label_names", src.label_names}};
    manifest["config"] = {{"method", opts.method},
                          {"label_col", opts.label_col},
                          {"csv_header", opts.csv_header},
                          {"labeled_fraction", cfg.labeled_fraction},
                          {"num_batches", cfg.num_batches},
                          {"g_base", cfg.g_base},
                          {"k_predict", cfg.k_predict},
                          {"k_gng", cfg.k_gng},
                          {"passes", cfg.passes},
                          {"sld_window", cfg.sld_window},
                          {"seed", cfg.seed},
                          {"window_overlap", opts.window_overlap},
                          {"gng",
                           {{"eps_winner", cfg.gng_params.eps_winner},
                            {"eps_neighbor", cfg.gng_params.eps_neighbor},
                            {"max_edge_age", cfg.gng_params.max_edge_age},
                            {"insertion_interval", cfg.gng_params.insertion_interval},
                            {"error_split_decay", cfg.gng_params.error_split_decay},
                            {"error_global_decay", cfg.gng_params.error_global_decay}}}};
    manifest["results"] = {
        {"prequential_error_pct", outcome.preq_error_pct},
        {"macro_f1", outcome.macro_f1},
        {"files",
         {{"predictions", "predictions.csv"},
          {"prequential", "prequential.csv"},
          {"f1_window", "f1_window.csv"},
          {"transforms", "transforms.jsonl"},
          {"gng_final", final_state ? json("gng_final.json") : json(nullptr)}}}};
    manifest["wall_time_s"] = outcome.wall_s;

    std::ofstream mf(run_dir / "manifest.json");
    if (!mf) throw std::runtime_error("cannot write manifest");
    mf << manifest.dump(2) << '\n';

    outcome.ok = true;
    return outcome;
}

std::string fmt2(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << v;
    return os.str();
}

void print_summary_header() {
    std::cout << std::left << std::setw(22) << "method" << std::setw(26) << "dataset"
              << std::right << std::setw(12) << "preq-err(%)" << std::setw(12)
              << "macro-F1" << std::setw(12) << "wall(s)" << '\n';
}

void print_summary_row(const RunOutcome& o) {
    std::cout << std::left << std::setw(22) << o.method << std::setw(26) << o.dataset
              << std::right << std::fixed << std::setprecision(2) << std::setw(12);
    if (o.ok)
        std::cout << o.preq_error_pct << std::setw(12) << std::setprecision(3)
                  << o.macro_f1 << std::setw(12) << std::setprecision(2) << o.wall_s;
    else
        std::cout << "failed" << "  (" << o.error << ")";
    std::cout << '\n';
}

void add_common_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--labeled-frac", opts.labeled_frac, "supervised prefix fraction")
        ->default_val(0.05)
        ->check(CLI::Range(1e-9, 1.0 - 1e-9));
    cmd->add_option("--batches", opts.batches, "number of unsupervised batches")
        ->default_val(100)
        ->check(CLI::PositiveNumber);
    cmd->add_option("--g", opts.g, "base GNG node count G")->default_val(100)->check(CLI::PositiveNumber);
    cmd->add_option("--k", opts.k, "K for instance prediction")->default_val(5)->check(CLI::PositiveNumber);
    cmd->add_option("--kgng", opts.kgng, "K_GNG for node labeling")->default_val(3)->check(CLI::PositiveNumber);
    cmd->add_option("--passes", opts.passes, "GNG presentation passes per batch")
        ->default_val(3)
        ->check(CLI::PositiveNumber);
    cmd->add_option("--sld-window", opts.sld_window,
                    "SLD window size (0 = supervised prefix size)")
        ->default_val(0);
    cmd->add_option("--seed", opts.seed, "RNG seed")->default_val(0);
    cmd->add_option("--out", opts.out_dir, "output directory")->default_val(default_out_dir());
    cmd->add_option("--label-col", opts.label_col, "label column: 'last' or 0-based index")
        ->default_val("last");
    cmd->add_flag("--csv-header", opts.csv_header, "skip the first CSV row");
    cmd->add_option("--window-overlap", opts.window_overlap, "F1 window overlap fraction")
        ->default_val(0.2)
        ->check(CLI::Range(0.0, 1.0 - 1e-9));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"drifting-stream classification under extreme verification latency"};
    app.require_subcommand(1);
    // options may come from an INI/TOML file: driftgas --config exp.ini run,
    // with the flags of each subcommand under a [run] or [sweep] section
    app.set_config("--config", "", "read options from an INI/TOML file");

    // run
    CommonOpts run_opts;
    std::string run_dataset, run_synth;
    auto* run_cmd = app.add_subcommand("run", "execute one experiment run");
    run_cmd->add_option("--dataset", run_dataset, "CSV stream path");
    run_cmd->add_option("--synth", run_synth,
                        "synthetic preset: " + [] {
                            std::string s;
                            for (const auto& n : driftgas::synth_preset_names())
                                s += (s.empty() ? "" : ", ") + n;
                            return s;
                        }());
    run_cmd->add_option("--method", run_opts.method, "aigas | stc | sld | inc")
        ->default_val("aigas")
        ->check(CLI::IsMember({"aigas", "stc", "sld", "inc"}));
    add_common_flags(run_cmd, run_opts);

    // sweep
    CommonOpts sweep_opts;
    std::vector<std::string> sweep_datasets, sweep_synths, sweep_methods;
    auto* sweep_cmd = app.add_subcommand("sweep", "run a datasets x methods cross-product");
    sweep_cmd->add_option("--dataset", sweep_datasets, "CSV stream path (repeatable)");
    sweep_cmd->add_option("--synth", sweep_synths, "synthetic preset (repeatable)");
    sweep_cmd->add_option("--method", sweep_methods, "method (repeatable)")
        ->check(CLI::IsMember({"aigas", "stc", "sld", "inc"}));
    add_common_flags(sweep_cmd, sweep_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            const auto src = load_source(run_dataset, run_synth, run_opts);
            const auto outcome = execute_run(src, run_opts);
            print_summary_header();
            print_summary_row(outcome);
            std::cout << "run dir: " << outcome.run_dir << '\n';
            return 0;
        }

        // sweep
        if (sweep_methods.empty()) sweep_methods = {"aigas"};
        std::vector<std::pair<std::string, std::string>> sources;  // (kind, id)
        for (const auto& p : sweep_datasets) sources.emplace_back("csv", p);
        for (const auto& s : sweep_synths) sources.emplace_back("synth", s);
        if (sources.empty()) throw std::runtime_error("sweep: no datasets given");

        std::vector<RunOutcome> cells;
        for (const auto& [kind, id] : sources) {
            for (const auto& method : sweep_methods) {
                CommonOpts opts = sweep_opts;
                opts.method = method;
                RunOutcome outcome;
                try {
                    const auto src = load_source(kind == "csv" ? id : "",
                                                 kind == "synth" ? id : "", opts);
                    outcome = execute_run(src, opts);
                    // the aggregate consumes the serialized manifest, not the
                    // in-memory result
                    std::ifstream mf(fs::path(outcome.run_dir) / "manifest.json");
                    const json parsed = json::parse(mf);
                    outcome.preq_error_pct =
                        parsed.at("results").at("prequential_error_pct").get<double>();
                    outcome.macro_f1 = parsed.at("results").at("macro_f1").get<double>();
                } catch (const std::exception& e) {
                    outcome.dataset = id;
                    outcome.method = method;
                    outcome.ok = false;
                    outcome.error = e.what();
                }
                cells.push_back(outcome);
            }
        }

        print_summary_header();
        for (const auto& c : cells) print_summary_row(c);

        fs::create_directories(sweep_opts.out_dir);
        std::ofstream csv(fs::path(sweep_opts.out_dir) / "sweep.csv");
        std::ofstream txt(fs::path(sweep_opts.out_dir) / "sweep.txt");
        csv << "dataset,method,prequential_error_pct,macro_f1,status\n";
        csv.precision(17);
        for (const auto& c : cells) {
            csv << c.dataset << ',' << c.method << ',';
            if (c.ok) csv << c.preq_error_pct << ',' << c.macro_f1 << ",ok\n";
            else csv << ",,failed\n";
        }

        // aggregate rows per method, over completed cells
        txt << std::left << std::setw(26) << "dataset";
        for (const auto& m : sweep_methods) txt << std::right << std::setw(14) << m;
        txt << '\n';
        for (const auto& [kind, id] : sources) {
            txt << std::left << std::setw(26) << id;
            for (const auto& m : sweep_methods) {
                const auto it = std::find_if(cells.begin(), cells.end(), [&](const RunOutcome& c) {
                    return c.dataset == id && c.method == m;
                });
                txt << std::right << std::setw(14);
                if (it != cells.end() && it->ok)
                    txt << fmt2(it->preq_error_pct);
                else
                    txt << "failed";
            }
            txt << '\n';
        }
        bool all_ok = true;
        for (const char* stat : {"Average", "Std. Dev."}) {
            txt << std::left << std::setw(26) << stat;
            for (const auto& m : sweep_methods) {
                std::vector<double> vals;
                for (const auto& c : cells)
                    if (c.ok && c.method == m) vals.push_back(c.preq_error_pct);
                txt << std::right << std::setw(14);
                if (vals.empty()) {
                    txt << "-";
                } else {
                    const auto [mean, sd] = driftgas::mean_std(vals);
                    const double value = std::string(stat) == "Average" ? mean : sd;
                    txt << fmt2(value);
                    csv << stat << ',' << m << ',' << value << ",,aggregate\n";
                }
            }
            txt << '\n';
        }
        for (const auto& c : cells) all_ok = all_ok && c.ok;
        return all_ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
