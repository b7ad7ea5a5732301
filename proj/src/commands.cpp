#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "common.hpp"
#include "manifest.hpp"
#include "report.hpp"
#include "session.hpp"
#include "svg.hpp"
#include "synthetic.hpp"

namespace fs = std::filesystem;

namespace alseg {
namespace {

SyntheticConfig synthetic_config(const ConfigStore& cfg) {
    SyntheticConfig sc;
    sc.classes = cfg.get_int("classes");
    sc.train_per_class = cfg.get_int("train_per_class");
    sc.valid_per_class = cfg.get_int("valid_per_class");
    sc.test_per_class = cfg.get_int("test_per_class");
    sc.height = cfg.get_int("height");
    sc.width = cfg.get_int("width");
    sc.channels = cfg.get_int("channels");
    sc.modes_per_class = cfg.get_int("modes_per_class");
    sc.blob_min = cfg.get_int("blob_min");
    sc.blob_max = cfg.get_int("blob_max");
    sc.noise_std = cfg.get_double("noise_std");
    sc.color_jitter = cfg.get_double("color_jitter");
    sc.fg_min = cfg.get_double("fg_min");
    sc.fg_max = cfg.get_double("fg_max");
    sc.seed = cfg.get_u64("seed");
    sc.validate();
    return sc;
}

SessionConfig session_config(const ConfigStore& cfg) {
    SessionConfig sc;
    sc.method = parse_method(cfg.get("method"));
    sc.k = cfg.get_int("k");
    sc.bins = cfg.get_int("bins");
    sc.maxr = cfg.get_int("maxr");
    sc.replications = cfg.get_int("replications");
    sc.inner_repeats = cfg.get_int("inner_repeats");
    sc.base_seed = cfg.get_u64("seed");
    sc.init_seed = cfg.get_int("init_seed");
    sc.threshold = cfg.get_double("threshold");
    sc.acquisition.method = sc.method;
    sc.acquisition.per_class_first_round = cfg.get_int("per_class_first_round");
    sc.acquisition.per_class_later_rounds = cfg.get_int("per_class_later_rounds");
    sc.acquisition.mc_passes = cfg.get_int("mc_passes");
    sc.acquisition.mc_dropout_rate = cfg.get_double("mc_dropout_rate");
    sc.learner.lambda = cfg.get_double("lambda");
    sc.learner.epochs = cfg.get_int("epochs");
    sc.learner.learning_rate = cfg.get_double("learning_rate");
    sc.learner.l2 = cfg.get_double("l2");
    sc.learner.batch_pixels = cfg.get_int("batch_pixels");
    sc.dump_scores = cfg.get_bool("dump_scores");
    sc.validate();
    return sc;
}

Dataset load_configured_dataset(const ConfigStore& cfg) {
    Dataset ds = load_dataset(dataset_manifest_path(cfg));
    double vf = cfg.get_double("valid_fraction");
    if (vf > 0 && ds.valid_ids.empty()) {
        std::vector<int> labels;
        labels.reserve(ds.train_ids.size());
        for (int id : ds.train_ids) labels.push_back(ds.at(id).class_label);
        auto [train, valid] = split_train_valid(ds.train_ids, labels, vf, cfg.get_u64("seed"));
        ds.train_ids = std::move(train);
        ds.valid_ids = std::move(valid);
    }
    return ds;
}

void ensure_dir(const fs::path& p) {
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw IoError("cannot create directory " + p.string() + ": " + ec.message());
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    if (!out) throw IoError("cannot write " + p.string());
    out << text;
}

// Sessions of one method across replication seeds, optionally in parallel.
std::vector<SessionRecord> run_method_sessions(const Dataset& ds, const SessionConfig& sc,
                                               int jobs) {
    auto seeds = replication_seeds(sc);
    std::vector<SessionRecord> records(seeds.size());
    if (jobs <= 1 || seeds.size() == 1) {
        for (std::size_t i = 0; i < seeds.size(); ++i)
            records[i] = run_session(ds, sc, seeds[i]);
        return records;
    }
    std::vector<std::exception_ptr> errors(seeds.size());
    std::size_t stride = static_cast<std::size_t>(jobs);
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < stride; ++w)
        workers.emplace_back([&, w]() {
            for (std::size_t i = w; i < seeds.size(); i += stride) {
                try {
                    records[i] = run_session(ds, sc, seeds[i]);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& t : workers) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return records;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

// Aggregates written by `run` and read back by compare/plot.
std::vector<MethodAggregate> collect_aggregates(const ConfigStore& cfg) {
    fs::path root = fs::path(cfg.get("out")) / dataset_name(cfg);
    std::vector<std::string> methods = split_list(cfg.get("methods"));
    if (methods.empty()) {
        if (!fs::is_directory(root))
            throw ConfigError("compare: no results under " + root.string());
        for (const auto& e : fs::directory_iterator(root))
            if (e.is_directory()) methods.push_back(e.path().filename().string());
        std::sort(methods.begin(), methods.end());
    }

    std::vector<MethodAggregate> aggs;
    for (const auto& method : methods) {
        fs::path mdir = root / method;
        if (!fs::is_directory(mdir)) {
            if (!split_list(cfg.get("methods")).empty())
                throw ConfigError("compare: no sessions for method '" + method + "' under " +
                                  root.string());
            continue;
        }
        std::vector<std::string> session_dirs;
        for (const auto& e : fs::directory_iterator(mdir))
            if (e.is_directory() && e.path().filename().string().rfind("seed", 0) == 0)
                session_dirs.push_back(e.path().string());
        std::sort(session_dirs.begin(), session_dirs.end());
        if (session_dirs.empty()) continue;

        std::vector<std::vector<double>> curves;
        for (const auto& dir : session_dirs) {
            auto rows = read_rounds_csv((fs::path(dir) / "rounds.csv").string());
            std::vector<double> curve;
            curve.reserve(rows.size());
            for (const auto& r : rows) curve.push_back(r.test_dice);
            curves.push_back(std::move(curve));
        }
        aggs.push_back(aggregate_method(method, curves));
    }
    if (aggs.empty())
        throw ConfigError("compare: nothing to aggregate under " + root.string());
    return aggs;
}

}  // namespace

std::string dataset_manifest_path(const ConfigStore& cfg) {
    std::string path = cfg.get("dataset");
    if (path.empty()) throw ConfigError("config: key 'dataset' is required");
    fs::path p(path);
    if (fs::is_directory(p)) p /= "manifest.csv";
    return p.string();
}

std::string dataset_name(const ConfigStore& cfg) {
    fs::path p(cfg.get("dataset"));
    if (p.filename().string() == "manifest.csv" || p.extension() == ".csv")
        p = p.parent_path();
    std::string name = p.filename().string();
    if (name.empty()) name = "dataset";
    return name;
}

std::string session_dir(const ConfigStore& cfg, const std::string& method,
                        std::uint64_t seed) {
    fs::path dir = fs::path(cfg.get("out")) / dataset_name(cfg) / method /
                   ("seed" + std::to_string(seed));
    return dir.string();
}

void cmd_generate(const ConfigStore& cfg) {
    std::string dir = cfg.get("dataset");
    if (dir.empty()) throw ConfigError("generate: key 'dataset' names the output directory");
    SyntheticConfig sc = synthetic_config(cfg);
    Dataset ds = generate_synthetic(sc);
    write_dataset(ds, dir, sc);
    std::cout << "generated " << ds.samples.size() << " samples (" << ds.train_ids.size()
              << " train / " << ds.valid_ids.size() << " valid / " << ds.test_ids.size()
              << " test, " << sc.classes << " classes) under " << dir << "\n";
}

void cmd_run(const ConfigStore& cfg) {
    // Validate the configuration before touching the filesystem.
    SessionConfig sc = session_config(cfg);
    int jobs = cfg.get_int("jobs");
    Dataset ds = load_configured_dataset(cfg);

    auto records = run_method_sessions(ds, sc, jobs);
    auto seeds = replication_seeds(sc);

    std::vector<std::vector<double>> curves;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        fs::path dir(session_dir(cfg, rec.method, seeds[i]));
        ensure_dir(dir);
        write_rounds_csv((dir / "rounds.csv").string(), rec.rounds);
        write_session_json((dir / "session.json").string(), rec);
        write_text(dir / "config", cfg.echo());
        LearnerConfig lc = sc.learner;
        save_model((dir / "model.alseg").string(), rec.final_model, lc);
        if (sc.dump_scores)
            write_score_dump_csv((dir / "scores.csv").string(), rec.score_dump);

        std::vector<double> curve;
        for (const auto& r : rec.rounds) curve.push_back(r.test_dice);
        curves.push_back(std::move(curve));
    }

    MethodAggregate agg = aggregate_method(records.front().method, curves);
    fs::path mdir = fs::path(cfg.get("out")) / dataset_name(cfg) / records.front().method;
    write_auc_csv((mdir / "auc.csv").string(), {agg});
    write_round_aggregate_csv((mdir / "aggregate_rounds.csv").string(), {agg});

    std::printf("%s: auc %.4f +- %.4f over %zu replication(s)\n", agg.method.c_str(),
                agg.auc.mean, agg.auc.std, curves.size());
}

void cmd_compare(const ConfigStore& cfg) {
    auto aggs = collect_aggregates(cfg);
    fs::path root = fs::path(cfg.get("out")) / dataset_name(cfg);
    ensure_dir(root);
    write_auc_csv((root / "compare_auc.csv").string(), aggs);
    write_round_aggregate_csv((root / "compare_rounds.csv").string(), aggs);
    std::cout << format_compare_table(aggs);
}

void cmd_plot(const ConfigStore& cfg) {
    auto aggs = collect_aggregates(cfg);
    fs::path root = fs::path(cfg.get("out")) / dataset_name(cfg);
    ensure_dir(root);

    std::vector<SvgSeries> series;
    for (const auto& a : aggs) {
        SvgSeries s;
        s.name = a.method;
        for (std::size_t r = 0; r < a.per_round.size(); ++r) {
            s.x.push_back(static_cast<double>(r + 1));
            s.y.push_back(a.per_round[r].mean);
            s.band.push_back(a.per_round[r].std);
        }
        series.push_back(std::move(s));
    }
    std::string path = (root / "dice_curves.svg").string();
    write_line_chart(path, "Test Dice per round: " + dataset_name(cfg), "round",
                     "mean Dice", series);
    std::cout << "wrote " << path << "\n";
}

void cmd_sweep(const ConfigStore& cfg) {
    std::string param = cfg.get("param");
    if (param != "k" && param != "lambda")
        throw ConfigError("sweep: param must be 'k' or 'lambda'");
    auto value_strings = split_list(cfg.get("values"));
    if (value_strings.empty())
        throw ConfigError("sweep: 'values' must list at least one value");

    Dataset ds = load_configured_dataset(cfg);
    fs::path root = fs::path(cfg.get("out")) / dataset_name(cfg);
    ensure_dir(root);

    std::vector<double> xs, aucs;
    std::string csv = "value,auc\n";
    char buf[64];
    for (const auto& vs : value_strings) {
        SessionConfig sc = session_config(cfg);
        double value;
        try {
            value = std::stod(vs);
        } catch (const std::exception&) {
            throw ConfigError("sweep: bad value '" + vs + "'");
        }
        if (param == "k") {
            sc.k = static_cast<int>(value);
            if (sc.k < 1 || static_cast<double>(sc.k) != value)
                throw ConfigError("sweep: k values must be positive integers, got '" + vs + "'");
        } else {
            sc.learner.lambda = value;
            if (value < 0) throw ConfigError("sweep: lambda values must be >= 0");
        }
        SessionRecord rec = run_session(ds, sc, sc.base_seed);
        xs.push_back(value);
        aucs.push_back(rec.auc);
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", value, rec.auc);
        csv += buf;
        std::printf("%s = %-10s auc %.4f\n", param.c_str(), vs.c_str(), rec.auc);
    }

    write_text(root / ("sweep_" + param + ".csv"), csv);
    SvgSeries s;
    s.name = "auc";
    s.x = xs;
    s.y = aucs;
    write_line_chart((root / ("sweep_" + param + ".svg")).string(),
                     "AUC of Dice vs " + param + ": " + dataset_name(cfg), param,
                     "AUC of Dice", {s});
}

void cmd_knn_inspect(const ConfigStore& cfg) {
    int query = cfg.get_int("id");
    if (query < 0) throw ConfigError("knn-inspect: key 'id' names the query sample");

    Dataset ds = load_configured_dataset(cfg);
    bool in_train =
        std::find(ds.train_ids.begin(), ds.train_ids.end(), query) != ds.train_ids.end();
    if (!in_train)
        throw ConfigError("knn-inspect: id " + std::to_string(query) +
                          " is not a training sample");

    auto descriptors = build_descriptor_index(ds, cfg.get_int("bins"));
    std::map<int, int> labels;
    for (int id : ds.train_ids) labels[id] = ds.at(id).class_label;
    NeighborIndex index = NeighborIndex::build(descriptors, labels, cfg.get_int("k"));

    fs::path root = fs::path(cfg.get("out")) / dataset_name(cfg);
    ensure_dir(root);

    const auto& neighbors = index.neighbors(query);
    if (neighbors.empty())
        std::cerr << "warning: sample " << query
                  << " is the only member of its class; no neighbors\n";

    std::string csv = "id,neighbor,jsd,image\n";
    char buf[64];
    std::cout << "query " << query << " (class " << labels[query] << ", "
              << ds.at(query).image_path << ")\n";
    for (const auto& n : neighbors) {
        std::snprintf(buf, sizeof(buf), "%.17g", n.divergence);
        csv += std::to_string(query) + "," + std::to_string(n.id) + "," + buf + "," +
               ds.at(n.id).image_path + "\n";
        std::printf("  neighbor %-5d jsd %.6f  %s\n", n.id, n.divergence,
                    ds.at(n.id).image_path.c_str());
    }
    fs::path csv_path = root / ("knn_" + std::to_string(query) + ".csv");
    write_text(csv_path, csv);
    std::cout << "wrote " << csv_path.string() << "\n";

    if (cfg.get_bool("dump_descriptors")) {
        std::string dcsv = "id,plane,bin,value\n";
        for (const auto& [id, d] : descriptors)
            for (std::size_t plane = 0; plane < d.planes.size(); ++plane)
                for (int bin = 0; bin < d.bins; ++bin) {
                    std::snprintf(buf, sizeof(buf), "%.17g",
                                  d.planes[plane][static_cast<std::size_t>(bin)]);
                    dcsv += std::to_string(id) + "," + std::to_string(plane) + "," +
                            std::to_string(bin) + "," + buf + "\n";
                }
        write_text(root / "descriptors.csv", dcsv);
        std::cout << "wrote " << (root / "descriptors.csv").string() << "\n";
    }
}

}  // namespace alseg
