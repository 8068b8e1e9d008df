#include "qfi/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfi/svg.hpp"

namespace qfi {

namespace fs = std::filesystem;

namespace {

std::string joined(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void ensure_out_dir(const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + out_dir);
}

SamplerConfig sampler_config(const RunConfig& cfg) {
    SamplerConfig sc;
    sc.n_qubits = cfg.n_qubits;
    sc.max_gates = cfg.sampler.max_gates;
    sc.num_samples = cfg.sampler.num_samples;
    sc.seed = cfg.seed;
    return sc;
}

EvoConfig evo_config(const RunConfig& cfg, std::uint64_t seed) {
    EvoConfig ec;
    ec.n_qubits = cfg.n_qubits;
    ec.pop_size = cfg.evolve.pop_size;
    ec.generations = cfg.evolve.generations;
    ec.max_gates = cfg.evolve.max_gates;
    ec.noise = cfg.noise;
    ec.angle_sigma = cfg.evolve.angle_sigma;
    ec.seed = seed;
    return ec;
}

QfiCurve load_curve(const std::string& curve_path, int n_qubits) {
    if (curve_path.empty()) throw ConfigError("the qfi objective needs --curve <curve.json>");
    QfiCurve curve;
    try {
        curve = curve_from_json(read_text_file(curve_path));
    } catch (const std::exception& e) {
        throw std::runtime_error("cannot load curve " + curve_path + ": " + e.what());
    }
    if (curve.n_qubits != n_qubits)
        throw ConfigError("curve was fitted for n_qubits=" + std::to_string(curve.n_qubits) +
                          " but the run uses n_qubits=" + std::to_string(n_qubits));
    return curve;
}

nlohmann::json metrics_json(const Individual& ind) {
    return {{"fidelity", ind.metrics.fidelity},
            {"sv", ind.metrics.sv},
            {"robustness", ind.metrics.robustness},
            {"depth", ind.metrics.depth},
            {"gates", ind.metrics.gate_count},
            {"score", ind.score},
            {"score_raw", ind.score_raw}};
}

ComparisonRow stats_row(const std::string& mode, const std::string& seed, double best_score,
                        const std::vector<Individual>& population) {
    const GenerationStats s = population_stats(0, population);
    ComparisonRow row;
    row.mode = mode;
    row.seed = seed;
    row.best_score = best_score;
    row.mean_fid = s.mean_fid;
    row.median_fid = s.median_fid;
    row.iqr_fid = s.iqr_fid;
    row.mean_sv = s.mean_sv;
    row.mean_rob = s.mean_rob;
    row.mean_depth = s.mean_depth;
    row.mean_gates = s.mean_gates;
    return row;
}

void write_metric_boxplot(const std::string& path, const std::string& metric_name,
                          const std::vector<double>& fid_mode, const std::vector<double>& qfi_mode) {
    auto five = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return std::array<double, 5>{v.front(), quantile(v, 0.25), quantile(v, 0.5),
                                     quantile(v, 0.75), v.back()};
    };
    const auto a = five(fid_mode);
    const auto b = five(qfi_mode);
    double lo = std::min(a[0], b[0]);
    double hi = std::max(a[4], b[4]);
    if (hi <= lo) hi = lo + 1.0;
    const double pad = 0.05 * (hi - lo);

    SvgPlot plot(metric_name + " by objective", "objective", metric_name);
    plot.set_x_range(0.0, 3.0);
    plot.set_y_range(lo - pad, hi + pad);
    plot.suppress_x_ticks();
    plot.box(1.0, 0.3, a[0], a[1], a[2], a[3], a[4], "#1f77b4", "fidelity");
    plot.box(2.0, 0.3, b[0], b[1], b[2], b[3], b[4], "#d62728", "qfi");
    write_text_file(path, plot.render());
}

}  // namespace

void cmd_sample(const RunConfig& cfg, const std::string& out_dir) {
    ensure_out_dir(out_dir);
    const SamplerConfig sc = sampler_config(cfg);
    const std::vector<SampleRecord> records = sample_ensemble(sc, cfg.threads, true);
    if (records.empty()) throw ConfigError("num_samples must be positive for the sample command");
    const BinnedDistribution bins = bin_samples(records, cfg.sampler.n_bins);

    SampleSummary summary;
    summary.n_qubits = cfg.n_qubits;
    summary.num_samples = sc.num_samples;
    try {
        summary.pearson_gates = pearson(records, SampleField::GateCount);
        summary.pearson_depth = pearson(records, SampleField::Depth);
    } catch (const std::domain_error&) {
        summary.pearson_gates = std::nan("");
        summary.pearson_depth = std::nan("");
    }
    std::int64_t below = 0, above = 0;
    for (const SampleRecord& r : records) {
        if (r.fidelity < 0.5) ++below;
        if (r.fidelity >= 0.99) ++above;
    }
    summary.frac_below_half = static_cast<double>(below) / static_cast<double>(records.size());
    summary.frac_above_099 = static_cast<double>(above) / static_cast<double>(records.size());

    write_text_file(joined(out_dir, "samples.csv"), samples_to_csv(records));
    write_text_file(joined(out_dir, "bins.csv"), bins_to_csv(bins));
    write_text_file(joined(out_dir, "summary.json"), sample_summary_to_json(summary));
}

void cmd_fit(const RunConfig& cfg, const std::string& bins_csv_path, const std::string& out_dir) {
    ensure_out_dir(out_dir);
    const BinnedDistribution bins = bins_from_csv(read_text_file(bins_csv_path));
    const QfiCurve curve = build_qfi_curve(bins, cfg.qfi, cfg.n_qubits);

    write_text_file(joined(out_dir, "qfi.csv"), qfi_curve_to_csv(curve));
    write_text_file(joined(out_dir, "curve.json"), curve_to_json(curve));

    SvgPlot plot("functional information vs fidelity", "fidelity", "bits");
    plot.set_x_range(0.0, 1.0);
    const double top = *std::max_element(curve.qfi_raw.begin(), curve.qfi_raw.end());
    plot.set_y_range(0.0, top * 1.05);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < curve.grid.size(); i += 2) {
        xs.push_back(curve.grid[i]);
        ys.push_back(curve.qfi_raw[i]);
    }
    plot.scatter(xs, ys, "#1f77b4", 1.5, "raw -log2 p");
    plot.polyline(curve.grid, curve.qfi_smooth, "#d62728", "smoothed");
    write_text_file(joined(out_dir, "qfi.svg"), plot.render());
}

void cmd_evolve(const RunConfig& cfg, ObjectiveMode mode, const std::string& curve_path,
                const std::string& out_dir) {
    ensure_out_dir(out_dir);
    Objective objective;
    objective.mode = mode;
    if (mode == ObjectiveMode::Qfi) objective.curve = load_curve(curve_path, cfg.n_qubits);

    const EvoConfig ec = evo_config(cfg, cfg.seed);
    const EvolveResult result = evolve(ec, objective, cfg.threads);

    write_text_file(joined(out_dir, "history.csv"), history_to_csv(result.history));
    write_text_file(joined(out_dir, "samples.csv"),
                    evo_samples_to_csv(result.all_samples, ec.pop_size));

    nlohmann::json best;
    best["circuit"] = nlohmann::json::parse(circuit_to_json(result.best.circuit));
    best["metrics"] = metrics_json(result.best);
    write_text_file(joined(out_dir, "best.json"), best.dump(2));

    SvgPlot plot("population means by generation", "generation", "value");
    plot.set_x_range(0.0, static_cast<double>(std::max(1, ec.generations - 1)));
    plot.set_y_range(0.0, 1.0);
    std::vector<double> gens, fid, rob, sv;
    for (const GenerationStats& s : result.history) {
        gens.push_back(static_cast<double>(s.generation));
        fid.push_back(s.mean_fid);
        rob.push_back(s.mean_rob);
        sv.push_back(s.mean_sv);
    }
    plot.polyline(gens, fid, "#1f77b4", "mean fidelity");
    plot.polyline(gens, rob, "#2ca02c", "mean robustness");
    plot.polyline(gens, sv, "#d62728", "mean Sv");
    write_text_file(joined(out_dir, "evolve.svg"), plot.render());
}

void cmd_compare(const RunConfig& cfg, const std::string& curve_path, const std::string& out_dir) {
    ensure_out_dir(out_dir);
    Objective fid_obj;
    fid_obj.mode = ObjectiveMode::Fidelity;
    Objective qfi_obj;
    qfi_obj.mode = ObjectiveMode::Qfi;
    qfi_obj.curve = load_curve(curve_path, cfg.n_qubits);

    std::vector<ComparisonRow> rows;
    std::vector<Individual> pooled_fid, pooled_qfi;
    std::vector<double> scatter_f, scatter_s;
    double best_fid_score = 0.0, best_qfi_score = 0.0;

    for (int pass = 0; pass < 2; ++pass) {
        const bool is_qfi = pass == 1;
        for (const std::uint64_t seed : cfg.compare_seeds) {
            const EvolveResult result =
                evolve(evo_config(cfg, seed), is_qfi ? qfi_obj : fid_obj, cfg.threads);
            rows.push_back(stats_row(is_qfi ? "qfi" : "fidelity", std::to_string(seed),
                                     result.best.score, result.final_population));
            auto& pooled = is_qfi ? pooled_qfi : pooled_fid;
            pooled.insert(pooled.end(), result.final_population.begin(),
                          result.final_population.end());
            double& best = is_qfi ? best_qfi_score : best_fid_score;
            best = std::max(best, result.best.score);
            if (is_qfi) {
                for (const Individual& ind : result.all_samples) {
                    scatter_f.push_back(ind.metrics.fidelity);
                    scatter_s.push_back(ind.score);
                }
            }
        }
    }
    rows.push_back(stats_row("fidelity", "all", best_fid_score, pooled_fid));
    rows.push_back(stats_row("qfi", "all", best_qfi_score, pooled_qfi));
    write_text_file(joined(out_dir, "comparison.csv"), comparison_to_csv(rows));

    auto metric_values = [](const std::vector<Individual>& pool, auto getter) {
        std::vector<double> v;
        v.reserve(pool.size());
        for (const Individual& ind : pool) v.push_back(getter(ind));
        return v;
    };
    const struct {
        const char* name;
        double (*get)(const Individual&);
    } metrics[] = {
        {"fidelity", [](const Individual& i) { return i.metrics.fidelity; }},
        {"sv", [](const Individual& i) { return i.metrics.sv; }},
        {"robustness", [](const Individual& i) { return i.metrics.robustness; }},
        {"depth", [](const Individual& i) { return static_cast<double>(i.metrics.depth); }},
        {"gates", [](const Individual& i) { return static_cast<double>(i.metrics.gate_count); }},
    };
    for (const auto& m : metrics) {
        write_metric_boxplot(joined(out_dir, std::string("box_") + m.name + ".svg"), m.name,
                             metric_values(pooled_fid, m.get), metric_values(pooled_qfi, m.get));
    }

    // Fidelity vs score scatter for the qfi objective, decimated to keep the
    // file small.
    const std::size_t stride = std::max<std::size_t>(1, scatter_f.size() / 20000);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < scatter_f.size(); i += stride) {
        xs.push_back(scatter_f[i]);
        ys.push_back(scatter_s[i]);
    }
    SvgPlot scatter("fidelity vs qfi score (qfi objective)", "fidelity", "normalized qfi score");
    scatter.set_x_range(0.0, 1.0);
    scatter.set_y_range(0.0, 1.0);
    scatter.scatter(xs, ys, "#1f77b4", 1.5);
    write_text_file(joined(out_dir, "scatter_fidelity_score.svg"), scatter.render());
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"quantum functional information over random and evolved circuits"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", objective = "fidelity", curve_path, bins_path;
    std::uint64_t seed = 0;
    int threads = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "run configuration JSON");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--seed", seed, "seed override");
        cmd->add_option("--threads", threads, "worker threads (does not change results)")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* sample = app.add_subcommand("sample", "sample a random-circuit ensemble");
    add_common(sample);
    CLI::App* fit = app.add_subcommand("fit", "fit the functional-information curve from bins");
    fit->add_option("bins", bins_path, "bins CSV from the sample command")->required();
    add_common(fit);
    CLI::App* evolve_cmd = app.add_subcommand("evolve", "run the evolutionary search");
    add_common(evolve_cmd);
    evolve_cmd->add_option("--objective", objective, "fidelity or qfi")
        ->check(CLI::IsMember({"fidelity", "qfi"}));
    evolve_cmd->add_option("--curve", curve_path, "curve JSON (required for qfi)");
    CLI::App* compare = app.add_subcommand("compare", "run both objectives over seeds");
    add_common(compare);
    compare->add_option("--curve", curve_path, "curve JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        RunConfig cfg;
        if (!config_path.empty()) {
            std::string text;
            try {
                text = read_text_file(config_path);
            } catch (const std::exception& e) {
                throw ConfigError(e.what());
            }
            cfg = run_config_from_json(text);
        }
        if (sub->count("--seed") > 0) cfg.seed = seed;
        if (sub->count("--threads") > 0) cfg.threads = threads;

        if (sample->parsed()) {
            cmd_sample(cfg, out_dir);
        } else if (fit->parsed()) {
            cmd_fit(cfg, bins_path, out_dir);
        } else if (evolve_cmd->parsed()) {
            const ObjectiveMode mode =
                objective == "qfi" ? ObjectiveMode::Qfi : ObjectiveMode::Fidelity;
            cmd_evolve(cfg, mode, curve_path, out_dir);
        } else if (compare->parsed()) {
            cmd_compare(cfg, curve_path, out_dir);
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace qfi
