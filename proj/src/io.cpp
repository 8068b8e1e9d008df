#include "qfi/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qfi {

namespace {

// Shortest exact decimal form; parsing it recovers the same double, so a
// written file re-emits byte-identically after a parse round trip.
std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt_fixed9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9f", v);
    return std::string(buf);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw CsvError("csv parse error at line " + std::to_string(line_no) + ": " + what);
}

double to_double(const std::string& s, int line_no) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end) fail(line_no, "bad number '" + s + "'");
    return v;
}

std::int64_t to_int(const std::string& s, int line_no) {
    std::int64_t v = 0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end) fail(line_no, "bad integer '" + s + "'");
    return v;
}

// Splits into data rows, checking the header and the column count of every
// row. Line numbers are 1-based with the header on line 1.
std::vector<std::pair<int, std::vector<std::string>>> read_rows(const std::string& text,
                                                                const std::string& header) {
    std::vector<std::pair<int, std::vector<std::string>>> rows;
    const std::size_t n_cols = split_fields(header).size();
    std::size_t start = 0;
    int line_no = 0;
    bool saw_header = false;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos) nl = text.size();
        std::string line = text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        start = nl + 1;
        ++line_no;
        if (line.empty()) {
            if (start > text.size()) break;
            continue;
        }
        if (!saw_header) {
            if (line != header) fail(line_no, "expected header '" + header + "'");
            saw_header = true;
            continue;
        }
        auto fields = split_fields(line);
        if (fields.size() != n_cols)
            fail(line_no, "expected " + std::to_string(n_cols) + " columns, got " +
                              std::to_string(fields.size()));
        rows.emplace_back(line_no, std::move(fields));
    }
    if (!saw_header) fail(1, "missing header '" + header + "'");
    return rows;
}

constexpr const char* kSamplesHeader = "fidelity,gate_count,depth";
constexpr const char* kBinsHeader = "bin_lo,bin_hi,count,mean_fidelity,probability";
constexpr const char* kQfiHeader = "fidelity,p_hat,qfi_raw,qfi_smooth";
constexpr const char* kHistoryHeader =
    "generation,best_score,mean_fid,median_fid,iqr_fid,mean_sv,mean_rob,mean_depth,mean_gates";
constexpr const char* kEvoSamplesHeader =
    "generation,score,score_raw,fidelity,sv,robustness,depth,gates";
constexpr const char* kComparisonHeader =
    "mode,seed,best_score,mean_fid,median_fid,iqr_fid,mean_sv,mean_rob,mean_depth,mean_gates";

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path);
}

std::string samples_to_csv(std::span<const SampleRecord> records) {
    std::string out(kSamplesHeader);
    out.push_back('\n');
    for (const SampleRecord& r : records) {
        out += fmt_fixed9(r.fidelity);
        out.push_back(',');
        out += std::to_string(r.gate_count);
        out.push_back(',');
        out += std::to_string(r.depth);
        out.push_back('\n');
    }
    return out;
}

std::vector<SampleRecord> samples_from_csv(const std::string& text) {
    std::vector<SampleRecord> records;
    for (const auto& [line_no, f] : read_rows(text, kSamplesHeader)) {
        SampleRecord r;
        r.fidelity = to_double(f[0], line_no);
        r.gate_count = static_cast<std::int32_t>(to_int(f[1], line_no));
        r.depth = static_cast<std::int32_t>(to_int(f[2], line_no));
        if (r.fidelity < 0.0 || r.fidelity > 1.0) fail(line_no, "fidelity outside [0,1]");
        records.push_back(r);
    }
    return records;
}

std::string bins_to_csv(const BinnedDistribution& bins) {
    std::string out(kBinsHeader);
    out.push_back('\n');
    for (const FidelityBin& b : bins.bins) {
        out += fmt(b.lo);
        out.push_back(',');
        out += fmt(b.hi);
        out.push_back(',');
        out += std::to_string(b.count);
        out.push_back(',');
        out += fmt(b.mean_fidelity);
        out.push_back(',');
        out += fmt(b.probability);
        out.push_back('\n');
    }
    return out;
}

BinnedDistribution bins_from_csv(const std::string& text) {
    BinnedDistribution bins;
    for (const auto& [line_no, f] : read_rows(text, kBinsHeader)) {
        FidelityBin b;
        b.lo = to_double(f[0], line_no);
        b.hi = to_double(f[1], line_no);
        b.count = to_int(f[2], line_no);
        b.mean_fidelity = to_double(f[3], line_no);
        b.probability = to_double(f[4], line_no);
        if (b.count < 0) fail(line_no, "negative count");
        bins.bins.push_back(b);
        bins.total += b.count;
    }
    if (bins.bins.empty()) throw CsvError("csv parse error at line 1: bins file has no rows");
    bins.n_bins = static_cast<int>(bins.bins.size());
    return bins;
}

std::string qfi_curve_to_csv(const QfiCurve& curve) {
    std::string out(kQfiHeader);
    out.push_back('\n');
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        out += fmt(curve.grid[i]);
        out.push_back(',');
        out += fmt(curve.p_hat[i]);
        out.push_back(',');
        out += fmt(curve.qfi_raw[i]);
        out.push_back(',');
        out += fmt(curve.qfi_smooth[i]);
        out.push_back('\n');
    }
    return out;
}

std::vector<QfiCsvRow> qfi_rows_from_csv(const std::string& text) {
    std::vector<QfiCsvRow> rows;
    for (const auto& [line_no, f] : read_rows(text, kQfiHeader)) {
        QfiCsvRow r;
        r.fidelity = to_double(f[0], line_no);
        r.p_hat = to_double(f[1], line_no);
        r.qfi_raw = to_double(f[2], line_no);
        r.qfi_smooth = to_double(f[3], line_no);
        rows.push_back(r);
    }
    return rows;
}

std::string history_to_csv(std::span<const GenerationStats> history) {
    std::string out(kHistoryHeader);
    out.push_back('\n');
    for (const GenerationStats& s : history) {
        out += std::to_string(s.generation);
        out.push_back(',');
        out += fmt(s.best_score);
        out.push_back(',');
        out += fmt(s.mean_fid);
        out.push_back(',');
        out += fmt(s.median_fid);
        out.push_back(',');
        out += fmt(s.iqr_fid);
        out.push_back(',');
        out += fmt(s.mean_sv);
        out.push_back(',');
        out += fmt(s.mean_rob);
        out.push_back(',');
        out += fmt(s.mean_depth);
        out.push_back(',');
        out += fmt(s.mean_gates);
        out.push_back('\n');
    }
    return out;
}

std::vector<GenerationStats> history_from_csv(const std::string& text) {
    std::vector<GenerationStats> history;
    for (const auto& [line_no, f] : read_rows(text, kHistoryHeader)) {
        GenerationStats s;
        s.generation = static_cast<int>(to_int(f[0], line_no));
        s.best_score = to_double(f[1], line_no);
        s.mean_fid = to_double(f[2], line_no);
        s.median_fid = to_double(f[3], line_no);
        s.iqr_fid = to_double(f[4], line_no);
        s.mean_sv = to_double(f[5], line_no);
        s.mean_rob = to_double(f[6], line_no);
        s.mean_depth = to_double(f[7], line_no);
        s.mean_gates = to_double(f[8], line_no);
        history.push_back(s);
    }
    return history;
}

std::string evo_samples_to_csv(std::span<const Individual> samples, int pop_size) {
    std::string out(kEvoSamplesHeader);
    out.push_back('\n');
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Individual& ind = samples[i];
        out += std::to_string(static_cast<int>(i / static_cast<std::size_t>(pop_size)));
        out.push_back(',');
        out += fmt(ind.score);
        out.push_back(',');
        out += fmt(ind.score_raw);
        out.push_back(',');
        out += fmt(ind.metrics.fidelity);
        out.push_back(',');
        out += fmt(ind.metrics.sv);
        out.push_back(',');
        out += fmt(ind.metrics.robustness);
        out.push_back(',');
        out += std::to_string(ind.metrics.depth);
        out.push_back(',');
        out += std::to_string(ind.metrics.gate_count);
        out.push_back('\n');
    }
    return out;
}

std::vector<EvoSampleRow> evo_samples_from_csv(const std::string& text) {
    std::vector<EvoSampleRow> rows;
    for (const auto& [line_no, f] : read_rows(text, kEvoSamplesHeader)) {
        EvoSampleRow r;
        r.generation = static_cast<int>(to_int(f[0], line_no));
        r.score = to_double(f[1], line_no);
        r.score_raw = to_double(f[2], line_no);
        r.fidelity = to_double(f[3], line_no);
        r.sv = to_double(f[4], line_no);
        r.robustness = to_double(f[5], line_no);
        r.depth = static_cast<int>(to_int(f[6], line_no));
        r.gates = static_cast<int>(to_int(f[7], line_no));
        rows.push_back(r);
    }
    return rows;
}

std::string comparison_to_csv(std::span<const ComparisonRow> rows) {
    std::string out(kComparisonHeader);
    out.push_back('\n');
    for (const ComparisonRow& r : rows) {
        out += r.mode;
        out.push_back(',');
        out += r.seed;
        out.push_back(',');
        out += fmt(r.best_score);
        out.push_back(',');
        out += fmt(r.mean_fid);
        out.push_back(',');
        out += fmt(r.median_fid);
        out.push_back(',');
        out += fmt(r.iqr_fid);
        out.push_back(',');
        out += fmt(r.mean_sv);
        out.push_back(',');
        out += fmt(r.mean_rob);
        out.push_back(',');
        out += fmt(r.mean_depth);
        out.push_back(',');
        out += fmt(r.mean_gates);
        out.push_back('\n');
    }
    return out;
}

std::vector<ComparisonRow> comparison_from_csv(const std::string& text) {
    std::vector<ComparisonRow> rows;
    for (const auto& [line_no, f] : read_rows(text, kComparisonHeader)) {
        ComparisonRow r;
        r.mode = f[0];
        r.seed = f[1];
        if (r.mode != "fidelity" && r.mode != "qfi") fail(line_no, "bad mode '" + r.mode + "'");
        r.best_score = to_double(f[2], line_no);
        r.mean_fid = to_double(f[3], line_no);
        r.median_fid = to_double(f[4], line_no);
        r.iqr_fid = to_double(f[5], line_no);
        r.mean_sv = to_double(f[6], line_no);
        r.mean_rob = to_double(f[7], line_no);
        r.mean_depth = to_double(f[8], line_no);
        r.mean_gates = to_double(f[9], line_no);
        rows.push_back(r);
    }
    return rows;
}

namespace {

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                    const char* where) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* name : allowed)
            if (item.key() == name) ok = true;
        if (!ok) throw ConfigError(std::string("unknown config field '") + item.key() + "' in " + where);
    }
}

template <typename T>
void take(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

RunConfig run_config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    RunConfig cfg;
    try {
        reject_unknown(j, {"schema_version", "n_qubits", "seed", "threads", "sampler", "noise",
                           "qfi", "evolve", "compare"},
                       "config");
        int schema_version = kRunConfigSchemaVersion;
        take(j, "schema_version", schema_version);
        if (schema_version != kRunConfigSchemaVersion)
            throw ConfigError("unsupported schema_version " + std::to_string(schema_version));
        take(j, "n_qubits", cfg.n_qubits);
        take(j, "seed", cfg.seed);
        take(j, "threads", cfg.threads);
        if (j.contains("sampler")) {
            const auto& s = j.at("sampler");
            reject_unknown(s, {"max_gates", "num_samples", "n_bins"}, "sampler");
            take(s, "max_gates", cfg.sampler.max_gates);
            take(s, "num_samples", cfg.sampler.num_samples);
            take(s, "n_bins", cfg.sampler.n_bins);
        }
        if (j.contains("noise")) {
            const auto& s = j.at("noise");
            reject_unknown(s, {"p1", "p2", "epsilon"}, "noise");
            take(s, "p1", cfg.noise.p1);
            take(s, "p2", cfg.noise.p2);
            take(s, "epsilon", cfg.noise.epsilon);
        }
        if (j.contains("qfi")) {
            const auto& s = j.at("qfi");
            reject_unknown(s, {"max_depth", "min_leaf", "grid_points", "n_knots", "ridge_lambda"},
                           "qfi");
            take(s, "max_depth", cfg.qfi.max_depth);
            take(s, "min_leaf", cfg.qfi.min_leaf);
            take(s, "grid_points", cfg.qfi.grid_points);
            take(s, "n_knots", cfg.qfi.n_knots);
            take(s, "ridge_lambda", cfg.qfi.ridge_lambda);
        }
        if (j.contains("evolve")) {
            const auto& s = j.at("evolve");
            reject_unknown(s, {"pop_size", "generations", "max_gates", "angle_sigma"}, "evolve");
            take(s, "pop_size", cfg.evolve.pop_size);
            take(s, "generations", cfg.evolve.generations);
            take(s, "max_gates", cfg.evolve.max_gates);
            take(s, "angle_sigma", cfg.evolve.angle_sigma);
        }
        if (j.contains("compare")) {
            const auto& s = j.at("compare");
            reject_unknown(s, {"seeds"}, "compare");
            take(s, "seeds", cfg.compare_seeds);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }

    if (cfg.n_qubits < 2 || cfg.n_qubits > kDefaultPureQubitCap)
        throw ConfigError("n_qubits must be in [2, 8]");
    if (cfg.threads < 1) throw ConfigError("threads must be at least 1");
    if (cfg.sampler.num_samples < 0) throw ConfigError("num_samples must be non-negative");
    if (cfg.sampler.max_gates < 1 || cfg.evolve.max_gates < 1)
        throw ConfigError("max_gates must be positive");
    if (cfg.sampler.n_bins < 2) throw ConfigError("n_bins must be at least 2");
    if (cfg.noise.p1 < 0 || cfg.noise.p1 > 1 || cfg.noise.p2 < 0 || cfg.noise.p2 > 1)
        throw ConfigError("noise probabilities must be in [0,1]");
    if (cfg.noise.epsilon <= 0) throw ConfigError("epsilon must be positive");
    if (cfg.qfi.max_depth < 0 || cfg.qfi.min_leaf < 1 || cfg.qfi.grid_points < 2 ||
        cfg.qfi.n_knots < 0 || cfg.qfi.ridge_lambda < 0)
        throw ConfigError("bad qfi parameters");
    if (cfg.evolve.pop_size < 2) throw ConfigError("pop_size must be at least 2");
    if (cfg.evolve.generations < 1) throw ConfigError("generations must be at least 1");
    if (cfg.evolve.angle_sigma <= 0) throw ConfigError("angle_sigma must be positive");
    if (cfg.compare_seeds.size() < 2) throw ConfigError("compare needs at least 2 seeds");
    return cfg;
}

std::string run_config_to_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["schema_version"] = kRunConfigSchemaVersion;
    j["n_qubits"] = cfg.n_qubits;
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    j["sampler"] = {{"max_gates", cfg.sampler.max_gates},
                    {"num_samples", cfg.sampler.num_samples},
                    {"n_bins", cfg.sampler.n_bins}};
    j["noise"] = {{"p1", cfg.noise.p1}, {"p2", cfg.noise.p2}, {"epsilon", cfg.noise.epsilon}};
    j["qfi"] = {{"max_depth", cfg.qfi.max_depth},
                {"min_leaf", cfg.qfi.min_leaf},
                {"grid_points", cfg.qfi.grid_points},
                {"n_knots", cfg.qfi.n_knots},
                {"ridge_lambda", cfg.qfi.ridge_lambda}};
    j["evolve"] = {{"pop_size", cfg.evolve.pop_size},
                   {"generations", cfg.evolve.generations},
                   {"max_gates", cfg.evolve.max_gates},
                   {"angle_sigma", cfg.evolve.angle_sigma}};
    j["compare"] = {{"seeds", cfg.compare_seeds}};
    return j.dump(2);
}

std::string sample_summary_to_json(const SampleSummary& summary) {
    nlohmann::json j;
    j["n"] = summary.n_qubits;
    j["num_samples"] = summary.num_samples;
    j["pearson_gates"] = summary.pearson_gates;
    j["pearson_depth"] = summary.pearson_depth;
    j["frac_f_lt_0.5"] = summary.frac_below_half;
    j["frac_f_ge_0.99"] = summary.frac_above_099;
    return j.dump(2);
}

}  // namespace qfi
