#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfi/curve.hpp"
#include "qfi/evolution.hpp"
#include "qfi/sampling.hpp"

namespace qfi {

// Configuration problems (bad schema, unknown fields, missing inputs) as
// opposed to runtime failures; the CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parse failures carry the 1-based line number in the message.
struct CsvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// samples CSV: header fidelity,gate_count,depth; fidelity with 9 decimals.
std::string samples_to_csv(std::span<const SampleRecord> records);
std::vector<SampleRecord> samples_from_csv(const std::string& text);

// bins CSV: header bin_lo,bin_hi,count,mean_fidelity,probability.
std::string bins_to_csv(const BinnedDistribution& bins);
BinnedDistribution bins_from_csv(const std::string& text);

// qfi CSV: header fidelity,p_hat,qfi_raw,qfi_smooth, one row per grid point.
std::string qfi_curve_to_csv(const QfiCurve& curve);
struct QfiCsvRow {
    double fidelity = 0.0;
    double p_hat = 0.0;
    double qfi_raw = 0.0;
    double qfi_smooth = 0.0;
};
std::vector<QfiCsvRow> qfi_rows_from_csv(const std::string& text);

// history CSV: one row per generation.
std::string history_to_csv(std::span<const GenerationStats> history);
std::vector<GenerationStats> history_from_csv(const std::string& text);

// evolution samples CSV: generation,score,score_raw,fidelity,sv,robustness,depth,gates.
std::string evo_samples_to_csv(std::span<const Individual> samples, int pop_size);
struct EvoSampleRow {
    int generation = 0;
    double score = 0.0;
    double score_raw = 0.0;
    double fidelity = 0.0;
    double sv = 0.0;
    double robustness = 0.0;
    int depth = 0;
    int gates = 0;
};
std::vector<EvoSampleRow> evo_samples_from_csv(const std::string& text);

// comparison CSV: per-run rows for both objectives plus one pooled
// aggregate row per mode (seed column "all").
struct ComparisonRow {
    std::string mode;  // "fidelity" or "qfi"
    std::string seed;  // decimal seed or "all"
    double best_score = 0.0;
    double mean_fid = 0.0;
    double median_fid = 0.0;
    double iqr_fid = 0.0;
    double mean_sv = 0.0;
    double mean_rob = 0.0;
    double mean_depth = 0.0;
    double mean_gates = 0.0;
};
std::string comparison_to_csv(std::span<const ComparisonRow> rows);
std::vector<ComparisonRow> comparison_from_csv(const std::string& text);

// Run configuration document. Unknown fields are rejected, missing fields
// take the defaults below, schema_version must be 1.
struct RunConfig {
    int n_qubits = 4;
    std::uint64_t seed = 1;
    int threads = 1;
    struct SamplerSection {
        int max_gates = kDefaultMaxGates;
        std::int64_t num_samples = 100000;
        int n_bins = 200;
    } sampler;
    NoiseModel noise;
    QfiParams qfi;
    struct EvolveSection {
        int pop_size = 60;
        int generations = 80;
        int max_gates = kDefaultMaxGates;
        double angle_sigma = 0.1;
    } evolve;
    std::vector<std::uint64_t> compare_seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
};

inline constexpr int kRunConfigSchemaVersion = 1;

RunConfig run_config_from_json(const std::string& text);  // throws ConfigError
std::string run_config_to_json(const RunConfig& cfg);

struct SampleSummary {
    int n_qubits = 0;
    std::int64_t num_samples = 0;
    double pearson_gates = 0.0;
    double pearson_depth = 0.0;
    double frac_below_half = 0.0;
    double frac_above_099 = 0.0;
};
std::string sample_summary_to_json(const SampleSummary& summary);

}  // namespace qfi
