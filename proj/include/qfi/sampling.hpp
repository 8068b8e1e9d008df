#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qfi/circuit.hpp"
#include "qfi/rng.hpp"

namespace qfi {

struct SamplerConfig {
    int n_qubits = 2;
    int max_gates = kDefaultMaxGates;
    std::int64_t num_samples = 0;
    std::uint64_t seed = 0;
};

struct SampleRecord {
    double fidelity = 0.0;
    std::int32_t gate_count = 0;
    std::int32_t depth = 0;
};

// One random gate: kind uniform over the 16-gate set, qubits uniform
// without replacement, angle uniform on [0, 2*pi) where the kind takes one.
Gate random_gate(int n_qubits, SplitRng& rng);

// One random circuit of random_gate draws, gate count uniform on
// {1..max_gates}.
Circuit random_circuit(const SamplerConfig& cfg, SplitRng& rng);

// num_samples records in index order. Record i is generated from the rng
// stream derive(seed, kStreamSample, i), so the result is a pure function
// of cfg no matter how many threads run. When progress is set, a count is
// written to stderr every 1e5 records.
std::vector<SampleRecord> sample_ensemble(const SamplerConfig& cfg, int threads = 1,
                                          bool progress = false);

struct FidelityBin {
    double lo = 0.0;
    double hi = 0.0;
    std::int64_t count = 0;
    double mean_fidelity = 0.0;  // bin midpoint when empty
    double probability = 0.0;
};

struct BinnedDistribution {
    int n_bins = 0;
    std::int64_t total = 0;
    std::vector<FidelityBin> bins;
};

// Equal-width partition of [0,1]; fidelity 1.0 lands in the last bin.
// Throws std::invalid_argument on empty input.
BinnedDistribution bin_samples(std::span<const SampleRecord> records, int n_bins = 200);

// Combines two partial distributions over the same partition. Counts add
// exactly; means merge by count weighting.
BinnedDistribution merge_bins(const BinnedDistribution& a, const BinnedDistribution& b);

enum class SampleField { GateCount, Depth };

// Sample Pearson correlation between fidelity and the chosen field.
// Throws std::domain_error when either variable has zero variance.
double pearson(std::span<const SampleRecord> records, SampleField field);

}  // namespace qfi
