#pragma once

#include <optional>
#include <vector>

#include "qfi/curve.hpp"
#include "qfi/noise.hpp"

namespace qfi {

enum class ObjectiveMode { Fidelity, Qfi };

// Scoring rule for the search. Qfi mode scores an individual by the
// smoothed-curve lookup at its ideal fidelity, normalized by the curve
// maximum so scores stay in [0,1].
struct Objective {
    ObjectiveMode mode = ObjectiveMode::Fidelity;
    std::optional<QfiCurve> curve;  // required in Qfi mode
};

struct EvoConfig {
    int n_qubits = 4;
    int pop_size = 60;
    int generations = 80;
    double elite_fraction = 0.4;
    int max_gates = kDefaultMaxGates;
    NoiseModel noise;
    double angle_sigma = 0.1;
    std::uint64_t seed = 0;
};

struct Metrics {
    double fidelity = 0.0;
    double sv = 0.0;
    double robustness = 0.0;
    int depth = 0;
    int gate_count = 0;
};

struct Individual {
    Circuit circuit;
    Metrics metrics;
    double score = 0.0;
    double score_raw = 0.0;
};

struct GenerationStats {
    int generation = 0;
    double best_score = 0.0;
    double mean_fid = 0.0;
    double median_fid = 0.0;
    double iqr_fid = 0.0;
    double mean_sv = 0.0;
    double mean_rob = 0.0;
    double mean_depth = 0.0;
    double mean_gates = 0.0;
};

struct EvolveResult {
    Individual best;
    std::vector<GenerationStats> history;       // one entry per generation
    std::vector<Individual> all_samples;        // every evaluation, in order
    std::vector<Individual> final_population;   // re-evaluated and ranked
};

std::vector<Circuit> init_population(const EvoConfig& cfg);

Individual evaluate(const Circuit& c, const EvoConfig& cfg, const Objective& objective);

// Ranking predicate: score descending, with exact score ties broken toward
// larger depth, then larger gate count. Use with a stable sort so fully
// tied individuals keep their slot order.
bool ranks_before(const Individual& a, const Individual& b);

// One mutation drawn uniformly from the applicable operators: perturb one
// rotation angle, insert a fresh gate, or delete a gate.
Circuit mutate(const Circuit& parent, const EvoConfig& cfg, SplitRng& rng);

// Elitist search: evaluate, keep the top ceil(elite_fraction * pop_size),
// refill by mutating uniformly chosen elites, iterate, then re-evaluate the
// final population. Deterministic for a given config and objective
// regardless of the evaluation thread count.
EvolveResult evolve(const EvoConfig& cfg, const Objective& objective, int threads = 1);

// Linear-interpolation quantile of an unsorted sample (q in [0,1]).
double quantile(std::vector<double> values, double q);

GenerationStats population_stats(int generation, const std::vector<Individual>& population);

}  // namespace qfi
