#include "qfi/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qfi/parallel.hpp"
#include "qfi/sampling.hpp"

namespace qfi {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void validate_config(const EvoConfig& cfg, const Objective& objective) {
    if (cfg.n_qubits < 2 || cfg.n_qubits > kDefaultDensityQubitCap)
        throw std::invalid_argument("evolution n_qubits out of range");
    if (cfg.pop_size < 2) throw std::invalid_argument("pop_size must be at least 2");
    if (cfg.generations < 1) throw std::invalid_argument("generations must be at least 1");
    if (cfg.max_gates < 1) throw std::invalid_argument("max_gates must be positive");
    if (cfg.elite_fraction <= 0.0 || cfg.elite_fraction > 1.0)
        throw std::invalid_argument("elite_fraction outside (0,1]");
    if (objective.mode == ObjectiveMode::Qfi) {
        if (!objective.curve) throw std::invalid_argument("Qfi objective needs a curve");
        if (objective.curve->n_qubits != cfg.n_qubits)
            throw std::invalid_argument("curve n_qubits does not match the run");
    }
}

SamplerConfig sampler_view(const EvoConfig& cfg) {
    SamplerConfig sc;
    sc.n_qubits = cfg.n_qubits;
    sc.max_gates = cfg.max_gates;
    sc.seed = cfg.seed;
    return sc;
}

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
}

enum class MutateOp { PerturbAngle, InsertGate, DeleteGate };

std::vector<Individual> evaluate_all(const std::vector<Circuit>& circuits,
                                     const EvoConfig& cfg, const Objective& objective,
                                     int threads) {
    std::vector<Individual> out(circuits.size());
    parallel_for(static_cast<std::int64_t>(circuits.size()), threads,
                 [&](std::int64_t begin, std::int64_t end) {
                     for (std::int64_t i = begin; i < end; ++i)
                         out[static_cast<std::size_t>(i)] =
                             evaluate(circuits[static_cast<std::size_t>(i)], cfg, objective);
                 });
    return out;
}

}  // namespace

std::vector<Circuit> init_population(const EvoConfig& cfg) {
    const SamplerConfig sc = sampler_view(cfg);
    std::vector<Circuit> population;
    population.reserve(static_cast<std::size_t>(cfg.pop_size));
    for (int i = 0; i < cfg.pop_size; ++i) {
        SplitRng rng = SplitRng::derive(cfg.seed, kStreamInit, static_cast<std::uint64_t>(i));
        population.push_back(random_circuit(sc, rng));
    }
    return population;
}

Individual evaluate(const Circuit& c, const EvoConfig& cfg, const Objective& objective) {
    const TargetState tau = target_state(c.n_qubits);
    const StateVector psi = simulate(c);

    Individual ind;
    ind.circuit = c;
    ind.metrics.fidelity = fidelity_pure(psi, tau);
    ind.metrics.sv = avg_entropy(psi);
    ind.metrics.robustness = robustness(c, cfg.noise, tau);
    ind.metrics.depth = circuit_depth(c);
    ind.metrics.gate_count = static_cast<int>(c.gates.size());

    if (objective.mode == ObjectiveMode::Fidelity) {
        ind.score_raw = ind.metrics.fidelity;
        ind.score = ind.metrics.fidelity;
    } else {
        const QfiCurve& curve = *objective.curve;
        ind.score_raw = curve.lookup_smooth(ind.metrics.fidelity);
        const double top = curve.smooth_max();
        ind.score = top > 0.0 ? ind.score_raw / top : 0.0;
        ind.score = std::min(1.0, std::max(0.0, ind.score));
    }
    return ind;
}

bool ranks_before(const Individual& a, const Individual& b) {
    // Ties keep the structurally richer individual. Fidelity plateaus (the
    // |0..0> overlap atom at 0.5) tie exactly in floating point, and a
    // parsimony tie-break strips circuits down to single gates there,
    // freezing the search; favoring depth lets neutral structure accumulate
    // until a rotation can lift the score off the plateau.
    if (a.score != b.score) return a.score > b.score;
    if (a.metrics.depth != b.metrics.depth) return a.metrics.depth > b.metrics.depth;
    return a.metrics.gate_count > b.metrics.gate_count;
}

Circuit mutate(const Circuit& parent, const EvoConfig& cfg, SplitRng& rng) {
    std::vector<int> param_gates;
    for (std::size_t i = 0; i < parent.gates.size(); ++i)
        if (parent.gates[i].parameterized()) param_gates.push_back(static_cast<int>(i));

    MutateOp ops[3];
    int n_ops = 0;
    if (!param_gates.empty()) ops[n_ops++] = MutateOp::PerturbAngle;
    if (static_cast<int>(parent.gates.size()) < cfg.max_gates) ops[n_ops++] = MutateOp::InsertGate;
    if (parent.gates.size() > 1) ops[n_ops++] = MutateOp::DeleteGate;
    if (n_ops == 0) return parent;  // nothing applicable; unreachable with max_gates > 1

    Circuit child = parent;
    switch (ops[rng.next_below(static_cast<std::uint32_t>(n_ops))]) {
        case MutateOp::PerturbAngle: {
            const int pick = param_gates[rng.next_below(static_cast<std::uint32_t>(param_gates.size()))];
            Gate& g = child.gates[static_cast<std::size_t>(pick)];
            g.angle = wrap_angle(g.angle + rng.next_gaussian(cfg.angle_sigma));
            break;
        }
        case MutateOp::InsertGate: {
            const Gate fresh = random_gate(cfg.n_qubits, rng);
            const std::size_t pos = rng.next_below(static_cast<std::uint32_t>(child.gates.size() + 1));
            child.gates.insert(child.gates.begin() + static_cast<std::ptrdiff_t>(pos), fresh);
            break;
        }
        case MutateOp::DeleteGate: {
            const std::size_t pos = rng.next_below(static_cast<std::uint32_t>(child.gates.size()));
            child.gates.erase(child.gates.begin() + static_cast<std::ptrdiff_t>(pos));
            break;
        }
    }
    return child;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("quantile of empty sample");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

GenerationStats population_stats(int generation, const std::vector<Individual>& population) {
    GenerationStats s;
    s.generation = generation;
    std::vector<double> fids;
    fids.reserve(population.size());
    for (const Individual& ind : population) {
        s.best_score = std::max(s.best_score, ind.score);
        s.mean_fid += ind.metrics.fidelity;
        s.mean_sv += ind.metrics.sv;
        s.mean_rob += ind.metrics.robustness;
        s.mean_depth += ind.metrics.depth;
        s.mean_gates += ind.metrics.gate_count;
        fids.push_back(ind.metrics.fidelity);
    }
    const double n = static_cast<double>(population.size());
    s.mean_fid /= n;
    s.mean_sv /= n;
    s.mean_rob /= n;
    s.mean_depth /= n;
    s.mean_gates /= n;
    s.median_fid = quantile(fids, 0.5);
    s.iqr_fid = quantile(fids, 0.75) - quantile(fids, 0.25);
    return s;
}

EvolveResult evolve(const EvoConfig& cfg, const Objective& objective, int threads) {
    validate_config(cfg, objective);
    const int elite_count = std::min(
        cfg.pop_size, static_cast<int>(std::ceil(cfg.elite_fraction * cfg.pop_size)));

    EvolveResult result;
    result.all_samples.reserve(static_cast<std::size_t>(cfg.pop_size) *
                               (static_cast<std::size_t>(cfg.generations) + 1));

    std::vector<Circuit> population = init_population(cfg);
    for (int gen = 0; gen < cfg.generations; ++gen) {
        std::vector<Individual> scored = evaluate_all(population, cfg, objective, threads);
        result.all_samples.insert(result.all_samples.end(), scored.begin(), scored.end());
        std::stable_sort(scored.begin(), scored.end(), ranks_before);
        result.history.push_back(population_stats(gen, scored));

        std::vector<Circuit> next;
        next.reserve(static_cast<std::size_t>(cfg.pop_size));
        for (int i = 0; i < elite_count; ++i)
            next.push_back(scored[static_cast<std::size_t>(i)].circuit);
        for (int slot = elite_count; slot < cfg.pop_size; ++slot) {
            SplitRng rng = SplitRng::derive(cfg.seed, kStreamMutate,
                                            static_cast<std::uint64_t>(gen),
                                            static_cast<std::uint64_t>(slot));
            const Circuit& parent =
                scored[rng.next_below(static_cast<std::uint32_t>(elite_count))].circuit;
            next.push_back(mutate(parent, cfg, rng));
        }
        population = std::move(next);
    }

    std::vector<Individual> final_pop = evaluate_all(population, cfg, objective, threads);
    result.all_samples.insert(result.all_samples.end(), final_pop.begin(), final_pop.end());
    std::stable_sort(final_pop.begin(), final_pop.end(), ranks_before);
    result.best = final_pop.front();
    result.final_population = std::move(final_pop);
    return result;
}

}  // namespace qfi
