#include "qfi/sampling.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qfi/parallel.hpp"
#include "qfi/state.hpp"

namespace qfi {

namespace {

constexpr GateKind kAllKinds[kNumGateKinds] = {
    GateKind::I,  GateKind::X,   GateKind::Y,  GateKind::Z,     GateKind::H,
    GateKind::S,  GateKind::Sdg, GateKind::T,  GateKind::Tdg,   GateKind::Rx,
    GateKind::Ry, GateKind::Rz,  GateKind::Phase, GateKind::Cx, GateKind::Cz,
    GateKind::Cy,
};

void validate_config(const SamplerConfig& cfg) {
    if (cfg.n_qubits < 2 || cfg.n_qubits > kDefaultPureQubitCap)
        throw std::invalid_argument("sampler n_qubits out of range");
    if (cfg.max_gates < 1) throw std::invalid_argument("max_gates must be positive");
    if (cfg.num_samples < 0) throw std::invalid_argument("num_samples must be non-negative");
}

}  // namespace

Gate random_gate(int n_qubits, SplitRng& rng) {
    const GateKind kind = kAllKinds[rng.next_below(kNumGateKinds)];
    if (gate_arity(kind) == 2) {
        const int a = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n_qubits)));
        int b = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n_qubits - 1)));
        if (b >= a) ++b;
        return Gate::two(kind, a, b);
    }
    const int q = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n_qubits)));
    const double angle = gate_param_count(kind) == 1 ? rng.next_angle() : 0.0;
    return Gate::one(kind, q, angle);
}

Circuit random_circuit(const SamplerConfig& cfg, SplitRng& rng) {
    const int count = 1 + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(cfg.max_gates)));
    Circuit c;
    c.n_qubits = cfg.n_qubits;
    c.gates.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) c.gates.push_back(random_gate(cfg.n_qubits, rng));
    return c;
}

std::vector<SampleRecord> sample_ensemble(const SamplerConfig& cfg, int threads,
                                          bool progress) {
    validate_config(cfg);
    std::vector<SampleRecord> records(static_cast<std::size_t>(cfg.num_samples));
    if (cfg.num_samples == 0) return records;
    const TargetState tau = target_state(cfg.n_qubits);
    std::atomic<std::int64_t> done{0};
    parallel_for(cfg.num_samples, threads, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i) {
            SplitRng rng = SplitRng::derive(cfg.seed, kStreamSample, static_cast<std::uint64_t>(i));
            const Circuit c = random_circuit(cfg, rng);
            const StateVector psi = simulate(c);
            SampleRecord& r = records[static_cast<std::size_t>(i)];
            r.fidelity = fidelity_pure(psi, tau);
            r.gate_count = static_cast<std::int32_t>(c.gates.size());
            r.depth = static_cast<std::int32_t>(circuit_depth(c));
            if (progress) {
                const std::int64_t n = done.fetch_add(1, std::memory_order_relaxed) + 1;
                if (n % 100000 == 0)
                    std::fprintf(stderr, "sampled %lld/%lld circuits\n",
                                 static_cast<long long>(n),
                                 static_cast<long long>(cfg.num_samples));
            }
        }
    });
    return records;
}

BinnedDistribution bin_samples(std::span<const SampleRecord> records, int n_bins) {
    if (records.empty()) throw std::invalid_argument("bin_samples needs at least one record");
    if (n_bins < 1) throw std::invalid_argument("n_bins must be positive");
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n_bins), 0);
    std::vector<double> sums(static_cast<std::size_t>(n_bins), 0.0);
    for (const SampleRecord& r : records) {
        int idx = static_cast<int>(r.fidelity * n_bins);
        if (idx >= n_bins) idx = n_bins - 1;  // closes the last bin at 1.0
        if (idx < 0) idx = 0;
        counts[static_cast<std::size_t>(idx)] += 1;
        sums[static_cast<std::size_t>(idx)] += r.fidelity;
    }
    BinnedDistribution out;
    out.n_bins = n_bins;
    out.total = static_cast<std::int64_t>(records.size());
    out.bins.resize(static_cast<std::size_t>(n_bins));
    for (int b = 0; b < n_bins; ++b) {
        FidelityBin& bin = out.bins[static_cast<std::size_t>(b)];
        bin.lo = static_cast<double>(b) / n_bins;
        bin.hi = static_cast<double>(b + 1) / n_bins;
        bin.count = counts[static_cast<std::size_t>(b)];
        bin.mean_fidelity = bin.count > 0 ? sums[static_cast<std::size_t>(b)] / static_cast<double>(bin.count)
                                          : 0.5 * (bin.lo + bin.hi);
        bin.probability = static_cast<double>(bin.count) / static_cast<double>(out.total);
    }
    return out;
}

BinnedDistribution merge_bins(const BinnedDistribution& a, const BinnedDistribution& b) {
    if (a.n_bins != b.n_bins) throw std::invalid_argument("bin partitions differ");
    BinnedDistribution out = a;
    out.total = a.total + b.total;
    for (int i = 0; i < a.n_bins; ++i) {
        FidelityBin& bin = out.bins[static_cast<std::size_t>(i)];
        const FidelityBin& other = b.bins[static_cast<std::size_t>(i)];
        const std::int64_t count = bin.count + other.count;
        if (count > 0) {
            const double sum = (bin.count > 0 ? bin.mean_fidelity * static_cast<double>(bin.count) : 0.0) +
                               (other.count > 0 ? other.mean_fidelity * static_cast<double>(other.count) : 0.0);
            bin.mean_fidelity = sum / static_cast<double>(count);
        }
        bin.count = count;
        bin.probability = static_cast<double>(count) / static_cast<double>(out.total);
    }
    return out;
}

double pearson(std::span<const SampleRecord> records, SampleField field) {
    if (records.size() < 2) throw std::domain_error("pearson needs at least two records");
    const double n = static_cast<double>(records.size());
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (const SampleRecord& r : records) {
        const double x = r.fidelity;
        const double y = field == SampleField::GateCount ? static_cast<double>(r.gate_count)
                                                         : static_cast<double>(r.depth);
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    if (vx <= 0.0 || vy <= 0.0) throw std::domain_error("pearson undefined for zero variance");
    return (sxy - sx * sy / n) / std::sqrt(vx * vy);
}

}  // namespace qfi
