#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "qfi/sampling.hpp"
#include "qfi/state.hpp"

using namespace qfi;

namespace {

bool same_records(std::span<const SampleRecord> a, std::span<const SampleRecord> b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].fidelity != b[i].fidelity || a[i].gate_count != b[i].gate_count ||
            a[i].depth != b[i].depth)
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("random_circuit honors the config") {
    SamplerConfig cfg;
    cfg.n_qubits = 3;
    cfg.max_gates = 1;
    SplitRng rng = SplitRng::derive(5, 0);
    const Circuit one = random_circuit(cfg, rng);
    CHECK(one.gates.size() == 1);

    cfg.max_gates = 50;
    for (int rep = 0; rep < 200; ++rep) {
        SplitRng r = SplitRng::derive(5, 1, static_cast<std::uint64_t>(rep));
        const Circuit c = random_circuit(cfg, r);
        CHECK(c.gates.size() >= 1);
        CHECK(c.gates.size() <= 50);
        for (const Gate& g : c.gates) {
            CHECK(g.q0 >= 0);
            CHECK(g.q0 < 3);
            if (g.arity() == 2) {
                CHECK(g.q1 >= 0);
                CHECK(g.q1 < 3);
                CHECK(g.q1 != g.q0);
            }
            if (g.parameterized()) {
                CHECK(g.angle >= 0.0);
                CHECK(g.angle < 2 * M_PI);
            }
        }
    }
}

TEST_CASE("random_circuit is deterministic per stream") {
    SamplerConfig cfg;
    cfg.n_qubits = 4;
    SplitRng a = SplitRng::derive(123, kStreamSample, 9);
    SplitRng b = SplitRng::derive(123, kStreamSample, 9);
    const Circuit ca = random_circuit(cfg, a);
    const Circuit cb = random_circuit(cfg, b);
    REQUIRE(ca.gates.size() == cb.gates.size());
    for (std::size_t i = 0; i < ca.gates.size(); ++i) {
        CHECK(ca.gates[i].kind == cb.gates[i].kind);
        CHECK(ca.gates[i].q0 == cb.gates[i].q0);
        CHECK(ca.gates[i].q1 == cb.gates[i].q1);
        CHECK(ca.gates[i].angle == cb.gates[i].angle);
    }
}

TEST_CASE("mean gate count of uniform {1..50} draws is near 25.5") {
    SamplerConfig cfg;
    cfg.n_qubits = 2;
    cfg.max_gates = 50;
    double total = 0.0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        SplitRng rng = SplitRng::derive(2024, 0, static_cast<std::uint64_t>(i));
        total += static_cast<double>(random_circuit(cfg, rng).gates.size());
    }
    CHECK(total / draws == doctest::Approx(25.5).epsilon(0.04));  // 25.5 +- ~1
}

TEST_CASE("all sixteen gate kinds appear in a large draw") {
    SamplerConfig cfg;
    cfg.n_qubits = 3;
    std::set<int> seen;
    for (int i = 0; i < 300; ++i) {
        SplitRng rng = SplitRng::derive(31, 0, static_cast<std::uint64_t>(i));
        for (const Gate& g : random_circuit(cfg, rng).gates)
            seen.insert(static_cast<int>(g.kind));
    }
    CHECK(seen.size() == static_cast<std::size_t>(kNumGateKinds));
}

TEST_CASE("sample_ensemble basics") {
    SamplerConfig cfg;
    cfg.n_qubits = 2;
    cfg.num_samples = 0;
    CHECK(sample_ensemble(cfg).empty());

    cfg.num_samples = 500;
    cfg.seed = 9;
    const auto once = sample_ensemble(cfg);
    const auto twice = sample_ensemble(cfg);
    REQUIRE(once.size() == 500);
    CHECK(same_records(once, twice));
    for (const SampleRecord& r : once) {
        CHECK(r.fidelity >= 0.0);
        CHECK(r.fidelity <= 1.0);
        CHECK(r.gate_count >= 1);
        CHECK(r.gate_count <= 50);
        CHECK(r.depth >= 1);
        CHECK(r.depth <= r.gate_count);
    }
}

TEST_CASE("thread count does not change the ensemble") {
    SamplerConfig cfg;
    cfg.n_qubits = 3;
    cfg.num_samples = 4000;
    cfg.seed = 77;
    const auto serial = sample_ensemble(cfg, 1);
    const auto wide = sample_ensemble(cfg, 8);
    CHECK(same_records(serial, wide));
}

TEST_CASE("ensemble records match per-index recomputation") {
    SamplerConfig cfg;
    cfg.n_qubits = 3;
    cfg.num_samples = 50;
    cfg.seed = 4242;
    const auto records = sample_ensemble(cfg, 2);
    const TargetState tau = target_state(3);
    for (std::int64_t i = 0; i < cfg.num_samples; i += 7) {
        SplitRng rng = SplitRng::derive(cfg.seed, kStreamSample, static_cast<std::uint64_t>(i));
        const Circuit c = random_circuit(cfg, rng);
        CHECK(records[static_cast<std::size_t>(i)].fidelity ==
              fidelity_pure(simulate(c), tau));
        CHECK(records[static_cast<std::size_t>(i)].gate_count ==
              static_cast<std::int32_t>(c.gates.size()));
    }
}

TEST_CASE("n=2 ensemble has mass in both extreme deciles") {
    SamplerConfig cfg;
    cfg.n_qubits = 2;
    cfg.num_samples = 100000;
    cfg.seed = 42;
    const auto records = sample_ensemble(cfg, 2);
    std::int64_t lo = 0, hi = 0;
    for (const SampleRecord& r : records) {
        if (r.fidelity < 0.1) ++lo;
        if (r.fidelity >= 0.9) ++hi;
    }
    CHECK(lo >= 100);  // at least 0.1% in each extreme decile
    CHECK(hi >= 100);
    // frozen regression values for this seed
    CHECK(lo == 26921);
    CHECK(hi == 451);
}

TEST_CASE("n=2 rarity ordering at one million samples") {
    SamplerConfig cfg;
    cfg.n_qubits = 2;
    cfg.num_samples = 1000000;
    cfg.seed = 3;
    const auto records = sample_ensemble(cfg, 2);
    std::int64_t functional = 0, below_half = 0;
    for (const SampleRecord& r : records) {
        if (r.fidelity >= 0.99) ++functional;
        if (r.fidelity < 0.5) ++below_half;
    }
    CHECK(functional > 0);
    CHECK(functional < below_half);
}

TEST_CASE("bin_samples basics") {
    std::vector<SampleRecord> one = {{1.0, 3, 2}};
    const BinnedDistribution top = bin_samples(one, 200);
    CHECK(top.bins.back().count == 1);
    CHECK(top.bins.back().probability == 1.0);
    CHECK(top.total == 1);

    std::vector<SampleRecord> pair = {{0.1, 1, 1}, {0.9, 1, 1}};
    const BinnedDistribution two = bin_samples(pair, 2);
    CHECK(two.bins[0].count == 1);
    CHECK(two.bins[1].count == 1);
    CHECK(two.bins[0].probability == 0.5);
    CHECK(two.bins[0].mean_fidelity == doctest::Approx(0.1));
    CHECK(two.bins[1].mean_fidelity == doctest::Approx(0.9));

    CHECK_THROWS_AS(bin_samples(std::span<const SampleRecord>{}, 200), std::invalid_argument);
}

TEST_CASE("bin invariants on a real ensemble") {
    SamplerConfig cfg;
    cfg.n_qubits = 3;
    cfg.num_samples = 20000;
    cfg.seed = 8;
    const auto records = sample_ensemble(cfg, 2);
    const BinnedDistribution bins = bin_samples(records, 200);
    REQUIRE(bins.bins.size() == 200);
    std::int64_t total = 0;
    double prob_sum = 0.0;
    for (int b = 0; b < 200; ++b) {
        const FidelityBin& bin = bins.bins[static_cast<std::size_t>(b)];
        CHECK(bin.lo == doctest::Approx(b / 200.0).epsilon(1e-12));
        CHECK(bin.hi == doctest::Approx((b + 1) / 200.0).epsilon(1e-12));
        if (bin.count > 0) {
            CHECK(bin.mean_fidelity >= bin.lo);
            CHECK(bin.mean_fidelity <= bin.hi + 1e-12);
        }
        total += bin.count;
        prob_sum += bin.probability;
    }
    CHECK(total == bins.total);
    CHECK(prob_sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("uniform synthetic fidelities bin almost evenly") {
    std::vector<SampleRecord> records;
    const int n = 5000;
    for (int i = 0; i <= n; ++i)
        records.push_back({static_cast<double>(i) / n, 1, 1});
    const BinnedDistribution bins = bin_samples(records, 50);
    for (const FidelityBin& b : bins.bins) {
        CHECK(std::abs(b.probability - 1.0 / 50) < 2.0 / 50);
    }
}

TEST_CASE("partial bins merge to the whole") {
    SamplerConfig cfg;
    cfg.n_qubits = 2;
    cfg.num_samples = 9000;
    cfg.seed = 55;
    const auto records = sample_ensemble(cfg, 2);
    const std::span<const SampleRecord> all(records);
    const auto a = bin_samples(all.subspan(0, 3000), 200);
    const auto b = bin_samples(all.subspan(3000, 3500), 200);
    const auto c = bin_samples(all.subspan(6500), 200);

    const BinnedDistribution whole = bin_samples(all, 200);
    const BinnedDistribution left = merge_bins(merge_bins(a, b), c);
    const BinnedDistribution right = merge_bins(a, merge_bins(b, c));
    const BinnedDistribution swapped = merge_bins(merge_bins(b, a), c);

    REQUIRE(left.total == whole.total);
    for (int i = 0; i < 200; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        CHECK(left.bins[idx].count == whole.bins[idx].count);
        CHECK(right.bins[idx].count == whole.bins[idx].count);
        CHECK(swapped.bins[idx].count == whole.bins[idx].count);
        if (whole.bins[idx].count > 0) {
            CHECK(left.bins[idx].mean_fidelity ==
                  doctest::Approx(whole.bins[idx].mean_fidelity).epsilon(1e-12));
            CHECK(right.bins[idx].mean_fidelity ==
                  doctest::Approx(left.bins[idx].mean_fidelity).epsilon(1e-12));
        }
        CHECK(left.bins[idx].probability ==
              doctest::Approx(whole.bins[idx].probability).epsilon(1e-12));
    }
}

TEST_CASE("pearson on exact linear data") {
    std::vector<SampleRecord> up, down;
    for (int i = 0; i < 100; ++i) {
        const double x = i / 99.0;
        up.push_back({x, static_cast<std::int32_t>(2 * i), 1});
        down.push_back({x, static_cast<std::int32_t>(-i + 200), 1});
    }
    CHECK(pearson(up, SampleField::GateCount) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pearson(down, SampleField::GateCount) == doctest::Approx(-1.0).epsilon(1e-12));

    std::vector<SampleRecord> flat = {{0.1, 5, 5}, {0.7, 5, 5}};
    CHECK_THROWS_AS(pearson(flat, SampleField::GateCount), std::domain_error);
}

TEST_CASE("fidelity correlates negatively with gates and depth") {
    for (int n : {3, 4}) {
        SamplerConfig cfg;
        cfg.n_qubits = n;
        cfg.num_samples = 100000;
        cfg.seed = 1;
        const auto records = sample_ensemble(cfg, 2);
        CHECK(pearson(records, SampleField::GateCount) < 0.0);
        CHECK(pearson(records, SampleField::Depth) < 0.0);
    }
}
