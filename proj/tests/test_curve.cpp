#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qfi/curve.hpp"
#include "qfi/io.hpp"

using namespace qfi;

namespace {

// 900 samples in a low bin, 100 in a high one: the fitted step function
// should recover probabilities 0.9 and 0.1 on the two sides.
BinnedDistribution two_level_bins() {
    BinnedDistribution bins;
    bins.n_bins = 2;
    bins.total = 1000;
    bins.bins = {{0.0, 0.5, 900, 0.25, 0.9}, {0.5, 1.0, 100, 0.75, 0.1}};
    return bins;
}

std::vector<SampleRecord> records_with_tail(std::int64_t below, std::int64_t above, double t) {
    std::vector<SampleRecord> records;
    for (std::int64_t i = 0; i < below; ++i)
        records.push_back({t * static_cast<double>(i) / static_cast<double>(below + 1), 1, 1});
    for (std::int64_t i = 0; i < above; ++i) records.push_back({t + (1.0 - t) * 0.5, 1, 1});
    return records;
}

}  // namespace

TEST_CASE("information_bits on exact powers of two") {
    for (int k = 0; k <= 20; ++k) {
        const double p = std::ldexp(1.0, -k);
        CHECK(std::abs(information_bits(p) - static_cast<double>(k)) < 1e-12);
    }
    CHECK_THROWS_AS(information_bits(0.0), std::invalid_argument);
    CHECK_THROWS_AS(information_bits(-0.5), std::invalid_argument);
}

TEST_CASE("bit values quoted for rare events") {
    CHECK(information_bits(1e-6) == doctest::Approx(19.93).epsilon(0.0006));
    CHECK(information_bits(1e-7) == doctest::Approx(23.25).epsilon(0.0005));
    CHECK(information_bits(1e-7) - information_bits(1e-6) ==
          doctest::Approx(3.32).epsilon(0.001));
}

TEST_CASE("qfi_point floors the predicted probability") {
    const std::vector<double> x = {0.2, 0.8};
    const std::vector<double> y = {1.0, std::ldexp(1.0, -10)};
    const RegressionTree tree = RegressionTree::fit(x, y, 4, 1);
    CHECK(qfi_point(tree, 0.1, 1e-12) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(qfi_point(tree, 0.9, 1e-12) == doctest::Approx(10.0).epsilon(1e-12));
    // the floor caps the bit value when the prediction dives below it
    CHECK(qfi_point(tree, 0.9, 0.25) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(qfi_point(tree, 1.5, 1e-12), std::invalid_argument);
}

TEST_CASE("qfi_point is non-increasing in predicted probability") {
    double prev = 1e9;
    for (double p = 1e-6; p <= 1.0; p *= 2.0) {
        const double bits = information_bits(p);
        CHECK(bits <= prev);
        prev = bits;
    }
}

TEST_CASE("qfi_threshold tail accounting") {
    const auto records = records_with_tail(999, 1, 0.9);
    const QfiThresholdResult at_zero = qfi_threshold(records, 0.0);
    CHECK(at_zero.tail_probability == 1.0);
    CHECK(at_zero.information_bits == 0.0);

    const QfiThresholdResult at_t = qfi_threshold(records, 0.9);
    CHECK(at_t.tail_probability == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(at_t.information_bits == doctest::Approx(-std::log2(1e-3)).epsilon(1e-12));

    // nothing above the threshold: the 1/(N+1) floor keeps bits finite
    const QfiThresholdResult beyond = qfi_threshold(records, 0.999);
    CHECK(beyond.tail_probability == doctest::Approx(1.0 / 1001.0).epsilon(1e-12));
    CHECK(std::isfinite(beyond.information_bits));
}

TEST_CASE("qfi_threshold is monotone non-decreasing in the threshold") {
    SplitRng rng = SplitRng::derive(17, 0);
    std::vector<SampleRecord> records;
    for (int i = 0; i < 5000; ++i) records.push_back({rng.next_double(), 1, 1});
    double prev = -1.0;
    for (double t = 0.0; t <= 1.0; t += 0.05) {
        const double bits = qfi_threshold(records, t).information_bits;
        CHECK(bits >= prev - 1e-12);
        prev = bits;
    }
}

TEST_CASE("two-level distribution is recovered by the curve") {
    QfiParams params;
    params.min_leaf = 1;
    const QfiCurve curve = build_qfi_curve(two_level_bins(), params, 2);
    const double low_bits = -std::log2(0.9);
    const double high_bits = -std::log2(0.1);
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        if (curve.grid[i] < 0.45)
            CHECK(curve.qfi_raw[i] == doctest::Approx(low_bits).epsilon(1e-12));
        if (curve.grid[i] > 0.55)
            CHECK(curve.qfi_raw[i] == doctest::Approx(high_bits).epsilon(1e-12));
    }
    CHECK(curve.p_floor == doctest::Approx(1.0 / 1001.0).epsilon(1e-12));
}

TEST_CASE("curve invariants hold") {
    QfiParams params;
    params.min_leaf = 1;
    const QfiCurve curve = build_qfi_curve(two_level_bins(), params, 2);
    REQUIRE(curve.grid.size() == 1001);
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        CHECK(curve.qfi_raw[i] == -std::log2(curve.p_hat[i]));  // exact identity
        CHECK(std::isfinite(curve.qfi_raw[i]));
        CHECK(std::isfinite(curve.qfi_smooth[i]));
        CHECK(curve.qfi_raw[i] >= 0.0);
        CHECK(curve.p_hat[i] >= curve.p_floor);
    }
    CHECK(curve.grid.front() == 0.0);
    CHECK(curve.grid.back() == 1.0);
}

TEST_CASE("curve building is deterministic bit for bit") {
    QfiParams params;
    params.min_leaf = 1;
    const QfiCurve a = build_qfi_curve(two_level_bins(), params, 2);
    const QfiCurve b = build_qfi_curve(two_level_bins(), params, 2);
    for (std::size_t i = 0; i < a.grid.size(); ++i) {
        CHECK(a.p_hat[i] == b.p_hat[i]);
        CHECK(a.qfi_raw[i] == b.qfi_raw[i]);
        CHECK(a.qfi_smooth[i] == b.qfi_smooth[i]);
    }
}

TEST_CASE("smooth lookup interpolates linearly") {
    QfiParams params;
    params.min_leaf = 1;
    QfiCurve curve = build_qfi_curve(two_level_bins(), params, 2);
    const double f = 0.12345;
    const std::size_t i = static_cast<std::size_t>(f * 1000);
    const double frac = f * 1000 - static_cast<double>(i);
    const double expect = curve.qfi_smooth[i] * (1 - frac) + curve.qfi_smooth[i + 1] * frac;
    CHECK(curve.lookup_smooth(f) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(curve.lookup_smooth(-1.0) == curve.qfi_smooth.front());
    CHECK(curve.lookup_smooth(2.0) == curve.qfi_smooth.back());
    CHECK(curve.smooth_max() >= curve.lookup_smooth(0.5));
}

TEST_CASE("rarity structure where million-sample tails are resolved") {
    // At 2 and 3 qubits the high-fidelity tail is dense enough for the
    // empirical curve to expose the two headline behaviors: information
    // increases with qubit count, and exactly reaching the target is less
    // informative than almost reaching it (perfect-overlap circuits form an
    // atom, near-perfect ones do not).
    QfiCurve curves[2];
    for (int i = 0; i < 2; ++i) {
        SamplerConfig cfg;
        cfg.n_qubits = 2 + i;
        cfg.num_samples = 1000000;
        cfg.seed = 1;
        const auto records = sample_ensemble(cfg, 2);
        curves[i] = build_qfi_curve(bin_samples(records, 200), QfiParams{}, cfg.n_qubits);
    }
    const QfiCurve& n2 = curves[0];
    const QfiCurve& n3 = curves[1];

    for (std::size_t i = 0; i < n2.grid.size(); ++i) {
        if (n2.grid[i] < 0.9) continue;
        CHECK(n3.qfi_smooth[i] >= n2.qfi_smooth[i]);
    }

    double max_below_one = -1e300;
    for (std::size_t i = 0; i < n2.grid.size(); ++i)
        if (n2.grid[i] >= 0.9 && n2.grid[i] < 1.0)
            max_below_one = std::max(max_below_one, n2.qfi_smooth[i]);
    CHECK(max_below_one > n2.qfi_smooth.back());
    CHECK(max_below_one - n2.qfi_smooth.back() > 1.0);  // a whole-bit dip, not noise
}

TEST_CASE("curve json round trip preserves every value") {
    QfiParams params;
    params.min_leaf = 1;
    const QfiCurve curve = build_qfi_curve(two_level_bins(), params, 4);
    const QfiCurve back = curve_from_json(curve_to_json(curve));
    CHECK(back.n_qubits == 4);
    CHECK(back.p_floor == curve.p_floor);
    CHECK(back.params.min_leaf == 1);
    CHECK(back.params.ridge_lambda == curve.params.ridge_lambda);
    REQUIRE(back.grid.size() == curve.grid.size());
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        CHECK(back.grid[i] == curve.grid[i]);
        CHECK(back.p_hat[i] == curve.p_hat[i]);
        CHECK(back.qfi_raw[i] == curve.qfi_raw[i]);
        CHECK(back.qfi_smooth[i] == curve.qfi_smooth[i]);
    }
    CHECK_THROWS(curve_from_json("{\"n_qubits\": 2}"));
}
