#pragma once

#include <span>
#include <string>
#include <vector>

#include "qfi/regression.hpp"

namespace qfi {

struct QfiParams {
    int max_depth = 8;
    int min_leaf = 2;
    int grid_points = 1001;
    int n_knots = 25;
    double ridge_lambda = 1e-3;
};

// Fitted fidelity-probability model turned into information: p_hat from the
// tree (floored at p_floor), qfi_raw = -log2(p_hat), qfi_smooth from the
// penalized spline. Immutable once built; safe to share across threads.
struct QfiCurve {
    int n_qubits = 0;
    std::vector<double> grid;
    std::vector<double> p_hat;
    std::vector<double> qfi_raw;
    std::vector<double> qfi_smooth;
    double p_floor = 0.0;
    QfiParams params;

    // Linear interpolation of qfi_smooth at fidelity f in [0,1].
    double lookup_smooth(double f) const;
    double smooth_max() const;
};

// Bits of information for a probability: -log2(p).
double information_bits(double probability);

// -log2(max(tree prediction at f, p_floor)).
double qfi_point(const RegressionTree& tree, double f, double p_floor);

struct QfiThresholdResult {
    double threshold = 0.0;
    double tail_probability = 1.0;
    double information_bits = 0.0;
};

// Threshold form over an ensemble: tail probability of fidelity >= T,
// floored at 1/(N+1) so the bit value stays finite.
QfiThresholdResult qfi_threshold(std::span<const SampleRecord> records, double threshold);

QfiCurve build_qfi_curve(const BinnedDistribution& bins, const QfiParams& params = {},
                         int n_qubits = 0);

std::string curve_to_json(const QfiCurve& curve);
QfiCurve curve_from_json(const std::string& text);

}  // namespace qfi
