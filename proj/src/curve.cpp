#include "qfi/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace qfi {

double QfiCurve::lookup_smooth(double f) const {
    if (grid.size() < 2) throw std::logic_error("curve has no grid");
    const double x = std::min(1.0, std::max(0.0, f));
    const double step = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
    const double pos = (x - grid.front()) / step;
    std::size_t i = static_cast<std::size_t>(pos);
    if (i >= grid.size() - 1) i = grid.size() - 2;
    const double frac = pos - static_cast<double>(i);
    return qfi_smooth[i] * (1.0 - frac) + qfi_smooth[i + 1] * frac;
}

double QfiCurve::smooth_max() const {
    return *std::max_element(qfi_smooth.begin(), qfi_smooth.end());
}

double information_bits(double probability) {
    if (probability <= 0.0) throw std::invalid_argument("probability must be positive");
    return -std::log2(probability);
}

double qfi_point(const RegressionTree& tree, double f, double p_floor) {
    if (f < 0.0 || f > 1.0) throw std::invalid_argument("fidelity outside [0,1]");
    return -std::log2(std::max(tree.predict(f), p_floor));
}

QfiThresholdResult qfi_threshold(std::span<const SampleRecord> records, double threshold) {
    if (threshold < 0.0 || threshold > 1.0) throw std::invalid_argument("threshold outside [0,1]");
    if (records.empty()) throw std::invalid_argument("qfi_threshold needs records");
    std::int64_t hits = 0;
    for (const SampleRecord& r : records)
        if (r.fidelity >= threshold) ++hits;
    const double n = static_cast<double>(records.size());
    const double floor = 1.0 / (n + 1.0);
    QfiThresholdResult out;
    out.threshold = threshold;
    out.tail_probability = std::max(static_cast<double>(hits) / n, floor);
    out.information_bits = -std::log2(out.tail_probability);
    return out;
}

QfiCurve build_qfi_curve(const BinnedDistribution& bins, const QfiParams& params,
                         int n_qubits) {
    if (params.grid_points < 2) throw std::invalid_argument("grid needs at least 2 points");
    const RegressionTree tree = fit_tree(bins, params.max_depth, params.min_leaf);

    QfiCurve curve;
    curve.n_qubits = n_qubits;
    curve.params = params;
    curve.p_floor = 1.0 / (static_cast<double>(bins.total) + 1.0);
    curve.grid.resize(static_cast<std::size_t>(params.grid_points));
    curve.p_hat.resize(curve.grid.size());
    curve.qfi_raw.resize(curve.grid.size());
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        curve.grid[i] = static_cast<double>(i) / static_cast<double>(params.grid_points - 1);
        const double p = std::min(1.0, std::max(tree.predict(curve.grid[i]), curve.p_floor));
        curve.p_hat[i] = p;
        curve.qfi_raw[i] = -std::log2(p);
    }
    curve.qfi_smooth =
        fit_spline_smooth(curve.grid, curve.qfi_raw, params.n_knots, params.ridge_lambda);
    return curve;
}

std::string curve_to_json(const QfiCurve& curve) {
    nlohmann::json j;
    j["n_qubits"] = curve.n_qubits;
    j["grid"] = curve.grid;
    j["p_hat"] = curve.p_hat;
    j["qfi_raw"] = curve.qfi_raw;
    j["qfi_smooth"] = curve.qfi_smooth;
    j["p_floor"] = curve.p_floor;
    j["params"] = {{"max_depth", curve.params.max_depth},
                   {"min_leaf", curve.params.min_leaf},
                   {"grid_points", curve.params.grid_points},
                   {"n_knots", curve.params.n_knots},
                   {"ridge_lambda", curve.params.ridge_lambda}};
    return j.dump();
}

QfiCurve curve_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    QfiCurve curve;
    curve.n_qubits = j.at("n_qubits").get<int>();
    curve.grid = j.at("grid").get<std::vector<double>>();
    curve.p_hat = j.at("p_hat").get<std::vector<double>>();
    curve.qfi_raw = j.at("qfi_raw").get<std::vector<double>>();
    curve.qfi_smooth = j.at("qfi_smooth").get<std::vector<double>>();
    curve.p_floor = j.at("p_floor").get<double>();
    const auto& p = j.at("params");
    curve.params.max_depth = p.at("max_depth").get<int>();
    curve.params.min_leaf = p.at("min_leaf").get<int>();
    curve.params.grid_points = p.at("grid_points").get<int>();
    curve.params.n_knots = p.at("n_knots").get<int>();
    curve.params.ridge_lambda = p.at("ridge_lambda").get<double>();
    if (curve.grid.size() != curve.p_hat.size() || curve.grid.size() != curve.qfi_raw.size() ||
        curve.grid.size() != curve.qfi_smooth.size() || curve.grid.size() < 2)
        throw std::invalid_argument("curve arrays are inconsistent");
    return curve;
}

}  // namespace qfi
