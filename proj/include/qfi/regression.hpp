#pragma once

#include <span>
#include <vector>

#include "qfi/sampling.hpp"

namespace qfi {

// Piecewise-constant CART regressor over the fidelity axis. Splits
// minimize the summed squared error of the two children; ties go to the
// smaller threshold, so fitting is deterministic.
class RegressionTree {
  public:
    static RegressionTree fit(std::span<const double> x, std::span<const double> y,
                              int max_depth = 8, int min_leaf = 2);

    double predict(double x) const;
    double r_squared() const { return r_squared_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }

  private:
    struct Node {
        double threshold = 0.0;  // x <= threshold goes left
        double value = 0.0;      // leaf prediction
        int left = -1;
        int right = -1;
    };

    int build(std::vector<double>& xs, std::vector<double>& ys, int lo, int hi, int depth,
              int max_depth, int min_leaf);

    std::vector<Node> nodes_;
    double r_squared_ = 1.0;
};

// Trains on the (mean_fidelity, probability) pairs of the non-empty bins.
// Throws std::invalid_argument with fewer than two non-empty bins.
RegressionTree fit_tree(const BinnedDistribution& bins, int max_depth = 8, int min_leaf = 2);

// Cubic B-spline least squares with an L2 ridge on second differences of
// the coefficients, so constants and linears are reproduced essentially
// exactly; returns fitted values on the same grid. On a singular system
// the ridge is increased once before giving up with std::runtime_error.
std::vector<double> fit_spline_smooth(std::span<const double> grid,
                                      std::span<const double> values, int n_knots = 25,
                                      double ridge_lambda = 1e-3);

}  // namespace qfi
