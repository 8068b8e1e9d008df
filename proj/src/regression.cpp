#include "qfi/regression.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qfi {

namespace {

double sse_from_sums(double sum, double sum_sq, double n) {
    const double sse = sum_sq - sum * sum / n;
    return sse > 0.0 ? sse : 0.0;
}

}  // namespace

RegressionTree RegressionTree::fit(std::span<const double> x, std::span<const double> y,
                                   int max_depth, int min_leaf) {
    if (x.size() != y.size()) throw std::invalid_argument("x/y size mismatch");
    if (x.size() < 2) throw std::invalid_argument("insufficient data: need at least 2 points");
    if (max_depth < 0 || min_leaf < 1) throw std::invalid_argument("bad tree hyperparameters");

    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> xs(x.size()), ys(y.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        xs[i] = x[order[i]];
        ys[i] = y[order[i]];
    }

    RegressionTree tree;
    tree.build(xs, ys, 0, static_cast<int>(xs.size()), 0, max_depth, min_leaf);

    double mean = 0.0;
    for (double v : ys) mean += v;
    mean /= static_cast<double>(ys.size());
    double sst = 0.0, sse = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = ys[i] - mean;
        sst += d * d;
        const double r = ys[i] - tree.predict(xs[i]);
        sse += r * r;
    }
    tree.r_squared_ = sst > 0.0 ? 1.0 - sse / sst : 1.0;
    return tree;
}

int RegressionTree::build(std::vector<double>& xs, std::vector<double>& ys, int lo, int hi,
                          int depth, int max_depth, int min_leaf) {
    const int n = hi - lo;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = lo; i < hi; ++i) {
        sum += ys[static_cast<std::size_t>(i)];
        sum_sq += ys[static_cast<std::size_t>(i)] * ys[static_cast<std::size_t>(i)];
    }
    const int index = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{});
    nodes_[static_cast<std::size_t>(index)].value = sum / n;

    const double parent_sse = sse_from_sums(sum, sum_sq, n);
    if (depth >= max_depth || n < 2 * min_leaf || parent_sse <= 1e-12 * sum_sq) return index;

    // Scan boundaries between sorted points; prefix sums give both child
    // errors in O(1) per candidate. The left-to-right scan with a strict
    // improvement test breaks ties toward the smaller threshold.
    double best_cost = parent_sse;
    int best_split = -1;
    double left_sum = 0.0, left_sq = 0.0;
    for (int i = lo + 1; i <= hi - 1; ++i) {
        left_sum += ys[static_cast<std::size_t>(i - 1)];
        left_sq += ys[static_cast<std::size_t>(i - 1)] * ys[static_cast<std::size_t>(i - 1)];
        const int nl = i - lo;
        const int nr = hi - i;
        if (nl < min_leaf || nr < min_leaf) continue;
        if (xs[static_cast<std::size_t>(i - 1)] == xs[static_cast<std::size_t>(i)]) continue;
        const double cost = sse_from_sums(left_sum, left_sq, nl) +
                            sse_from_sums(sum - left_sum, sum_sq - left_sq, nr);
        if (cost < best_cost) {
            best_cost = cost;
            best_split = i;
        }
    }
    if (best_split < 0) return index;

    nodes_[static_cast<std::size_t>(index)].threshold =
        0.5 * (xs[static_cast<std::size_t>(best_split - 1)] + xs[static_cast<std::size_t>(best_split)]);
    const int left = build(xs, ys, lo, best_split, depth + 1, max_depth, min_leaf);
    nodes_[static_cast<std::size_t>(index)].left = left;
    const int right = build(xs, ys, best_split, hi, depth + 1, max_depth, min_leaf);
    nodes_[static_cast<std::size_t>(index)].right = right;
    return index;
}

double RegressionTree::predict(double x) const {
    int i = 0;
    while (nodes_[static_cast<std::size_t>(i)].left >= 0) {
        const Node& node = nodes_[static_cast<std::size_t>(i)];
        i = x <= node.threshold ? node.left : node.right;
    }
    return nodes_[static_cast<std::size_t>(i)].value;
}

RegressionTree fit_tree(const BinnedDistribution& bins, int max_depth, int min_leaf) {
    std::vector<double> x, y;
    for (const FidelityBin& b : bins.bins) {
        if (b.count == 0) continue;
        x.push_back(b.mean_fidelity);
        y.push_back(b.probability);
    }
    if (x.size() < 2) throw std::invalid_argument("insufficient data: need at least 2 non-empty bins");
    return RegressionTree::fit(x, y, max_depth, min_leaf);
}

namespace {

// Clamped uniform cubic knot vector on [0,1] with n_knots interior knots.
std::vector<double> make_knots(int n_knots) {
    std::vector<double> t;
    t.reserve(static_cast<std::size_t>(n_knots) + 8);
    for (int i = 0; i < 4; ++i) t.push_back(0.0);
    for (int i = 1; i <= n_knots; ++i) t.push_back(static_cast<double>(i) / (n_knots + 1));
    for (int i = 0; i < 4; ++i) t.push_back(1.0);
    return t;
}

int find_span(double x, const std::vector<double>& t, int n_basis) {
    // valid spans are [3, n_basis - 1]
    if (x >= t[static_cast<std::size_t>(n_basis)]) return n_basis - 1;
    if (x <= t[3]) return 3;
    int lo = 3, hi = n_basis - 1;
    while (lo < hi) {
        const int mid = (lo + hi + 1) / 2;
        if (t[static_cast<std::size_t>(mid)] <= x)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

// Cox-de Boor values of the four cubic basis functions alive on a span.
void basis_funs(int span, double x, const std::vector<double>& t, double out[4]) {
    double left[4], right[4];
    out[0] = 1.0;
    for (int j = 1; j <= 3; ++j) {
        left[j] = x - t[static_cast<std::size_t>(span + 1 - j)];
        right[j] = t[static_cast<std::size_t>(span + j)] - x;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            const double temp = out[r] / (right[r + 1] + left[j - r]);
            out[r] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        out[j] = saved;
    }
}

// Dense Cholesky; returns false when a pivot collapses relative to the
// input scale, which flags numerically singular systems.
bool cholesky_solve(std::vector<double>& a, std::vector<double>& b, int n) {
    double scale = 0.0;
    for (int j = 0; j < n; ++j)
        scale = std::max(scale, a[static_cast<std::size_t>(j * n + j)]);
    const double floor = scale * 1e-13;
    for (int j = 0; j < n; ++j) {
        double d = a[static_cast<std::size_t>(j * n + j)];
        for (int k = 0; k < j; ++k) {
            const double l = a[static_cast<std::size_t>(j * n + k)];
            d -= l * l;
        }
        if (d <= floor) return false;
        d = std::sqrt(d);
        a[static_cast<std::size_t>(j * n + j)] = d;
        for (int i = j + 1; i < n; ++i) {
            double v = a[static_cast<std::size_t>(i * n + j)];
            for (int k = 0; k < j; ++k)
                v -= a[static_cast<std::size_t>(i * n + k)] * a[static_cast<std::size_t>(j * n + k)];
            a[static_cast<std::size_t>(i * n + j)] = v / d;
        }
    }
    for (int i = 0; i < n; ++i) {
        double v = b[static_cast<std::size_t>(i)];
        for (int k = 0; k < i; ++k) v -= a[static_cast<std::size_t>(i * n + k)] * b[static_cast<std::size_t>(k)];
        b[static_cast<std::size_t>(i)] = v / a[static_cast<std::size_t>(i * n + i)];
    }
    for (int i = n - 1; i >= 0; --i) {
        double v = b[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < n; ++k) v -= a[static_cast<std::size_t>(k * n + i)] * b[static_cast<std::size_t>(k)];
        b[static_cast<std::size_t>(i)] = v / a[static_cast<std::size_t>(i * n + i)];
    }
    return true;
}

}  // namespace

std::vector<double> fit_spline_smooth(std::span<const double> grid,
                                      std::span<const double> values, int n_knots,
                                      double ridge_lambda) {
    if (grid.size() != values.size()) throw std::invalid_argument("grid/value size mismatch");
    if (grid.empty()) throw std::invalid_argument("empty grid");
    if (n_knots < 0 || ridge_lambda < 0.0) throw std::invalid_argument("bad spline parameters");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) throw std::invalid_argument("grid must be ascending");

    const int n_basis = n_knots + 4;
    const std::vector<double> knots = make_knots(n_knots);

    std::vector<int> spans(grid.size());
    std::vector<std::array<double, 4>> bases(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = std::min(1.0, std::max(0.0, grid[i]));
        spans[i] = find_span(x, knots, n_basis);
        basis_funs(spans[i], x, knots, bases[i].data());
    }

    auto solve = [&](double lambda, std::vector<double>& coef) {
        std::vector<double> a(static_cast<std::size_t>(n_basis) * n_basis, 0.0);
        coef.assign(static_cast<std::size_t>(n_basis), 0.0);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const int first = spans[i] - 3;
            for (int r = 0; r < 4; ++r) {
                const int br = first + r;
                coef[static_cast<std::size_t>(br)] += bases[i][static_cast<std::size_t>(r)] * values[i];
                for (int c = 0; c < 4; ++c) {
                    const int bc = first + c;
                    a[static_cast<std::size_t>(br * n_basis + bc)] +=
                        bases[i][static_cast<std::size_t>(r)] * bases[i][static_cast<std::size_t>(c)];
                }
            }
        }
        // Ridge on second differences of the coefficients: roughness is
        // penalized while constants and linears pass through unshrunk.
        for (int r = 0; r + 2 < n_basis; ++r) {
            const int idx[3] = {r, r + 1, r + 2};
            const double w[3] = {1.0, -2.0, 1.0};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    a[static_cast<std::size_t>(idx[i] * n_basis + idx[j])] += lambda * w[i] * w[j];
        }
        return cholesky_solve(a, coef, n_basis);
    };

    std::vector<double> coef;
    if (!solve(ridge_lambda, coef)) {
        const double retry = ridge_lambda > 0.0 ? ridge_lambda * 1e6 : 1e-6;
        if (!solve(retry, coef)) throw std::runtime_error("spline normal equations singular");
    }

    std::vector<double> fitted(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const int first = spans[i] - 3;
        double v = 0.0;
        for (int r = 0; r < 4; ++r)
            v += bases[i][static_cast<std::size_t>(r)] * coef[static_cast<std::size_t>(first + r)];
        fitted[i] = v;
    }
    return fitted;
}

}  // namespace qfi
