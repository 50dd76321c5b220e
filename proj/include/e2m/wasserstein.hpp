#pragma once

#include <Eigen/Dense>
#include <vector>

#include "e2m/common.hpp"

namespace e2m::wasserstein {

// Midpoint probability grid p_k = (k - 1/2) / M, k = 1..M. A 1-D
// distribution is represented by its quantile function sampled on this grid.
struct ProbGrid {
    int size = 100;

    explicit ProbGrid(int m = 100) : size(m) {
        if (m < 2) throw ValidationError("ProbGrid: M must be >= 2");
    }
    double point(int k) const { return (k + 0.5) / size; }  // 0-based k
    Eigen::VectorXd points() const {
        Eigen::VectorXd p(size);
        for (int k = 0; k < size; ++k) p[k] = point(k);
        return p;
    }
};

// Non-decreasing within 1e-9 slack.
void validate_quantiles(const Eigen::VectorXd& q);

// sqrt of the midpoint-rule W2^2 integral (1/M) sum (a_k - b_k)^2.
double w2_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Quantile-wise convex combination; anchors as columns of an M x n matrix.
Eigen::VectorXd frechet_mean(const Eigen::VectorXd& w, const Eigen::MatrixXd& anchors);

// Gradient of d^2(mu(w), target) with respect to w in ambient R^n.
Eigen::VectorXd loss_grad_w(const Eigen::VectorXd& w, const Eigen::MatrixXd& anchors,
                            const Eigen::VectorXd& target);

// Empirical quantile vector: order statistic at index ceil(p_k * s), 1-based.
Eigen::VectorXd quantile_from_samples(std::vector<double> samples, const ProbGrid& grid);

// q_k = mean + sd * Phi^{-1}(p_k).
Eigen::VectorXd gaussian_quantiles(double mean, double sd, const ProbGrid& grid);

// Piecewise-linear CDF through cumulative bin mass, inverted at the grid.
Eigen::VectorXd quantiles_from_histogram(const Eigen::VectorXd& bin_edges,
                                         const Eigen::VectorXd& counts, const ProbGrid& grid);

}  // namespace e2m::wasserstein
