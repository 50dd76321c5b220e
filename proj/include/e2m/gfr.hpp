#pragma once

#include <Eigen/Dense>
#include <vector>

#include "e2m/space.hpp"

namespace e2m::gfr {

// Global Fréchet regression: for a query x the training outputs are combined
// with the linear-projection weights
//   s_i(x) = 1 + (X_i - Xbar)^T Sigma^{-1} (x - Xbar),
// which average to one but may be negative. Each backend repairs the
// resulting combination back onto its feasible set.
struct GfrModel {
    Space space = Space::wasserstein();
    Eigen::MatrixXd x;            // n x p training predictors
    std::vector<Point> y;
    Eigen::VectorXd x_mean;
    Eigen::MatrixXd sigma_inv;    // ridge-regularized covariance inverse
};

GfrModel fit(const Eigen::MatrixXd& x, const std::vector<Point>& y, const Space& space);

// Weights normalized to sum to one; entries may be negative.
Eigen::VectorXd weights(const GfrModel& model, const Eigen::VectorXd& query);

Point predict(const GfrModel& model, const Eigen::VectorXd& query);
std::vector<Point> predict_many(const GfrModel& model, const Eigen::MatrixXd& queries);

// L2 projection onto non-decreasing vectors (pool adjacent violators).
Eigen::VectorXd isotonic_projection(const Eigen::VectorXd& v);

}  // namespace e2m::gfr
