#pragma once

#include <Eigen/Dense>
#include <random>

#include "e2m/common.hpp"

namespace e2m {

// Accepts a raw vector iff it is non-negative and sums to 1 within 1e-9,
// then renormalizes exactly.
Eigen::VectorXd validate_weights(const Eigen::VectorXd& raw);

inline Eigen::VectorXd one_hot(Eigen::Index n, Eigen::Index i) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    w[i] = 1.0;
    return w;
}

// Uniform draw on the (n-1)-simplex by exponential spacings.
Eigen::VectorXd sample_simplex(Eigen::Index n, std::mt19937_64& rng);

}  // namespace e2m
