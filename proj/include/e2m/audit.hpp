#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "e2m/space.hpp"

namespace e2m {

struct AnchorSet {
    std::vector<Point> points;
    std::vector<int> source_indices;  // distinct training-row indices

    void validate(const Space& space) const;
};

struct LipschitzReport {
    int trials = 0;
    int violations = 0;
    double diameter_estimate = 0.0;
    double max_ratio = 0.0;  // max d(mu(w1),mu(w2)) / (D_hat sqrt(m) ||w1-w2||)
};

// Max distance over anchor pairs; 0 for a single anchor.
double pairwise_diameter(const Space& space, const AnchorSet& anchors);

// Empirical check of the simplex Lipschitz bound
//   d(mu(w1), mu(w2)) <= D_hat sqrt(m) ||w1 - w2||_2
// on seeded uniform simplex pairs. Refuses non-Hadamard backends.
LipschitzReport audit_lipschitz(const Space& space, const AnchorSet& anchors, int trials,
                                std::uint64_t seed);

// Generic valid point of the space (for property tests and audits).
Point random_point(const Space& space, std::mt19937_64& rng);

struct GradCheckReport {
    int instances = 0;
    int directions = 0;      // tangent directions checked per instance
    double max_rel_err = 0.0;
};

// Compares analytic loss_grad_w against central finite differences of
// d^2(mu(w), target) along simplex-tangent directions e_i - e_j, on random
// (w, anchors, target) instances with interior w.
GradCheckReport gradient_check(const Space& space, int instances, int num_anchors,
                               std::uint64_t seed);

}  // namespace e2m
