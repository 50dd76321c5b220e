#pragma once

#include <Eigen/Dense>

#include "e2m/common.hpp"

namespace e2m::network {

// Graph Laplacian invariants: symmetric, non-positive off-diagonals,
// zero row sums, PSD up to rounding.
void validate_laplacian(const Eigen::MatrixXd& l);

// L = D - A from upper-triangle edge weights, row-major:
// (0,1), (0,2), ..., (0,V-1), (1,2), ...
Eigen::MatrixXd laplacian_from_edges(const Eigen::VectorXd& edge_weights, int num_nodes);

// Inverse of laplacian_from_edges.
Eigen::VectorXd edges_from_laplacian(const Eigen::MatrixXd& l);

double frobenius_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Entrywise convex combination of anchor Laplacians.
Eigen::MatrixXd frechet_mean(const Eigen::VectorXd& w, const std::vector<Eigen::MatrixXd>& anchors);

// Component i = 2 <mu(w) - target, L_i>_F.
Eigen::VectorXd loss_grad_w(const Eigen::VectorXd& w, const std::vector<Eigen::MatrixXd>& anchors,
                            const Eigen::MatrixXd& target);

inline Eigen::Index num_edges(int num_nodes) {
    return static_cast<Eigen::Index>(num_nodes) * (num_nodes - 1) / 2;
}

}  // namespace e2m::network
