#pragma once

#include <Eigen/Dense>
#include <vector>

#include "e2m/common.hpp"
#include "e2m/spd.hpp"
#include "e2m/wasserstein.hpp"

namespace e2m {

// A point of any backend. Quantile vectors are stored as M x 1 matrices.
using Point = Eigen::MatrixXd;

// Metric-space backend contract shared by all geometries. The three Hadamard
// backends are flat in suitable coordinates (quantile vectors; vectorized
// Laplacians; square-root-transformed SPD matrices), which `embed`/`decode`
// expose: in embedded coordinates the metric is Euclidean and the weighted
// Frechet mean is the convex combination. The Bures-Wasserstein backend is
// curved and goes through the fixed-point solver.
class Space {
public:
    static Space wasserstein(int grid_size = 100);
    static Space network(int num_nodes);
    static Space spd_power(int dim, double alpha = 0.5);
    static Space spd_bw(int dim, spd::BwSolveConfig cfg = {});

    SpaceTag tag() const { return tag_; }
    bool is_flat() const { return tag_ != SpaceTag::SpdBw; }
    bool is_hadamard() const { return tag_ != SpaceTag::SpdBw; }

    // Length of one serialized CSV row (quantiles; upper-triangle edge
    // weights; lower-triangle matrix entries).
    int row_len() const;
    // Dimension of the flat embedding.
    int embed_dim() const;

    void validate(const Point& p) const;
    double distance(const Point& a, const Point& b) const;
    Point frechet_mean(const Eigen::VectorXd& w, const std::vector<Point>& anchors) const;
    Eigen::VectorXd loss_grad_w(const Eigen::VectorXd& w, const std::vector<Point>& anchors,
                                const Point& target) const;

    // Metric-scaled flat coordinates (flat spaces only).
    Eigen::VectorXd embed(const Point& p) const;
    Point decode(const Eigen::VectorXd& coords) const;
    // Anchor embeddings as columns.
    Eigen::MatrixXd embed_all(const std::vector<Point>& points) const;

    Eigen::VectorXd to_row(const Point& p) const;
    Point from_row(const Eigen::VectorXd& row) const;

    int grid_size() const { return grid_size_; }
    int num_nodes() const { return num_nodes_; }
    int dim() const { return dim_; }
    double alpha() const { return alpha_; }
    const spd::BwSolveConfig& bw_config() const { return bw_cfg_; }
    spd::BwSolveConfig& bw_config() { return bw_cfg_; }

private:
    Space() = default;
    SpaceTag tag_ = SpaceTag::Wasserstein1d;
    int grid_size_ = 100;  // wasserstein
    int num_nodes_ = 0;    // network
    int dim_ = 0;          // spd
    double alpha_ = 0.5;   // spd-power
    spd::BwSolveConfig bw_cfg_{};
};

}  // namespace e2m
