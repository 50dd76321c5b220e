#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <vector>

#include "e2m/nn.hpp"
#include "e2m/space.hpp"

namespace e2m {

struct TrainConfig {
    int epochs = 2000;
    int batch = 32;
    double lr = 5e-4;
    double dropout = 0.3;
    double lambda = 0.0;
    double delta = 1e-10;
    std::vector<int> hidden_dims{32, 32};
    int anchors_m = 0;  // 0 means: use all training outputs
    double holdout_frac = 0.10;
    int patience_evals = 10;
    int eval_every = 10;  // epochs between holdout evaluations
    std::uint64_t seed = 0;

    void validate(int n) const;
};

// Serialized model: network parameters, anchors, and predictor
// standardization constants. Version 1 JSON layout.
struct Checkpoint {
    int version = 1;
    Space space = Space::wasserstein();
    nn::MlpParams params;
    std::vector<int> anchor_indices;
    std::vector<Point> anchors;
    double lambda = 0.0;
    double delta = 1e-10;
    Eigen::VectorXd x_mean, x_sd;       // constant columns stored with sd = 1
    std::vector<int> constant_columns;
    std::uint64_t seed = 0;

    nlohmann::json to_json() const;
    static Checkpoint from_json(const nlohmann::json& j);
};

struct EvalRecord {
    int epoch;
    double train_loss;    // mean entropy-regularized loss over the epoch
    double holdout_mspe;
};
using TrainHistory = std::vector<EvalRecord>;

struct TrainResult {
    Checkpoint checkpoint;
    TrainHistory history;
};

// m distinct indices drawn uniformly without replacement; m == n returns
// 0..n-1 in order.
std::vector<int> select_anchors(int n, int m, std::uint64_t seed);

// Minibatch Adam training of the entropy-regularized loss
//   d^2(mu(w_theta(x)), y) + lambda H(w_theta(x)),
// with z-scored predictors, a seeded holdout split for early stopping, and
// best-holdout parameter selection. Deterministic given (data, cfg, seed).
TrainResult train(const Eigen::MatrixXd& x, const std::vector<Point>& y, const Space& space,
                  const TrainConfig& cfg);

Point predict(const Checkpoint& ckpt, const Eigen::VectorXd& x);
std::vector<Point> predict_many(const Checkpoint& ckpt, const Eigen::MatrixXd& x);

// Mean squared distance between matched prediction/reference lists.
double mspe(const std::vector<Point>& preds, const std::vector<Point>& refs, const Space& space);

struct CvScheme {
    enum class Kind { Loo, KFold, Repeated };
    Kind kind = Kind::KFold;
    int folds = 10;
    int runs = 1;  // Repeated only

    static CvScheme loo() { return {Kind::Loo, 0, 1}; }
    static CvScheme kfold(int k) { return {Kind::KFold, k, 1}; }
    static CvScheme repeated(int k, int runs) { return {Kind::Repeated, k, runs}; }
};

struct CvResult {
    double mean = 0.0;
    double sd = 0.0;
    std::vector<double> per_split;  // per-fold (or per-run) MSPE
};

// Out-of-sample squared distances against held-out observations.
CvResult cross_validate(const Eigen::MatrixXd& x, const std::vector<Point>& y, const Space& space,
                        const TrainConfig& cfg, const CvScheme& scheme, std::uint64_t seed,
                        int jobs = 1);

struct GridSpec {
    std::vector<double> lambdas{-0.01, -0.001, 0.0, 0.001, 0.01};
    std::vector<int> depths{2, 3, 4, 5, 6};
    std::vector<int> widths{8, 16, 32, 64, 128};
};

struct GridCell {
    double lambda;
    int depth;
    int width;
    double cv_mspe;
};

struct GridResult {
    TrainConfig best;
    std::vector<GridCell> table;
};

// k-fold CV over the grid; ties broken by smaller width, then shallower
// depth, then lambda closest to zero.
GridResult grid_search(const Eigen::MatrixXd& x, const std::vector<Point>& y, const Space& space,
                       const TrainConfig& base, const GridSpec& grid, int folds,
                       std::uint64_t seed, int jobs = 1);

}  // namespace e2m
