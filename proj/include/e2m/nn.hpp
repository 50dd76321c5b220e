#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "e2m/common.hpp"

namespace e2m::nn {

// Fully connected ReLU network with a softmax head producing simplex weights.
// Layers are stored as W: out x in, b: out. All batch operations treat
// samples as columns.
struct MlpParams {
    std::vector<int> layer_dims;             // [p, h_1..h_k, m]
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;

    void validate() const;
    std::size_t num_layers() const { return weights.size(); }
};

// He-scaled Gaussian weights (sd sqrt(2/fan_in)), zero biases. Requires at
// least one hidden layer.
MlpParams init_params(const std::vector<int>& layer_dims, std::uint64_t seed);

enum class Mode { Train, Eval };

struct ForwardCache {
    Eigen::MatrixXd input;                      // p x b
    std::vector<Eigen::MatrixXd> activations;   // post-ReLU (and dropout) per hidden layer
    std::vector<Eigen::MatrixXd> relu_mask;     // 1 where pre-activation > 0
    std::vector<Eigen::MatrixXd> dropout_mask;  // scaled inverted-dropout masks (train only)
    Eigen::MatrixXd softmax;                    // m x b
    Mode mode = Mode::Eval;
};

// Softmax with max-subtraction; each output column is renormalized to sum to
// 1 so downstream simplex checks hold to 1e-12.
Eigen::MatrixXd softmax_columns(const Eigen::MatrixXd& logits);

// Batch forward pass; `rng` is consumed only in train mode (dropout masks on
// hidden activations, never the head).
std::pair<Eigen::MatrixXd, ForwardCache> forward(const Eigen::MatrixXd& x,
                                                 const MlpParams& params, double dropout_rate,
                                                 Mode mode, std::mt19937_64* rng = nullptr);

struct Grads {
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;

    static Grads zeros_like(const MlpParams& params);
    void scale(double c);
};

// Exact gradients through softmax, dropout, ReLU and affine layers. The
// upstream matrix holds d(loss)/d(softmax output) per column; returned
// gradients are summed over the batch.
Grads backprop(const MlpParams& params, const ForwardCache& cache,
               const Eigen::MatrixXd& upstream);

// H(w) = -sum_i w_i log(w_i + delta).
double entropy(const Eigen::VectorXd& w, double delta = 1e-10);
// dH/dw_i = -log(w_i + delta) - w_i / (w_i + delta).
Eigen::VectorXd entropy_grad(const Eigen::VectorXd& w, double delta = 1e-10);

struct AdamConfig {
    double lr = 5e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct AdamState {
    AdamConfig cfg;
    std::vector<Eigen::MatrixXd> m_w, v_w;
    std::vector<Eigen::VectorXd> m_b, v_b;
    long step_count = 0;

    static AdamState init(const MlpParams& params, const AdamConfig& cfg);
};

// One bias-corrected Adam update; mutates params and state in place.
void adam_step(AdamState& state, MlpParams& params, const Grads& grads);

}  // namespace e2m::nn
