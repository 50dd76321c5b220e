#include "e2m/nn.hpp"

#include <cmath>

#include "e2m/rng.hpp"

namespace e2m::nn {

void MlpParams::validate() const {
    if (layer_dims.size() < 3)
        throw ValidationError("mlp: at least one hidden layer is required");
    if (weights.size() != layer_dims.size() - 1 || biases.size() != weights.size())
        throw ValidationError("mlp: layer count mismatch");
    for (std::size_t l = 0; l < weights.size(); ++l) {
        if (layer_dims[l] < 1) throw ValidationError("mlp: layer dims must be >= 1");
        if (weights[l].rows() != layer_dims[l + 1] || weights[l].cols() != layer_dims[l])
            throw ValidationError("mlp: weight shape mismatch at layer " + std::to_string(l));
        if (biases[l].size() != layer_dims[l + 1])
            throw ValidationError("mlp: bias shape mismatch at layer " + std::to_string(l));
        if (!weights[l].allFinite() || !biases[l].allFinite())
            throw ValidationError("mlp: non-finite parameter at layer " + std::to_string(l));
    }
}

MlpParams init_params(const std::vector<int>& layer_dims, std::uint64_t seed) {
    if (layer_dims.size() < 3)
        throw ValidationError("init_params: at least one hidden layer is required");
    MlpParams params;
    params.layer_dims = layer_dims;
    auto rng = make_rng(seed, "mlp-init");
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t l = 0; l + 1 < layer_dims.size(); ++l) {
        const int fan_in = layer_dims[l];
        const int fan_out = layer_dims[l + 1];
        if (fan_in < 1 || fan_out < 1) throw ValidationError("init_params: empty layer");
        const double sd = std::sqrt(2.0 / fan_in);
        Eigen::MatrixXd w(fan_out, fan_in);
        for (Eigen::Index i = 0; i < w.rows(); ++i)
            for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = sd * gauss(rng);
        params.weights.push_back(std::move(w));
        params.biases.push_back(Eigen::VectorXd::Zero(fan_out));
    }
    return params;
}

Eigen::MatrixXd softmax_columns(const Eigen::MatrixXd& logits) {
    Eigen::MatrixXd out(logits.rows(), logits.cols());
    for (Eigen::Index c = 0; c < logits.cols(); ++c) {
        Eigen::VectorXd col = logits.col(c);
        col.array() -= col.maxCoeff();
        col = col.array().exp();
        out.col(c) = col / col.sum();
    }
    return out;
}

std::pair<Eigen::MatrixXd, ForwardCache> forward(const Eigen::MatrixXd& x,
                                                 const MlpParams& params, double dropout_rate,
                                                 Mode mode, std::mt19937_64* rng) {
    params.validate();
    if (!x.allFinite()) throw ValidationError("forward: non-finite input");
    if (x.rows() != params.layer_dims.front())
        throw ValidationError("forward: input has " + std::to_string(x.rows()) +
                              " features, expected " + std::to_string(params.layer_dims.front()));
    if (dropout_rate < 0.0 || dropout_rate >= 1.0)
        throw ValidationError("forward: dropout rate must lie in [0,1)");
    const bool drop = mode == Mode::Train && dropout_rate > 0.0;
    if (drop && rng == nullptr) throw ValidationError("forward: train-mode dropout needs an rng");

    ForwardCache cache;
    cache.input = x;
    cache.mode = mode;
    const std::size_t hidden = params.num_layers() - 1;
    Eigen::MatrixXd a = x;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t l = 0; l < hidden; ++l) {
        Eigen::MatrixXd z = (params.weights[l] * a).colwise() + params.biases[l];
        Eigen::MatrixXd mask = (z.array() > 0.0).cast<double>();
        a = z.cwiseProduct(mask);
        cache.relu_mask.push_back(std::move(mask));
        if (drop) {
            const double keep = 1.0 - dropout_rate;
            Eigen::MatrixXd dmask(a.rows(), a.cols());
            for (Eigen::Index c = 0; c < a.cols(); ++c)
                for (Eigen::Index r = 0; r < a.rows(); ++r)
                    dmask(r, c) = unif(*rng) < keep ? 1.0 / keep : 0.0;
            a = a.cwiseProduct(dmask);
            cache.dropout_mask.push_back(std::move(dmask));
        }
        cache.activations.push_back(a);
    }
    Eigen::MatrixXd logits = (params.weights.back() * a).colwise() + params.biases.back();
    cache.softmax = softmax_columns(logits);
    return {cache.softmax, cache};
}

Grads Grads::zeros_like(const MlpParams& params) {
    Grads g;
    for (std::size_t l = 0; l < params.num_layers(); ++l) {
        g.weights.push_back(Eigen::MatrixXd::Zero(params.weights[l].rows(), params.weights[l].cols()));
        g.biases.push_back(Eigen::VectorXd::Zero(params.biases[l].size()));
    }
    return g;
}

void Grads::scale(double c) {
    for (auto& w : weights) w *= c;
    for (auto& b : biases) b *= c;
}

Grads backprop(const MlpParams& params, const ForwardCache& cache,
               const Eigen::MatrixXd& upstream) {
    const std::size_t layers = params.num_layers();
    if (cache.relu_mask.size() != layers - 1)
        throw ValidationError("backprop: cache does not match network depth");
    if (upstream.rows() != cache.softmax.rows() || upstream.cols() != cache.softmax.cols())
        throw ValidationError("backprop: upstream shape mismatch");
    const bool drop = !cache.dropout_mask.empty();
    if (drop && cache.mode != Mode::Train)
        throw ValidationError("backprop: dropout cache requires a train-mode forward");

    Grads grads;
    grads.weights.resize(layers);
    grads.biases.resize(layers);

    // Softmax Jacobian: dz = w .* (u - <w, u> 1) per column.
    const Eigen::MatrixXd& w = cache.softmax;
    Eigen::RowVectorXd wu = (w.cwiseProduct(upstream)).colwise().sum();
    Eigen::MatrixXd delta = w.cwiseProduct(upstream - Eigen::VectorXd::Ones(w.rows()) * wu);

    for (std::size_t l = layers; l-- > 0;) {
        const Eigen::MatrixXd& below = l == 0 ? cache.input : cache.activations[l - 1];
        grads.weights[l] = delta * below.transpose();
        grads.biases[l] = delta.rowwise().sum();
        if (l == 0) break;
        delta = params.weights[l].transpose() * delta;
        if (drop) delta = delta.cwiseProduct(cache.dropout_mask[l - 1]);
        delta = delta.cwiseProduct(cache.relu_mask[l - 1]);
    }
    return grads;
}

double entropy(const Eigen::VectorXd& w, double delta) {
    if (!(delta > 0.0)) throw ValidationError("entropy: delta must be > 0");
    double h = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) h -= w[i] * std::log(w[i] + delta);
    return h;
}

Eigen::VectorXd entropy_grad(const Eigen::VectorXd& w, double delta) {
    if (!(delta > 0.0)) throw ValidationError("entropy_grad: delta must be > 0");
    Eigen::VectorXd g(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i)
        g[i] = -std::log(w[i] + delta) - w[i] / (w[i] + delta);
    return g;
}

AdamState AdamState::init(const MlpParams& params, const AdamConfig& cfg) {
    if (cfg.beta1 < 0.0 || cfg.beta1 >= 1.0 || cfg.beta2 < 0.0 || cfg.beta2 >= 1.0)
        throw ValidationError("adam: beta parameters must lie in [0,1)");
    AdamState state;
    state.cfg = cfg;
    for (std::size_t l = 0; l < params.num_layers(); ++l) {
        state.m_w.push_back(Eigen::MatrixXd::Zero(params.weights[l].rows(), params.weights[l].cols()));
        state.v_w.push_back(Eigen::MatrixXd::Zero(params.weights[l].rows(), params.weights[l].cols()));
        state.m_b.push_back(Eigen::VectorXd::Zero(params.biases[l].size()));
        state.v_b.push_back(Eigen::VectorXd::Zero(params.biases[l].size()));
    }
    return state;
}

namespace {

template <typename Mat>
void adam_update(Mat& param, Mat& m, Mat& v, const Mat& g, const AdamConfig& cfg, long k) {
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
    v = cfg.beta2 * v + (1.0 - cfg.beta2) * g.cwiseProduct(g);
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(k));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(k));
    Mat m_hat = m / bc1;
    Mat v_hat = v / bc2;
    param -= cfg.lr * (m_hat.array() / (v_hat.array().sqrt() + cfg.eps)).matrix();
}

}  // namespace

void adam_step(AdamState& state, MlpParams& params, const Grads& grads) {
    if (grads.weights.size() != params.num_layers())
        throw ValidationError("adam_step: gradient/parameter shape mismatch");
    for (std::size_t l = 0; l < params.num_layers(); ++l)
        if (!grads.weights[l].allFinite() || !grads.biases[l].allFinite())
            throw Error("adam_step: non-finite gradient at layer " + std::to_string(l));
    ++state.step_count;
    for (std::size_t l = 0; l < params.num_layers(); ++l) {
        adam_update(params.weights[l], state.m_w[l], state.v_w[l], grads.weights[l], state.cfg,
                    state.step_count);
        adam_update(params.biases[l], state.m_b[l], state.v_b[l], grads.biases[l], state.cfg,
                    state.step_count);
    }
}

}  // namespace e2m::nn
