#include <doctest.h>

#include <cmath>
#include <random>

#include "e2m/nn.hpp"

using namespace e2m;
using namespace e2m::nn;

TEST_CASE("init_params shapes and He scaling") {
    MlpParams p = init_params({4, 16, 3}, 1);
    REQUIRE(p.num_layers() == 2);
    CHECK(p.weights[0].rows() == 16);
    CHECK(p.weights[0].cols() == 4);
    CHECK(p.biases[1].isZero());
    CHECK_NOTHROW(p.validate());
    // empirical sd of a 16x4 block should be near sqrt(2/4)
    const double sd = std::sqrt(p.weights[0].array().square().mean());
    CHECK(sd == doctest::Approx(std::sqrt(0.5)).epsilon(0.35));
    CHECK_THROWS_AS(init_params({4, 3}, 1), ValidationError);
}

TEST_CASE("softmax columns are simplex points and shift-invariant") {
    Eigen::MatrixXd logits(3, 2);
    logits << 1, 100, 2, 101, 3, 102;
    Eigen::MatrixXd w = softmax_columns(logits);
    for (int c = 0; c < 2; ++c) {
        CHECK(w.col(c).sum() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(w.col(c).minCoeff() > 0.0);
    }
    // shifting logits by a constant leaves the softmax unchanged
    CHECK((w.col(0) - w.col(1)).norm() < 1e-12);
}

TEST_CASE("softmax survives extreme logits") {
    Eigen::MatrixXd logits(2, 1);
    logits << 1000.0, -1000.0;
    Eigen::MatrixXd w = softmax_columns(logits);
    CHECK(w(0, 0) == doctest::Approx(1.0));
    CHECK(w.allFinite());
}

TEST_CASE("forward pass validates input") {
    MlpParams p = init_params({3, 8, 4}, 2);
    Eigen::MatrixXd x = Eigen::MatrixXd::Random(3, 5);
    auto [w, cache] = forward(x, p, 0.0, Mode::Eval);
    CHECK(w.rows() == 4);
    CHECK(w.cols() == 5);

    Eigen::MatrixXd bad = x;
    bad(0, 0) = std::nan("");
    CHECK_THROWS_AS(forward(bad, p, 0.0, Mode::Eval), ValidationError);
    CHECK_THROWS_AS(forward(Eigen::MatrixXd::Random(2, 5), p, 0.0, Mode::Eval), ValidationError);
    CHECK_THROWS_AS(forward(x, p, 0.3, Mode::Train, nullptr), ValidationError);
}

TEST_CASE("inverted dropout keeps eval-mode expectations") {
    MlpParams p = init_params({3, 64, 4}, 3);
    Eigen::MatrixXd x = Eigen::MatrixXd::Random(3, 1);
    std::mt19937_64 rng(9);
    // average many dropout forwards; should approach the eval forward
    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(4, 1);
    const int reps = 4000;
    for (int r = 0; r < reps; ++r) {
        auto [w, cache] = forward(x, p, 0.3, Mode::Train, &rng);
        mean += w;
    }
    mean /= reps;
    auto [we, cache] = forward(x, p, 0.0, Mode::Eval);
    CHECK((mean - we).norm() < 0.05);
}

TEST_CASE("backprop matches finite differences through softmax and relu") {
    MlpParams p = init_params({3, 6, 5, 4}, 4);
    Eigen::MatrixXd x = Eigen::MatrixXd::Random(3, 2);
    // loss = sum of c .* softmax for a fixed random c
    Eigen::MatrixXd c = Eigen::MatrixXd::Random(4, 2);

    auto loss_of = [&](const MlpParams& params) {
        auto [w, cache] = forward(x, params, 0.0, Mode::Eval);
        return (c.cwiseProduct(w)).sum();
    };
    auto [w, cache] = forward(x, p, 0.0, Mode::Eval);
    Grads g = backprop(p, cache, c);

    const double h = 1e-6;
    for (std::size_t l = 0; l < p.num_layers(); ++l) {
        for (int k = 0; k < 5; ++k) {
            const auto i = static_cast<Eigen::Index>(k % p.weights[l].rows());
            const auto j = static_cast<Eigen::Index>((k * 7) % p.weights[l].cols());
            MlpParams pp = p, pm = p;
            pp.weights[l](i, j) += h;
            pm.weights[l](i, j) -= h;
            const double fd = (loss_of(pp) - loss_of(pm)) / (2.0 * h);
            CHECK(g.weights[l](i, j) == doctest::Approx(fd).epsilon(1e-5));
        }
        MlpParams pp = p, pm = p;
        pp.biases[l][0] += h;
        pm.biases[l][0] -= h;
        const double fd = (loss_of(pp) - loss_of(pm)) / (2.0 * h);
        CHECK(g.biases[l][0] == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("entropy and its gradient") {
    Eigen::VectorXd uniform = Eigen::VectorXd::Constant(4, 0.25);
    CHECK(entropy(uniform) == doctest::Approx(std::log(4.0)).epsilon(1e-8));
    Eigen::VectorXd onehot = Eigen::VectorXd::Zero(4);
    onehot[2] = 1.0;
    CHECK(entropy(onehot) == doctest::Approx(0.0).epsilon(1e-9));

    // gradient vs finite differences
    Eigen::VectorXd w(3);
    w << 0.2, 0.3, 0.5;
    Eigen::VectorXd g = entropy_grad(w);
    const double h = 1e-7;
    for (int i = 0; i < 3; ++i) {
        Eigen::VectorXd wp = w, wm = w;
        wp[i] += h;
        wm[i] -= h;
        CHECK(g[i] == doctest::Approx((entropy(wp) - entropy(wm)) / (2 * h)).epsilon(1e-5));
    }
    CHECK_THROWS_AS(entropy(w, 0.0), ValidationError);
}

TEST_CASE("adam first step moves by ~lr against the gradient sign") {
    MlpParams p = init_params({2, 4, 3}, 5);
    AdamConfig cfg{0.01, 0.9, 0.999, 1e-8};
    AdamState state = AdamState::init(p, cfg);
    Grads g = Grads::zeros_like(p);
    g.weights[0].setConstant(2.0);
    const Eigen::MatrixXd before = p.weights[0];
    adam_step(state, p, g);
    // bias-corrected first step is lr * g / (|g| + eps) ~= lr
    CHECK((before - p.weights[0] - Eigen::MatrixXd::Constant(4, 2, 0.01)).norm() < 1e-6);
    CHECK(state.step_count == 1);
}

TEST_CASE("adam rejects non-finite gradients") {
    MlpParams p = init_params({2, 4, 3}, 6);
    AdamState state = AdamState::init(p, {});
    Grads g = Grads::zeros_like(p);
    g.weights[0](0, 0) = std::nan("");
    CHECK_THROWS_AS(adam_step(state, p, g), Error);
}
