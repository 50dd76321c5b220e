#include <doctest.h>

#include <random>

#include "e2m/audit.hpp"
#include "e2m/gfr.hpp"
#include "e2m/rng.hpp"

using namespace e2m;

namespace {

std::vector<Point> random_outputs(const Space& space, int n, std::uint64_t seed) {
    auto rng = make_rng(seed, "gfr-test-points");
    std::vector<Point> y;
    for (int i = 0; i < n; ++i) y.push_back(random_point(space, rng));
    return y;
}

}  // namespace

TEST_CASE("weights are all 1/n at the predictor mean") {
    std::mt19937_64 rng(1);
    Eigen::MatrixXd x = Eigen::MatrixXd::Random(20, 3);
    Space s = Space::wasserstein(10);
    gfr::GfrModel model = gfr::fit(x, random_outputs(s, 20, 1), s);
    Eigen::VectorXd w = gfr::weights(model, x.colwise().mean().transpose());
    CHECK((w - Eigen::VectorXd::Constant(20, 1.0 / 20)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("weights sum to one on random queries") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Random(30, 4);
    Space s = Space::network(4);
    gfr::GfrModel model = gfr::fit(x, random_outputs(s, 30, 2), s);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        Eigen::VectorXd q(4);
        for (int j = 0; j < 4; ++j) q[j] = gauss(rng);
        CHECK(gfr::weights(model, q).sum() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("two symmetric scalar predictors give weights (0, 1)") {
    // p=1, X = {-1, +1}, query +1: raw weights 1 +- 1, normalized (0, 1)
    Eigen::MatrixXd x(2, 1);
    x << -1, 1;
    Space s = Space::wasserstein(5);
    std::vector<Point> y = random_outputs(s, 2, 4);
    gfr::GfrModel model = gfr::fit(x, y, s);
    Eigen::VectorXd q(1);
    q << 1.0;
    Eigen::VectorXd w = gfr::weights(model, q);
    CHECK(w[0] == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(w[1] == doctest::Approx(1.0).epsilon(1e-6));
    // and the prediction is (up to monotonicity repair) the second output
    CHECK(s.distance(gfr::predict(model, q), y[1]) < 1e-6);
}

TEST_CASE("prediction at the mean is the unweighted Fréchet mean (flat spaces)") {
    for (const Space& s : {Space::wasserstein(10), Space::network(4), Space::spd_power(3)}) {
        Eigen::MatrixXd x = Eigen::MatrixXd::Random(15, 3);
        std::vector<Point> y = random_outputs(s, 15, 5);
        gfr::GfrModel model = gfr::fit(x, y, s);
        Point pred = gfr::predict(model, x.colwise().mean().transpose());
        Point mean = s.frechet_mean(Eigen::VectorXd::Constant(15, 1.0 / 15), y);
        CHECK(s.distance(pred, mean) < 1e-6);
    }
}

TEST_CASE("isotonic projection oracle cases") {
    Eigen::VectorXd v(4);
    v << 1, 3, 2, 4;
    Eigen::VectorXd p = gfr::isotonic_projection(v);
    CHECK(p[0] == doctest::Approx(1.0));
    CHECK(p[1] == doctest::Approx(2.5));
    CHECK(p[2] == doctest::Approx(2.5));
    CHECK(p[3] == doctest::Approx(4.0));

    // already monotone input is unchanged
    Eigen::VectorXd mono(3);
    mono << -1, 0, 5;
    CHECK((gfr::isotonic_projection(mono) - mono).norm() == 0.0);

    // fully decreasing input pools to the global mean
    Eigen::VectorXd dec(3);
    dec << 3, 2, 1;
    CHECK((gfr::isotonic_projection(dec) - Eigen::VectorXd::Constant(3, 2.0)).norm() < 1e-14);
}

TEST_CASE("predictions pass space validation on extrapolating queries") {
    std::mt19937_64 qrng(6);
    std::normal_distribution<double> gauss(0.0, 2.0);
    for (const Space& s : {Space::wasserstein(10), Space::network(4), Space::spd_power(3),
                           Space::spd_bw(2)}) {
        Eigen::MatrixXd x = Eigen::MatrixXd::Random(25, 3);
        gfr::GfrModel model = gfr::fit(x, random_outputs(s, 25, 7), s);
        for (int t = 0; t < 30; ++t) {
            Eigen::VectorXd q(3);
            for (int j = 0; j < 3; ++j) q[j] = gauss(qrng);
            CHECK_NOTHROW(s.validate(gfr::predict(model, q)));
        }
    }
}

TEST_CASE("fit rejects inconsistent input") {
    Space s = Space::wasserstein(10);
    Eigen::MatrixXd x = Eigen::MatrixXd::Random(5, 2);
    CHECK_THROWS_AS(gfr::fit(x, random_outputs(s, 4, 8), s), ValidationError);
    gfr::GfrModel model = gfr::fit(x, random_outputs(s, 5, 8), s);
    CHECK_THROWS_AS(gfr::weights(model, Eigen::VectorXd::Zero(3)), ValidationError);
}
