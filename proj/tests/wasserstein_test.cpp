#include <doctest.h>

#include <cmath>
#include <random>

#include "e2m/stats.hpp"
#include "e2m/wasserstein.hpp"

using namespace e2m;
using namespace e2m::wasserstein;

TEST_CASE("probability grid uses midpoints") {
    ProbGrid grid(100);
    CHECK(grid.point(0) == doctest::Approx(0.005));
    CHECK(grid.point(99) == doctest::Approx(0.995));
    CHECK_THROWS_AS(ProbGrid(1), ValidationError);
}

TEST_CASE("norm_quantile matches reference values") {
    // reference values from standard normal tables
    CHECK(norm_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(norm_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(norm_quantile(0.025) == doctest::Approx(-1.959963984540054).epsilon(1e-12));
    CHECK(norm_quantile(0.8413447460685429) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("w2 distance between point masses is the gap") {
    ProbGrid grid(50);
    Eigen::VectorXd a = Eigen::VectorXd::Constant(50, 1.0);
    Eigen::VectorXd b = Eigen::VectorXd::Constant(50, 4.0);
    CHECK(w2_distance(a, b) == doctest::Approx(3.0));
    CHECK(w2_distance(a, a) == doctest::Approx(0.0));
}

TEST_CASE("w2 distance between gaussians has closed form") {
    // W2^2(N(m1,s1), N(m2,s2)) = (m1-m2)^2 + (s1-s2)^2, up to grid truncation
    ProbGrid grid(1000);
    Eigen::VectorXd a = gaussian_quantiles(0.0, 1.0, grid);
    Eigen::VectorXd b = gaussian_quantiles(2.0, 1.5, grid);
    const double exact = std::sqrt(4.0 + 0.25);
    CHECK(w2_distance(a, b) == doctest::Approx(exact).epsilon(5e-3));
}

TEST_CASE("frechet mean is the quantile-wise convex combination") {
    Eigen::MatrixXd anchors(3, 2);
    anchors << 0, 2, 1, 3, 2, 4;
    Eigen::VectorXd w(2);
    w << 0.25, 0.75;
    Eigen::VectorXd mu = frechet_mean(w, anchors);
    CHECK(mu[0] == doctest::Approx(1.5));
    CHECK(mu[1] == doctest::Approx(2.5));
    CHECK(mu[2] == doctest::Approx(3.5));
}

TEST_CASE("frechet mean of one-hot weights returns that anchor") {
    Eigen::MatrixXd anchors(4, 3);
    anchors << 0, 1, 2, 1, 2, 3, 2, 3, 4, 3, 4, 5;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(3);
    w[1] = 1.0;
    CHECK((frechet_mean(w, anchors) - anchors.col(1)).norm() < 1e-14);
}

TEST_CASE("quantile validation rejects decreasing vectors") {
    Eigen::VectorXd bad(3);
    bad << 0.0, 1.0, 0.5;
    CHECK_THROWS_AS(validate_quantiles(bad), ValidationError);
    Eigen::VectorXd ok(3);
    ok << 0.0, 0.0, 1.0;
    CHECK_NOTHROW(validate_quantiles(ok));
}

TEST_CASE("empirical quantiles pick the right order statistics") {
    ProbGrid grid(4);  // p = .125, .375, .625, .875 -> ceil(p*8) = 1, 3, 5, 7
    std::vector<double> samples{8, 1, 6, 3, 5, 4, 7, 2};
    Eigen::VectorXd q = quantile_from_samples(samples, grid);
    CHECK(q[0] == doctest::Approx(1.0));
    CHECK(q[1] == doctest::Approx(3.0));
    CHECK(q[2] == doctest::Approx(5.0));
    CHECK(q[3] == doctest::Approx(7.0));
}

TEST_CASE("empirical quantiles of gaussian samples approach the truth") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss(1.0, 2.0);
    std::vector<double> samples(200000);
    for (double& s : samples) s = gauss(rng);
    ProbGrid grid(100);
    Eigen::VectorXd emp = quantile_from_samples(std::move(samples), grid);
    Eigen::VectorXd exact = gaussian_quantiles(1.0, 2.0, grid);
    CHECK(w2_distance(emp, exact) < 0.05);
}

TEST_CASE("histogram quantiles invert a piecewise-linear cdf") {
    // single bin [0,1] with all mass -> quantiles equal the grid points
    Eigen::VectorXd edges(2), counts(1);
    edges << 0.0, 1.0;
    counts << 10.0;
    ProbGrid grid(10);
    Eigen::VectorXd q = quantiles_from_histogram(edges, counts, grid);
    for (int k = 0; k < 10; ++k) CHECK(q[k] == doctest::Approx(grid.point(k)));
}

TEST_CASE("loss gradient is zero at the target") {
    Eigen::MatrixXd anchors(3, 2);
    anchors << 0, 2, 1, 3, 2, 4;
    Eigen::VectorXd w(2);
    w << 0.5, 0.5;
    Eigen::VectorXd target = frechet_mean(w, anchors);
    Eigen::VectorXd g = loss_grad_w(w, anchors, target);
    CHECK(g.norm() < 1e-12);
}
