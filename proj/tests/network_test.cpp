#include <doctest.h>

#include <random>

#include "e2m/network.hpp"

using namespace e2m;
using namespace e2m::network;

TEST_CASE("laplacian from a triangle graph") {
    // K3 with unit weights: diagonal 2, off-diagonal -1
    Eigen::VectorXd edges = Eigen::VectorXd::Ones(3);
    Eigen::MatrixXd l = laplacian_from_edges(edges, 3);
    CHECK(l(0, 0) == doctest::Approx(2.0));
    CHECK(l(0, 1) == doctest::Approx(-1.0));
    CHECK(l.rowwise().sum().norm() < 1e-14);
    CHECK_NOTHROW(validate_laplacian(l));
}

TEST_CASE("edge serialization roundtrips") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Eigen::VectorXd edges(num_edges(6));
    for (Eigen::Index e = 0; e < edges.size(); ++e) edges[e] = unif(rng) < 0.6 ? unif(rng) : 0.0;
    Eigen::MatrixXd l = laplacian_from_edges(edges, 6);
    CHECK((edges_from_laplacian(l) - edges).norm() < 1e-14);
}

TEST_CASE("laplacian validation rejects broken invariants") {
    Eigen::MatrixXd l = laplacian_from_edges(Eigen::VectorXd::Ones(3), 3);
    SUBCASE("positive off-diagonal") {
        l(0, 1) = 0.5;
        l(1, 0) = 0.5;
        CHECK_THROWS_AS(validate_laplacian(l), ValidationError);
    }
    SUBCASE("nonzero row sum") {
        l(0, 0) += 0.1;
        CHECK_THROWS_AS(validate_laplacian(l), ValidationError);
    }
    SUBCASE("asymmetric") {
        l(0, 1) -= 0.1;
        CHECK_THROWS_AS(validate_laplacian(l), ValidationError);
    }
}

TEST_CASE("frechet mean interpolates laplacians entrywise") {
    Eigen::MatrixXd a = laplacian_from_edges(Eigen::VectorXd::Ones(3), 3);
    Eigen::MatrixXd b = laplacian_from_edges(Eigen::VectorXd::Zero(3), 3);
    Eigen::VectorXd w(2);
    w << 0.25, 0.75;
    Eigen::MatrixXd mu = frechet_mean(w, {a, b});
    CHECK((mu - 0.25 * a).norm() < 1e-14);
    CHECK_NOTHROW(validate_laplacian(mu));
}

TEST_CASE("frobenius distance is the entrywise norm") {
    Eigen::MatrixXd a = laplacian_from_edges(Eigen::VectorXd::Ones(3), 3);
    Eigen::MatrixXd b = laplacian_from_edges(Eigen::VectorXd::Zero(3), 3);
    CHECK(frobenius_distance(a, b) == doctest::Approx(a.norm()));
}

TEST_CASE("loss gradient vanishes at the target and matches the inner-product form") {
    Eigen::MatrixXd a = laplacian_from_edges(Eigen::VectorXd::Ones(3), 3);
    Eigen::VectorXd e2(3);
    e2 << 1, 0, 0.5;
    Eigen::MatrixXd b = laplacian_from_edges(e2, 3);
    Eigen::VectorXd w(2);
    w << 0.3, 0.7;
    Eigen::MatrixXd mu = frechet_mean(w, {a, b});
    CHECK(loss_grad_w(w, {a, b}, mu).norm() < 1e-12);

    Eigen::MatrixXd target = laplacian_from_edges(Eigen::VectorXd::Zero(3), 3);
    Eigen::VectorXd g = loss_grad_w(w, {a, b}, target);
    CHECK(g[0] == doctest::Approx(2.0 * (mu - target).cwiseProduct(a).sum()));
    CHECK(g[1] == doctest::Approx(2.0 * (mu - target).cwiseProduct(b).sum()));
}
