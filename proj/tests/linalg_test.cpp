#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "e2m/linalg.hpp"

using namespace e2m;

namespace {

Eigen::MatrixXd random_sym(std::mt19937_64& rng, int n, double spread = 1.0) {
    std::normal_distribution<double> gauss(0.0, spread);
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
    return sym_part(a);
}

Eigen::MatrixXd random_spd(std::mt19937_64& rng, int n) {
    Eigen::MatrixXd a = random_sym(rng, n);
    return (a * a.transpose() / n + 0.1 * Eigen::MatrixXd::Identity(n, n)).eval();
}

}  // namespace

TEST_CASE("sym_eigen recovers a known spectrum") {
    // eigenvalues 1 and 3, eigenvectors (1,1)/sqrt2 and (1,-1)/sqrt2
    Eigen::MatrixXd a(2, 2);
    a << 2, -1, -1, 2;
    EigenPair eig = sym_eigen(a);
    CHECK(eig.values[0] == doctest::Approx(1.0));
    CHECK(eig.values[1] == doctest::Approx(3.0));
    Eigen::MatrixXd recon = eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
    CHECK((recon - a).norm() < 1e-12);
    CHECK((eig.vectors.transpose() * eig.vectors - Eigen::MatrixXd::Identity(2, 2)).norm() <
          1e-12);
}

TEST_CASE("sym_eigen reconstruction and orthogonality on random matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        Eigen::MatrixXd a = random_sym(rng, n);
        EigenPair eig = sym_eigen(a);
        for (Eigen::Index i = 0; i + 1 < eig.values.size(); ++i)
            CHECK(eig.values[i] <= eig.values[i + 1]);
        Eigen::MatrixXd recon = eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
        CHECK((recon - a).norm() < 1e-10 * std::max(1.0, a.norm()));
    }
}

TEST_CASE("sym_apply computes matrix square roots") {
    std::mt19937_64 rng(11);
    Eigen::MatrixXd a = random_spd(rng, 4);
    Eigen::MatrixXd r = sym_apply(a, SymFun::sqrt());
    CHECK((r * r - a).norm() < 1e-10);
    Eigen::MatrixXd inv_r = sym_apply(a, SymFun::inv_sqrt());
    CHECK((r * inv_r - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-10);
}

TEST_CASE("sym_apply rejects non-PSD input for fractional powers") {
    Eigen::MatrixXd a(2, 2);
    a << 1, 0, 0, -1;
    CHECK_THROWS_WITH_AS(sym_apply(a, SymFun::sqrt()), doctest::Contains("not PSD"),
                         ValidationError);
    // Square is entire, so indefinite input is fine.
    Eigen::MatrixXd sq = sym_apply(a, SymFun::square());
    CHECK((sq - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("check_symmetric rejects asymmetry") {
    Eigen::MatrixXd a(2, 2);
    a << 1, 2, 2.1, 1;
    CHECK_THROWS_AS(check_symmetric(a, "test"), ValidationError);
}

TEST_CASE("dk_directional matches finite differences of the matrix function") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::MatrixXd a = random_spd(rng, 3);
        Eigen::MatrixXd h = random_sym(rng, 3, 0.5);
        for (SymFun f : {SymFun::sqrt(), SymFun::inv_sqrt(), SymFun::square(),
                         SymFun::power(0.3)}) {
            const double eps = 1e-6;
            Eigen::MatrixXd fd =
                (sym_apply((a + eps * h).eval(), f) - sym_apply((a - eps * h).eval(), f)) /
                (2.0 * eps);
            Eigen::MatrixXd dk = dk_directional(a, f, h);
            CHECK((dk - fd).norm() < 1e-6 * std::max(1.0, fd.norm()));
        }
    }
}

TEST_CASE("dk_directional handles repeated eigenvalues via the derivative rule") {
    Eigen::MatrixXd a = 4.0 * Eigen::MatrixXd::Identity(3, 3);
    std::mt19937_64 rng(17);
    Eigen::MatrixXd h = random_sym(rng, 3);
    // D sqrt(4I)[H] = H / (2*2)
    Eigen::MatrixXd dk = dk_directional(a, SymFun::sqrt(), h);
    CHECK((dk - h / 4.0).norm() < 1e-12);
}

TEST_CASE("dk_directional rejects singular points of non-smooth functions") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
    a(0, 0) = 1.0;
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(2, 2);
    CHECK_THROWS_WITH_AS(dk_directional(a, SymFun::sqrt(), h),
                         doctest::Contains("singular"), Error);
}

TEST_CASE("min_eigenvalue agrees with the spectrum") {
    Eigen::MatrixXd a(2, 2);
    a << 2, -1, -1, 2;
    CHECK(min_eigenvalue(a) == doctest::Approx(1.0));
}
