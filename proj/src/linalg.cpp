#include "e2m/linalg.hpp"

#include <cmath>

namespace e2m {

namespace {
constexpr double kPsdTol = 1e-10;
}

double SymFun::eval(double x) const {
    switch (kind) {
        case Kind::Power: return std::pow(x, alpha);
        case Kind::Sqrt: return std::sqrt(x);
        case Kind::Square: return x * x;
        case Kind::InvSqrt: return 1.0 / std::sqrt(x);
    }
    throw Error("invalid SymFun");
}

double SymFun::deriv(double x) const {
    switch (kind) {
        case Kind::Power: return alpha * std::pow(x, alpha - 1.0);
        case Kind::Sqrt: return 0.5 / std::sqrt(x);
        case Kind::Square: return 2.0 * x;
        case Kind::InvSqrt: return -0.5 / (x * std::sqrt(x));
    }
    throw Error("invalid SymFun");
}

void check_symmetric(const Eigen::MatrixXd& a, const char* who) {
    if (a.rows() != a.cols())
        throw ValidationError(std::string(who) + ": matrix is not square");
    const double scale = 1.0 + a.norm();
    if ((a - a.transpose()).norm() > 1e-10 * scale)
        throw ValidationError(std::string(who) + ": matrix is not symmetric");
}

namespace {

// Closed-form 2x2 spectral decomposition; this is the hot path inside the
// Bures-Wasserstein fixed-point iteration.
EigenPair sym_eigen_2x2(const Eigen::MatrixXd& m) {
    const double a = m(0, 0), b = 0.5 * (m(0, 1) + m(1, 0)), c = m(1, 1);
    EigenPair out{Eigen::VectorXd(2), Eigen::MatrixXd(2, 2)};
    const double half_tr = 0.5 * (a + c);
    const double disc = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
    const double l0 = half_tr - disc, l1 = half_tr + disc;
    out.values << l0, l1;
    if (disc <= 1e-300 || std::abs(b) == 0.0) {
        if (a <= c)
            out.vectors = Eigen::MatrixXd::Identity(2, 2);
        else
            out.vectors << 0, 1, 1, 0;
        return out;
    }
    // Eigenvector of l0: pick the better-conditioned of the two rows.
    Eigen::Vector2d v0(b, l0 - a), v1(l0 - c, b);
    Eigen::Vector2d v = v0.norm() >= v1.norm() ? v0 : v1;
    v.normalize();
    out.vectors.col(0) = v;
    out.vectors.col(1) = Eigen::Vector2d(-v[1], v[0]);
    return out;
}

}  // namespace

EigenPair sym_eigen(const Eigen::MatrixXd& a) {
    check_symmetric(a, "sym_eigen");
    if (a.rows() == 2) return sym_eigen_2x2(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success)
        throw Error("sym_eigen: eigendecomposition did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

// Clip rounding-level negative eigenvalues to zero; reject genuinely
// indefinite inputs for PSD-only functions.
Eigen::VectorXd clipped_values(const EigenPair& eig, SymFun f) {
    Eigen::VectorXd vals = eig.values;
    if (f.needs_psd()) {
        for (Eigen::Index i = 0; i < vals.size(); ++i) {
            if (vals[i] < -kPsdTol)
                throw ValidationError("sym_apply: not PSD (eigenvalue " +
                                      std::to_string(vals[i]) + ")");
            if (vals[i] < 0.0) vals[i] = 0.0;
        }
    }
    return vals;
}

}  // namespace

Eigen::MatrixXd sym_apply(const EigenPair& eig, SymFun f) {
    Eigen::VectorXd vals = clipped_values(eig, f);
    Eigen::VectorXd fvals(vals.size());
    for (Eigen::Index i = 0; i < vals.size(); ++i) fvals[i] = f.eval(vals[i]);
    Eigen::MatrixXd out = eig.vectors * fvals.asDiagonal() * eig.vectors.transpose();
    return sym_part(out);
}

Eigen::MatrixXd sym_apply(const Eigen::MatrixXd& a, SymFun f) {
    return sym_apply(sym_eigen(a), f);
}

Eigen::MatrixXd dk_directional(const EigenPair& eig, SymFun f, const Eigen::MatrixXd& h) {
    Eigen::VectorXd vals = clipped_values(eig, f);
    const Eigen::Index l = vals.size();
    if (f.needs_psd() && f.kind != SymFun::Kind::Power) {
        // sqrt / inv-sqrt derivatives blow up at zero eigenvalues
        if (vals.minCoeff() <= 0.0)
            throw ValidationError("dk_directional: derivative singular (zero eigenvalue)");
    } else if (f.kind == SymFun::Kind::Power && f.alpha < 1.0 && vals.minCoeff() <= 0.0) {
        throw ValidationError("dk_directional: derivative singular (zero eigenvalue)");
    }
    Eigen::MatrixXd phi(l, l);
    for (Eigen::Index i = 0; i < l; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double li = vals[i], lj = vals[j];
            double v;
            if (std::abs(li - lj) <= 1e-12 * (1.0 + std::abs(li) + std::abs(lj)))
                v = f.deriv(0.5 * (li + lj));
            else
                v = (f.eval(li) - f.eval(lj)) / (li - lj);
            phi(i, j) = v;
            phi(j, i) = v;
        }
    }
    const Eigen::MatrixXd& u = eig.vectors;
    Eigen::MatrixXd inner = (u.transpose() * sym_part(h) * u).cwiseProduct(phi);
    return sym_part(u * inner * u.transpose());
}

Eigen::MatrixXd dk_directional(const Eigen::MatrixXd& a, SymFun f, const Eigen::MatrixXd& h) {
    return dk_directional(sym_eigen(a), f, h);
}

double min_eigenvalue(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace e2m
