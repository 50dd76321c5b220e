#pragma once

#include <Eigen/Dense>

#include "e2m/common.hpp"

namespace e2m {

// Scalar functions lifted to symmetric matrices through the spectral map.
struct SymFun {
    enum class Kind { Power, Sqrt, Square, InvSqrt };
    Kind kind;
    double alpha = 0.0;  // only for Kind::Power

    static SymFun power(double a) { return {Kind::Power, a}; }
    static SymFun sqrt() { return {Kind::Sqrt, 0.5}; }
    static SymFun square() { return {Kind::Square, 2.0}; }
    static SymFun inv_sqrt() { return {Kind::InvSqrt, -0.5}; }

    double eval(double x) const;
    double deriv(double x) const;
    // Functions with fractional or negative exponents need a PSD (resp. PD)
    // argument; Square is entire.
    bool needs_psd() const { return kind != Kind::Square; }
};

struct EigenPair {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // orthogonal, columns match values
};

// Throws ValidationError unless a is symmetric within 1e-10 relative tolerance.
void check_symmetric(const Eigen::MatrixXd& a, const char* who);

// Full spectral decomposition of a symmetric matrix, eigenvalues ascending.
EigenPair sym_eigen(const Eigen::MatrixXd& a);

// U f(clip(Lambda)) U^T. Eigenvalues in [-1e-10, 0) are clipped to 0 for
// PSD-only functions; anything below -1e-10 is rejected as "not PSD".
Eigen::MatrixXd sym_apply(const Eigen::MatrixXd& a, SymFun f);
Eigen::MatrixXd sym_apply(const EigenPair& eig, SymFun f);

// Daleckii-Krein directional derivative D f(a)[h]: first divided differences
// of f at the eigenvalues, diagonal entries f'(lambda_i).
Eigen::MatrixXd dk_directional(const Eigen::MatrixXd& a, SymFun f, const Eigen::MatrixXd& h);
Eigen::MatrixXd dk_directional(const EigenPair& eig, SymFun f, const Eigen::MatrixXd& h);

// Smallest eigenvalue, for PSD validation.
double min_eigenvalue(const Eigen::MatrixXd& a);

inline Eigen::MatrixXd sym_part(const Eigen::MatrixXd& a) {
    return 0.5 * (a + a.transpose());
}

}  // namespace e2m
