#pragma once

#include <Eigen/Dense>
#include <vector>

#include "e2m/common.hpp"

namespace e2m::spd {

struct BwSolveConfig {
    int max_iter = 50;
    double tol = 1e-10;   // Frobenius change between iterates
    int unroll_k = 20;    // iterations differentiated through for the gradient

    void validate() const {
        if (max_iter < 1) throw ValidationError("BwSolveConfig: max_iter must be >= 1");
        if (!(tol > 0.0)) throw ValidationError("BwSolveConfig: tol must be > 0");
        if (unroll_k < 1 || unroll_k > max_iter)
            throw ValidationError("BwSolveConfig: unroll_k must lie in [1, max_iter]");
    }
};

// Symmetric within 1e-9, PSD up to -1e-10 rounding; strictly_positive
// additionally requires the smallest eigenvalue to be > 0.
void validate_spd(const Eigen::MatrixXd& a, bool strictly_positive = false);

// Power metric with exponent 1/2: d(A,B) = 2 ||A^{1/2} - B^{1/2}||_F.
double power_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double alpha = 0.5);

// Closed form (sum_i w_i Y_i^{1/2})^2; the power transform flattens the space.
Eigen::MatrixXd power_frechet_mean(const Eigen::VectorXd& w,
                                   const std::vector<Eigen::MatrixXd>& anchors);

// Component i = 8 <sum_k w_k Y_k^{1/2} - target^{1/2}, Y_i^{1/2}>_F.
Eigen::VectorXd power_loss_grad_w(const Eigen::VectorXd& w,
                                  const std::vector<Eigen::MatrixXd>& anchors,
                                  const Eigen::MatrixXd& target);

// d^2_BW(A,B) = Tr(A) + Tr(B) - 2 Tr((A^{1/2} B A^{1/2})^{1/2}).
double bw_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Fixed-point barycenter iteration
//   S_{t+1} = S_t^{-1/2} (sum_i w_i (S_t^{1/2} Y_i S_t^{1/2})^{1/2})^2 S_t^{-1/2},
// initialized at the Euclidean weighted mean. Anchors are regularized by
// +1e-10 I before the solve.
Eigen::MatrixXd bw_barycenter(const Eigen::VectorXd& w,
                              const std::vector<Eigen::MatrixXd>& anchors,
                              const BwSolveConfig& cfg = {});

// Same solve but returning every iterate (S_0 .. S_*), for the unrolled gradient.
std::vector<Eigen::MatrixXd> bw_barycenter_trace(const Eigen::VectorXd& w,
                                                 const std::vector<Eigen::MatrixXd>& anchors,
                                                 const BwSolveConfig& cfg = {});

// Gradient of A -> d^2_BW(A, b) at a.
Eigen::MatrixXd bw_distance_grad(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Gradient of w -> d^2_BW(mu(w), target), reverse-mode through the last
// unroll_k fixed-point iterations.
Eigen::VectorXd bw_loss_grad_w(const Eigen::VectorXd& w,
                               const std::vector<Eigen::MatrixXd>& anchors,
                               const Eigen::MatrixXd& target, const BwSolveConfig& cfg = {});

// Barycenter and weight gradient from a single solve.
struct BwValueAndGrad {
    Eigen::MatrixXd barycenter;
    Eigen::VectorXd grad_w;
};
BwValueAndGrad bw_value_and_grad(const Eigen::VectorXd& w,
                                 const std::vector<Eigen::MatrixXd>& anchors,
                                 const Eigen::MatrixXd& target, const BwSolveConfig& cfg = {});

}  // namespace e2m::spd
