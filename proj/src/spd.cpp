#include "e2m/spd.hpp"

#include <cmath>
#include <limits>

#include "e2m/linalg.hpp"
#include "e2m/simplex.hpp"

namespace e2m::spd {

void validate_spd(const Eigen::MatrixXd& a, bool strictly_positive) {
    check_symmetric(a, "spd");
    const double lmin = min_eigenvalue(a);
    if (strictly_positive) {
        if (lmin <= 0.0)
            throw ValidationError("spd: matrix is singular (min eigenvalue " +
                                  std::to_string(lmin) + ")");
    } else if (lmin < -1e-10) {
        throw ValidationError("spd: not PSD (min eigenvalue " + std::to_string(lmin) + ")");
    }
}

static void check_same_dim(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ValidationError("spd dimension mismatch");
}

double power_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double alpha) {
    check_same_dim(a, b);
    validate_spd(a);
    validate_spd(b);
    SymFun f = SymFun::power(alpha);
    return (sym_apply(a, f) - sym_apply(b, f)).norm() / alpha;
}

Eigen::MatrixXd power_frechet_mean(const Eigen::VectorXd& w,
                                   const std::vector<Eigen::MatrixXd>& anchors) {
    if (static_cast<std::size_t>(w.size()) != anchors.size())
        throw ValidationError("power_frechet_mean: weight/anchor count mismatch");
    Eigen::VectorXd wn = validate_weights(w);
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(anchors[0].rows(), anchors[0].cols());
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        check_same_dim(anchors[0], anchors[i]);
        validate_spd(anchors[i]);
        acc += wn[i] * sym_apply(anchors[i], SymFun::sqrt());
    }
    return sym_apply(acc, SymFun::square());
}

Eigen::VectorXd power_loss_grad_w(const Eigen::VectorXd& w,
                                  const std::vector<Eigen::MatrixXd>& anchors,
                                  const Eigen::MatrixXd& target) {
    Eigen::VectorXd wn = validate_weights(w);
    validate_spd(target);
    std::vector<Eigen::MatrixXd> roots(anchors.size());
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(target.rows(), target.cols());
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        validate_spd(anchors[i]);
        roots[i] = sym_apply(anchors[i], SymFun::sqrt());
        acc += wn[i] * roots[i];
    }
    Eigen::MatrixXd residual = acc - sym_apply(target, SymFun::sqrt());
    Eigen::VectorXd grad(w.size());
    for (std::size_t i = 0; i < anchors.size(); ++i)
        grad[static_cast<Eigen::Index>(i)] = 8.0 * residual.cwiseProduct(roots[i]).sum();
    return grad;
}

double bw_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    check_same_dim(a, b);
    validate_spd(a);
    validate_spd(b);
    Eigen::MatrixXd r = sym_apply(a, SymFun::sqrt());
    Eigen::MatrixXd cross = sym_apply(sym_part(r * b * r), SymFun::sqrt());
    const double d2 = a.trace() + b.trace() - 2.0 * cross.trace();
    return std::sqrt(std::max(0.0, d2));
}

Eigen::MatrixXd bw_distance_grad(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    EigenPair ea = sym_eigen(a);
    Eigen::MatrixXd r = sym_apply(ea, SymFun::sqrt());
    Eigen::MatrixXd m = sym_part(r * b * r);
    Eigen::MatrixXd mbar = -sym_apply(m, SymFun::inv_sqrt());  // d(-2 tr sqrt(M))/dM
    Eigen::MatrixXd rbar = sym_part(mbar * r * b + b * r * mbar);
    return Eigen::MatrixXd::Identity(a.rows(), a.cols()) + dk_directional(ea, SymFun::sqrt(), rbar);
}

namespace {

constexpr double kAnchorRidge = 1e-10;

struct BwProblem {
    std::vector<Eigen::MatrixXd> anchors;  // ridge-regularized
    Eigen::VectorXd w;
};

BwProblem prepare(const Eigen::VectorXd& w, const std::vector<Eigen::MatrixXd>& anchors) {
    if (anchors.empty()) throw ValidationError("bw_barycenter: no anchors");
    if (static_cast<std::size_t>(w.size()) != anchors.size())
        throw ValidationError("bw_barycenter: weight/anchor count mismatch");
    BwProblem prob;
    prob.w = validate_weights(w);
    const Eigen::Index l = anchors[0].rows();
    prob.anchors.reserve(anchors.size());
    for (const auto& a : anchors) {
        check_same_dim(anchors[0], a);
        validate_spd(a);
        prob.anchors.push_back(a + kAnchorRidge * Eigen::MatrixXd::Identity(l, l));
    }
    return prob;
}

// One fixed-point step; throws on a singular iterate.
Eigen::MatrixXd bw_step(const Eigen::MatrixXd& s, const BwProblem& prob) {
    EigenPair es = sym_eigen(s);
    if (es.values.minCoeff() <= 0.0)
        throw Error("bw_barycenter: singular iterate (min eigenvalue " +
                    std::to_string(es.values.minCoeff()) + ")");
    Eigen::MatrixXd r = sym_apply(es, SymFun::sqrt());
    Eigen::MatrixXd q = sym_apply(es, SymFun::inv_sqrt());
    Eigen::MatrixXd mid = Eigen::MatrixXd::Zero(s.rows(), s.cols());
    for (std::size_t i = 0; i < prob.anchors.size(); ++i)
        mid += prob.w[static_cast<Eigen::Index>(i)] *
               sym_apply(sym_part(r * prob.anchors[i] * r), SymFun::sqrt());
    return sym_part(q * sym_part(mid * mid) * q);
}

}  // namespace

std::vector<Eigen::MatrixXd> bw_barycenter_trace(const Eigen::VectorXd& w,
                                                 const std::vector<Eigen::MatrixXd>& anchors,
                                                 const BwSolveConfig& cfg) {
    cfg.validate();
    BwProblem prob = prepare(w, anchors);
    std::vector<Eigen::MatrixXd> trace;
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(anchors[0].rows(), anchors[0].cols());
    for (std::size_t i = 0; i < prob.anchors.size(); ++i)
        s += prob.w[static_cast<Eigen::Index>(i)] * prob.anchors[i];
    trace.push_back(s);
    double residual = std::numeric_limits<double>::infinity();
    for (int t = 0; t < cfg.max_iter; ++t) {
        Eigen::MatrixXd next = bw_step(s, prob);
        residual = (next - s).norm();
        s = next;
        trace.push_back(s);
        if (residual <= cfg.tol) return trace;
    }
    throw Error("bw_barycenter: no convergence after " + std::to_string(cfg.max_iter) +
                " iterations (last residual " + std::to_string(residual) + ")");
}

Eigen::MatrixXd bw_barycenter(const Eigen::VectorXd& w,
                              const std::vector<Eigen::MatrixXd>& anchors,
                              const BwSolveConfig& cfg) {
    return bw_barycenter_trace(w, anchors, cfg).back();
}

BwValueAndGrad bw_value_and_grad(const Eigen::VectorXd& w,
                                 const std::vector<Eigen::MatrixXd>& anchors,
                                 const Eigen::MatrixXd& target, const BwSolveConfig& cfg) {
    validate_spd(target);
    BwProblem prob = prepare(w, anchors);
    std::vector<Eigen::MatrixXd> trace = bw_barycenter_trace(w, anchors, cfg);
    const Eigen::MatrixXd& sol = trace.back();
    const auto n = static_cast<Eigen::Index>(anchors.size());

    Eigen::VectorXd wbar = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd sbar = bw_distance_grad(sol, target);

    // Reverse sweep over the last unroll_k fixed-point iterations; the iterate
    // unroll_k steps back is treated as a constant.
    const auto steps = static_cast<int>(trace.size()) - 1;
    const int first = std::max(0, steps - cfg.unroll_k);
    for (int t = steps - 1; t >= first; --t) {
        const Eigen::MatrixXd& s = trace[static_cast<std::size_t>(t)];
        EigenPair es = sym_eigen(s);
        Eigen::MatrixXd r = sym_apply(es, SymFun::sqrt());
        Eigen::MatrixXd q = sym_apply(es, SymFun::inv_sqrt());
        std::vector<Eigen::MatrixXd> cross_roots(anchors.size());
        Eigen::MatrixXd mid = Eigen::MatrixXd::Zero(s.rows(), s.cols());
        for (std::size_t i = 0; i < prob.anchors.size(); ++i) {
            cross_roots[i] = sym_apply(sym_part(r * prob.anchors[i] * r), SymFun::sqrt());
            mid += prob.w[static_cast<Eigen::Index>(i)] * cross_roots[i];
        }
        Eigen::MatrixXd p = sym_part(mid * mid);

        Eigen::MatrixXd pbar = sym_part(q * sbar * q);
        Eigen::MatrixXd qbar = sym_part(sbar * q * p + p * q * sbar);
        Eigen::MatrixXd nbar = sym_part(pbar * mid + mid * pbar);
        Eigen::MatrixXd rbar = Eigen::MatrixXd::Zero(s.rows(), s.cols());
        for (std::size_t i = 0; i < prob.anchors.size(); ++i) {
            wbar[static_cast<Eigen::Index>(i)] += nbar.cwiseProduct(cross_roots[i]).sum();
            Eigen::MatrixXd mbar = dk_directional(sym_part(r * prob.anchors[i] * r),
                                                  SymFun::sqrt(),
                                                  prob.w[static_cast<Eigen::Index>(i)] * nbar);
            rbar += sym_part(mbar * r * prob.anchors[i] + prob.anchors[i] * r * mbar);
        }
        sbar = dk_directional(es, SymFun::sqrt(), rbar) +
               dk_directional(es, SymFun::inv_sqrt(), qbar);
    }
    if (first == 0) {
        // Reached the Euclidean-mean initialization; it also depends on w.
        for (std::size_t i = 0; i < prob.anchors.size(); ++i)
            wbar[static_cast<Eigen::Index>(i)] += sbar.cwiseProduct(prob.anchors[i]).sum();
    }
    return {sol, wbar};
}

Eigen::VectorXd bw_loss_grad_w(const Eigen::VectorXd& w,
                               const std::vector<Eigen::MatrixXd>& anchors,
                               const Eigen::MatrixXd& target, const BwSolveConfig& cfg) {
    return bw_value_and_grad(w, anchors, target, cfg).grad_w;
}

}  // namespace e2m::spd
