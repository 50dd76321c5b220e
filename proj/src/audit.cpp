#include "e2m/audit.hpp"

#include <cmath>
#include <set>

#include "e2m/network.hpp"
#include "e2m/rng.hpp"
#include "e2m/simplex.hpp"

namespace e2m {

void AnchorSet::validate(const Space& space) const {
    if (points.empty()) throw ValidationError("anchor set: needs at least one anchor");
    if (!source_indices.empty()) {
        if (source_indices.size() != points.size())
            throw ValidationError("anchor set: index/point count mismatch");
        std::set<int> seen(source_indices.begin(), source_indices.end());
        if (seen.size() != source_indices.size())
            throw ValidationError("anchor set: duplicate source indices");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        try {
            space.validate(points[i]);
        } catch (const ValidationError& e) {
            throw ValidationError("anchor " + std::to_string(i) + ": " + e.what());
        }
    }
}

double pairwise_diameter(const Space& space, const AnchorSet& anchors) {
    anchors.validate(space);
    double diam = 0.0;
    for (std::size_t i = 0; i < anchors.points.size(); ++i)
        for (std::size_t j = i + 1; j < anchors.points.size(); ++j)
            diam = std::max(diam, space.distance(anchors.points[i], anchors.points[j]));
    return diam;
}

LipschitzReport audit_lipschitz(const Space& space, const AnchorSet& anchors, int trials,
                                std::uint64_t seed) {
    if (!space.is_hadamard())
        throw Error("non-Hadamard space: bound not guaranteed");
    if (trials < 1) throw ValidationError("audit_lipschitz: trials must be >= 1");
    anchors.validate(space);

    LipschitzReport report;
    report.trials = trials;
    report.diameter_estimate = pairwise_diameter(space, anchors);
    const double d_hat = report.diameter_estimate + 1e-12;
    const auto m = static_cast<Eigen::Index>(anchors.points.size());
    const double sqrt_m = std::sqrt(static_cast<double>(m));

    auto rng = make_rng(seed, "lipschitz-audit");
    for (int t = 0; t < trials; ++t) {
        Eigen::VectorXd w1 = sample_simplex(m, rng);
        Eigen::VectorXd w2 = sample_simplex(m, rng);
        const double lhs =
            space.distance(space.frechet_mean(w1, anchors.points), space.frechet_mean(w2, anchors.points));
        const double rhs = d_hat * sqrt_m * (w1 - w2).norm();
        if (lhs > rhs) ++report.violations;
        const double ratio = (lhs == 0.0) ? 0.0 : lhs / rhs;
        report.max_ratio = std::max(report.max_ratio, ratio);
    }
    return report;
}

Point random_point(const Space& space, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    switch (space.tag()) {
        case SpaceTag::Wasserstein1d: {
            // random start, non-negative increments
            Eigen::VectorXd q(space.grid_size());
            q[0] = 2.0 * gauss(rng);
            for (Eigen::Index k = 1; k < q.size(); ++k) q[k] = q[k - 1] + 0.1 * unif(rng);
            return q;
        }
        case SpaceTag::Network: {
            Eigen::VectorXd edges(network::num_edges(space.num_nodes()));
            for (Eigen::Index e = 0; e < edges.size(); ++e)
                edges[e] = unif(rng) < 0.5 ? unif(rng) : 0.0;
            return network::laplacian_from_edges(edges, space.num_nodes());
        }
        case SpaceTag::SpdPower:
        case SpaceTag::SpdBw: {
            const int l = space.dim();
            Eigen::MatrixXd g(l, l);
            for (Eigen::Index i = 0; i < l; ++i)
                for (Eigen::Index j = 0; j < l; ++j) g(i, j) = gauss(rng);
            return (g * g.transpose() / l + 0.1 * Eigen::MatrixXd::Identity(l, l)).eval();
        }
    }
    throw Error("invalid space");
}

GradCheckReport gradient_check(const Space& space, int instances, int num_anchors,
                               std::uint64_t seed) {
    if (instances < 1 || num_anchors < 2)
        throw ValidationError("gradient_check: need instances >= 1 and num_anchors >= 2");
    auto rng = make_rng(seed, "gradient-check");
    const auto m = static_cast<Eigen::Index>(num_anchors);
    // Flat losses are quadratic in w, so central differences carry no
    // truncation error there; the curved solve wants a smaller step.
    const double h = space.is_flat() ? 1e-4 : 1e-5;

    GradCheckReport report;
    report.instances = instances;
    report.directions = num_anchors - 1;
    for (int t = 0; t < instances; ++t) {
        std::vector<Point> anchors;
        for (int i = 0; i < num_anchors; ++i) anchors.push_back(random_point(space, rng));
        Point target = random_point(space, rng);
        // Keep w interior so w +- h(e_i - e_j) stays on the simplex.
        Eigen::VectorXd w = 0.5 * sample_simplex(m, rng) +
                            0.5 * Eigen::VectorXd::Constant(m, 1.0 / m);
        Eigen::VectorXd grad = space.loss_grad_w(w, anchors, target);

        auto loss = [&](const Eigen::VectorXd& v) {
            const double d = space.distance(space.frechet_mean(v, anchors), target);
            return d * d;
        };
        for (Eigen::Index i = 0; i + 1 < m; ++i) {
            Eigen::VectorXd wp = w, wm = w;
            wp[i] += h;
            wp[i + 1] -= h;
            wm[i] -= h;
            wm[i + 1] += h;
            const double fd = (loss(wp) - loss(wm)) / (2.0 * h);
            const double ana = grad[i] - grad[i + 1];
            const double rel = std::abs(ana - fd) / std::max(1.0, std::abs(ana) + std::abs(fd));
            report.max_rel_err = std::max(report.max_rel_err, rel);
        }
    }
    return report;
}

}  // namespace e2m
