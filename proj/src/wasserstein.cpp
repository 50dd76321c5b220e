#include "e2m/wasserstein.hpp"

#include <algorithm>
#include <cmath>

#include "e2m/simplex.hpp"
#include "e2m/stats.hpp"

namespace e2m::wasserstein {

void validate_quantiles(const Eigen::VectorXd& q) {
    if (q.size() < 2) throw ValidationError("quantile vector: needs at least 2 nodes");
    for (Eigen::Index k = 0; k + 1 < q.size(); ++k) {
        if (!std::isfinite(q[k]))
            throw ValidationError("quantile vector: non-finite entry at node " + std::to_string(k));
        if (q[k] > q[k + 1] + 1e-9)
            throw ValidationError("quantile vector: decreasing between nodes " +
                                  std::to_string(k) + " and " + std::to_string(k + 1));
    }
    if (!std::isfinite(q[q.size() - 1]))
        throw ValidationError("quantile vector: non-finite entry at last node");
}

static void check_same_grid(Eigen::Index a, Eigen::Index b) {
    if (a != b)
        throw ValidationError("quantile vectors on mismatched grids (" + std::to_string(a) +
                              " vs " + std::to_string(b) + ")");
}

double w2_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    check_same_grid(a.size(), b.size());
    return std::sqrt((a - b).squaredNorm() / static_cast<double>(a.size()));
}

Eigen::VectorXd frechet_mean(const Eigen::VectorXd& w, const Eigen::MatrixXd& anchors) {
    if (w.size() != anchors.cols())
        throw ValidationError("frechet_mean: weight/anchor count mismatch");
    return anchors * validate_weights(w);
}

Eigen::VectorXd loss_grad_w(const Eigen::VectorXd& w, const Eigen::MatrixXd& anchors,
                            const Eigen::VectorXd& target) {
    check_same_grid(anchors.rows(), target.size());
    Eigen::VectorXd residual = frechet_mean(w, anchors) - target;
    return (2.0 / static_cast<double>(anchors.rows())) * (anchors.transpose() * residual);
}

Eigen::VectorXd quantile_from_samples(std::vector<double> samples, const ProbGrid& grid) {
    if (samples.empty()) throw ValidationError("quantile_from_samples: empty sample");
    std::sort(samples.begin(), samples.end());
    const auto s = static_cast<double>(samples.size());
    Eigen::VectorXd q(grid.size);
    for (int k = 0; k < grid.size; ++k) {
        auto idx = static_cast<std::size_t>(std::ceil(grid.point(k) * s));
        if (idx < 1) idx = 1;
        if (idx > samples.size()) idx = samples.size();
        q[k] = samples[idx - 1];
    }
    return q;
}

Eigen::VectorXd gaussian_quantiles(double mean, double sd, const ProbGrid& grid) {
    if (sd < 0.0) throw ValidationError("gaussian_quantiles: sd must be >= 0");
    Eigen::VectorXd q(grid.size);
    for (int k = 0; k < grid.size; ++k) q[k] = mean + sd * norm_quantile(grid.point(k));
    return q;
}

Eigen::VectorXd quantiles_from_histogram(const Eigen::VectorXd& bin_edges,
                                         const Eigen::VectorXd& counts, const ProbGrid& grid) {
    const Eigen::Index nbins = counts.size();
    if (bin_edges.size() != nbins + 1)
        throw ValidationError("quantiles_from_histogram: need B+1 edges for B counts");
    for (Eigen::Index b = 0; b < nbins; ++b) {
        if (counts[b] < 0.0) throw ValidationError("quantiles_from_histogram: negative count");
        if (bin_edges[b + 1] <= bin_edges[b])
            throw ValidationError("quantiles_from_histogram: edges not strictly ascending");
    }
    const double total = counts.sum();
    if (total <= 0.0) throw ValidationError("quantiles_from_histogram: all-zero counts");

    // Cumulative mass at edges; the CDF is linear inside each bin.
    Eigen::VectorXd cum(nbins + 1);
    cum[0] = 0.0;
    for (Eigen::Index b = 0; b < nbins; ++b) cum[b + 1] = cum[b] + counts[b] / total;
    cum[nbins] = 1.0;

    Eigen::VectorXd q(grid.size);
    Eigen::Index b = 0;
    for (int k = 0; k < grid.size; ++k) {
        const double p = grid.point(k);
        while (b + 1 < nbins && cum[b + 1] <= p) ++b;
        // skip empty bins whose cumulative mass equals p from the left
        while (cum[b + 1] <= cum[b] && b + 1 < nbins) ++b;
        const double mass = cum[b + 1] - cum[b];
        const double frac = mass > 0.0 ? (p - cum[b]) / mass : 0.0;
        q[k] = bin_edges[b] + frac * (bin_edges[b + 1] - bin_edges[b]);
    }
    return q;
}

}  // namespace e2m::wasserstein
