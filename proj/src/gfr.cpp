#include "e2m/gfr.hpp"

#include <algorithm>

#include "e2m/linalg.hpp"
#include "e2m/network.hpp"
#include "e2m/wasserstein.hpp"

namespace e2m::gfr {

namespace {

constexpr double kEigenFloor = 1e-8;

Point repair(const Space& space, const Eigen::VectorXd& w, const std::vector<Point>& y) {
    switch (space.tag()) {
        case SpaceTag::Wasserstein1d: {
            Eigen::VectorXd q = Eigen::VectorXd::Zero(space.grid_size());
            for (std::size_t i = 0; i < y.size(); ++i) q += w[static_cast<Eigen::Index>(i)] * y[i];
            return isotonic_projection(q);
        }
        case SpaceTag::Network: {
            Eigen::MatrixXd l = Eigen::MatrixXd::Zero(space.num_nodes(), space.num_nodes());
            for (std::size_t i = 0; i < y.size(); ++i) l += w[static_cast<Eigen::Index>(i)] * y[i];
            // Off-diagonals are -edge weights: clip any that went positive,
            // then rebuild the diagonal so row sums are zero again.
            for (Eigen::Index r = 0; r < l.rows(); ++r)
                for (Eigen::Index c = 0; c < l.cols(); ++c)
                    if (r != c && l(r, c) > 0.0) l(r, c) = 0.0;
            for (Eigen::Index r = 0; r < l.rows(); ++r) {
                l(r, r) = 0.0;
                l(r, r) = -l.row(r).sum();
            }
            return l;
        }
        case SpaceTag::SpdPower: {
            // Combine in power coordinates, clip the spectrum, map back.
            const SymFun pow_a = SymFun::power(space.alpha());
            Eigen::MatrixXd s = Eigen::MatrixXd::Zero(space.dim(), space.dim());
            for (std::size_t i = 0; i < y.size(); ++i)
                s += w[static_cast<Eigen::Index>(i)] * sym_apply(y[i], pow_a);
            EigenPair eig = sym_eigen(sym_part(s));
            for (Eigen::Index k = 0; k < eig.values.size(); ++k)
                eig.values[k] = std::max(eig.values[k], kEigenFloor);
            Eigen::MatrixXd clipped =
                eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
            return sym_apply(sym_part(clipped), SymFun::power(1.0 / space.alpha()));
        }
        case SpaceTag::SpdBw: {
            Eigen::VectorXd wc = w.cwiseMax(0.0);
            const double total = wc.sum();
            if (!(total > 0.0)) throw Error("gfr: all projection weights clipped to zero");
            wc /= total;
            return spd::bw_barycenter(wc, y, space.bw_config());
        }
    }
    throw Error("gfr: invalid space");
}

}  // namespace

Eigen::VectorXd isotonic_projection(const Eigen::VectorXd& v) {
    const auto n = v.size();
    // PAV with uniform weights: blocks of (mean, count).
    std::vector<double> mean;
    std::vector<Eigen::Index> count;
    mean.reserve(static_cast<std::size_t>(n));
    count.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        mean.push_back(v[i]);
        count.push_back(1);
        while (mean.size() > 1 && mean[mean.size() - 2] > mean.back()) {
            const double merged = (mean[mean.size() - 2] * count[count.size() - 2] +
                                   mean.back() * count.back()) /
                                  (count[count.size() - 2] + count.back());
            count[count.size() - 2] += count.back();
            mean[mean.size() - 2] = merged;
            mean.pop_back();
            count.pop_back();
        }
    }
    Eigen::VectorXd out(n);
    Eigen::Index pos = 0;
    for (std::size_t b = 0; b < mean.size(); ++b)
        for (Eigen::Index k = 0; k < count[b]; ++k) out[pos++] = mean[b];
    return out;
}

GfrModel fit(const Eigen::MatrixXd& x, const std::vector<Point>& y, const Space& space) {
    const auto n = x.rows();
    const auto p = x.cols();
    if (n < 2) throw ValidationError("gfr: need at least 2 samples");
    if (static_cast<std::size_t>(n) != y.size())
        throw ValidationError("gfr: X/Y row count mismatch");
    for (std::size_t i = 0; i < y.size(); ++i) {
        try {
            space.validate(y[i]);
        } catch (const ValidationError& e) {
            throw ValidationError("gfr: output " + std::to_string(i) + ": " + e.what());
        }
    }

    GfrModel model;
    model.space = space;
    model.x = x;
    model.y = y;
    model.x_mean = x.colwise().mean();
    Eigen::MatrixXd centered = x.rowwise() - model.x_mean.transpose();
    Eigen::MatrixXd sigma = centered.transpose() * centered / static_cast<double>(n);
    sigma.diagonal().array() += 1e-8 * sigma.trace() / static_cast<double>(p);
    model.sigma_inv = sigma.ldlt().solve(Eigen::MatrixXd::Identity(p, p));
    return model;
}

Eigen::VectorXd weights(const GfrModel& model, const Eigen::VectorXd& query) {
    if (query.size() != model.x_mean.size())
        throw ValidationError("gfr: query has " + std::to_string(query.size()) +
                              " features, expected " + std::to_string(model.x_mean.size()));
    const auto n = model.x.rows();
    Eigen::VectorXd dir = model.sigma_inv * (query - model.x_mean);
    Eigen::VectorXd w =
        (Eigen::VectorXd::Ones(n) + (model.x.rowwise() - model.x_mean.transpose()) * dir) /
        static_cast<double>(n);
    return w;
}

Point predict(const GfrModel& model, const Eigen::VectorXd& query) {
    return repair(model.space, weights(model, query), model.y);
}

std::vector<Point> predict_many(const GfrModel& model, const Eigen::MatrixXd& queries) {
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(queries.rows()));
    for (Eigen::Index i = 0; i < queries.rows(); ++i)
        out.push_back(predict(model, queries.row(i).transpose()));
    return out;
}

}  // namespace e2m::gfr
