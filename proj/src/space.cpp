#include "e2m/space.hpp"

#include <cmath>

#include "e2m/linalg.hpp"
#include "e2m/network.hpp"
#include "e2m/simplex.hpp"

namespace e2m {

Space Space::wasserstein(int grid_size) {
    wasserstein::ProbGrid grid(grid_size);  // validates M >= 2
    Space s;
    s.tag_ = SpaceTag::Wasserstein1d;
    s.grid_size_ = grid.size;
    return s;
}

Space Space::network(int num_nodes) {
    if (num_nodes < 2) throw ValidationError("network space: need at least 2 nodes");
    Space s;
    s.tag_ = SpaceTag::Network;
    s.num_nodes_ = num_nodes;
    return s;
}

Space Space::spd_power(int dim, double alpha) {
    if (dim < 1) throw ValidationError("spd space: dim must be >= 1");
    if (!(alpha > 0.0)) throw ValidationError("spd-power space: alpha must be > 0");
    Space s;
    s.tag_ = SpaceTag::SpdPower;
    s.dim_ = dim;
    s.alpha_ = alpha;
    return s;
}

Space Space::spd_bw(int dim, spd::BwSolveConfig cfg) {
    if (dim < 1) throw ValidationError("spd space: dim must be >= 1");
    cfg.validate();
    Space s;
    s.tag_ = SpaceTag::SpdBw;
    s.dim_ = dim;
    s.bw_cfg_ = cfg;
    return s;
}

int Space::row_len() const {
    switch (tag_) {
        case SpaceTag::Wasserstein1d: return grid_size_;
        case SpaceTag::Network: return static_cast<int>(network::num_edges(num_nodes_));
        case SpaceTag::SpdPower:
        case SpaceTag::SpdBw: return dim_ * (dim_ + 1) / 2;
    }
    throw Error("invalid space");
}

int Space::embed_dim() const {
    switch (tag_) {
        case SpaceTag::Wasserstein1d: return grid_size_;
        case SpaceTag::Network: return num_nodes_ * num_nodes_;
        case SpaceTag::SpdPower: return dim_ * dim_;
        case SpaceTag::SpdBw: throw Error("spd-bw space has no flat embedding");
    }
    throw Error("invalid space");
}

void Space::validate(const Point& p) const {
    switch (tag_) {
        case SpaceTag::Wasserstein1d:
            if (p.cols() != 1 || p.rows() != grid_size_)
                throw ValidationError("point: expected " + std::to_string(grid_size_) +
                                      " quantile values");
            wasserstein::validate_quantiles(p.col(0));
            return;
        case SpaceTag::Network:
            if (p.rows() != num_nodes_ || p.cols() != num_nodes_)
                throw ValidationError("point: expected " + std::to_string(num_nodes_) +
                                      " x " + std::to_string(num_nodes_) + " Laplacian");
            network::validate_laplacian(p);
            return;
        case SpaceTag::SpdPower:
        case SpaceTag::SpdBw:
            if (p.rows() != dim_ || p.cols() != dim_)
                throw ValidationError("point: expected " + std::to_string(dim_) + " x " +
                                      std::to_string(dim_) + " SPD matrix");
            spd::validate_spd(p);
            return;
    }
    throw Error("invalid space");
}

double Space::distance(const Point& a, const Point& b) const {
    switch (tag_) {
        case SpaceTag::Wasserstein1d: return wasserstein::w2_distance(a.col(0), b.col(0));
        case SpaceTag::Network: return network::frobenius_distance(a, b);
        case SpaceTag::SpdPower: return spd::power_distance(a, b, alpha_);
        case SpaceTag::SpdBw: return spd::bw_distance(a, b);
    }
    throw Error("invalid space");
}

Point Space::frechet_mean(const Eigen::VectorXd& w, const std::vector<Point>& anchors) const {
    switch (tag_) {
        case SpaceTag::Wasserstein1d: {
            Eigen::MatrixXd cols(grid_size_, static_cast<Eigen::Index>(anchors.size()));
            for (std::size_t i = 0; i < anchors.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = anchors[i].col(0);
            return wasserstein::frechet_mean(w, cols);
        }
        case SpaceTag::Network: return network::frechet_mean(w, anchors);
        case SpaceTag::SpdPower: return spd::power_frechet_mean(w, anchors);
        case SpaceTag::SpdBw: return spd::bw_barycenter(w, anchors, bw_cfg_);
    }
    throw Error("invalid space");
}

Eigen::VectorXd Space::loss_grad_w(const Eigen::VectorXd& w, const std::vector<Point>& anchors,
                                   const Point& target) const {
    switch (tag_) {
        case SpaceTag::Wasserstein1d: {
            Eigen::MatrixXd cols(grid_size_, static_cast<Eigen::Index>(anchors.size()));
            for (std::size_t i = 0; i < anchors.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = anchors[i].col(0);
            return wasserstein::loss_grad_w(w, cols, target.col(0));
        }
        case SpaceTag::Network: return network::loss_grad_w(w, anchors, target);
        case SpaceTag::SpdPower: return spd::power_loss_grad_w(w, anchors, target);
        case SpaceTag::SpdBw: return spd::bw_loss_grad_w(w, anchors, target, bw_cfg_);
    }
    throw Error("invalid space");
}

Eigen::VectorXd Space::embed(const Point& p) const {
    switch (tag_) {
        case SpaceTag::Wasserstein1d:
            return p.col(0) / std::sqrt(static_cast<double>(grid_size_));
        case SpaceTag::Network:
            return Eigen::Map<const Eigen::VectorXd>(p.data(), p.size());
        case SpaceTag::SpdPower: {
            Eigen::MatrixXd t = sym_apply(p, SymFun::power(alpha_)) / alpha_;
            return Eigen::Map<const Eigen::VectorXd>(t.data(), t.size());
        }
        case SpaceTag::SpdBw: break;
    }
    throw Error("spd-bw space has no flat embedding");
}

Point Space::decode(const Eigen::VectorXd& coords) const {
    switch (tag_) {
        case SpaceTag::Wasserstein1d:
            return coords * std::sqrt(static_cast<double>(grid_size_));
        case SpaceTag::Network:
            return Eigen::Map<const Eigen::MatrixXd>(coords.data(), num_nodes_, num_nodes_);
        case SpaceTag::SpdPower: {
            Eigen::MatrixXd t =
                alpha_ * Eigen::Map<const Eigen::MatrixXd>(coords.data(), dim_, dim_);
            return sym_apply(sym_part(t), SymFun::power(1.0 / alpha_));
        }
        case SpaceTag::SpdBw: break;
    }
    throw Error("spd-bw space has no flat embedding");
}

Eigen::MatrixXd Space::embed_all(const std::vector<Point>& points) const {
    Eigen::MatrixXd out(embed_dim(), static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i)
        out.col(static_cast<Eigen::Index>(i)) = embed(points[i]);
    return out;
}

Eigen::VectorXd Space::to_row(const Point& p) const {
    switch (tag_) {
        case SpaceTag::Wasserstein1d: return p.col(0);
        case SpaceTag::Network: return network::edges_from_laplacian(p);
        case SpaceTag::SpdPower:
        case SpaceTag::SpdBw: {
            Eigen::VectorXd row(row_len());
            Eigen::Index k = 0;
            for (int i = 0; i < dim_; ++i)
                for (int j = 0; j <= i; ++j, ++k) row[k] = p(i, j);
            return row;
        }
    }
    throw Error("invalid space");
}

Point Space::from_row(const Eigen::VectorXd& row) const {
    if (row.size() != row_len())
        throw ValidationError("row: expected " + std::to_string(row_len()) + " values, got " +
                              std::to_string(row.size()));
    switch (tag_) {
        case SpaceTag::Wasserstein1d: {
            Point p = row;
            validate(p);
            return p;
        }
        case SpaceTag::Network: {
            Point p = network::laplacian_from_edges(row, num_nodes_);
            return p;
        }
        case SpaceTag::SpdPower:
        case SpaceTag::SpdBw: {
            Point p(dim_, dim_);
            Eigen::Index k = 0;
            for (int i = 0; i < dim_; ++i)
                for (int j = 0; j <= i; ++j, ++k) {
                    p(i, j) = row[k];
                    p(j, i) = row[k];
                }
            validate(p);
            return p;
        }
    }
    throw Error("invalid space");
}

}  // namespace e2m
