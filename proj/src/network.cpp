#include "e2m/network.hpp"

#include <cmath>

#include "e2m/linalg.hpp"
#include "e2m/simplex.hpp"

namespace e2m::network {

void validate_laplacian(const Eigen::MatrixXd& l) {
    check_symmetric(l, "laplacian");
    const Eigen::Index v = l.rows();
    for (Eigen::Index i = 0; i < v; ++i) {
        for (Eigen::Index j = 0; j < v; ++j) {
            if (i != j && l(i, j) > 1e-12)
                throw ValidationError("laplacian: positive off-diagonal at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
        }
        if (std::abs(l.row(i).sum()) > 1e-9)
            throw ValidationError("laplacian: row " + std::to_string(i) + " does not sum to 0");
    }
    if (min_eigenvalue(l) < -1e-8)
        throw ValidationError("laplacian: not positive semidefinite");
}

Eigen::MatrixXd laplacian_from_edges(const Eigen::VectorXd& edge_weights, int num_nodes) {
    if (edge_weights.size() != num_edges(num_nodes))
        throw ValidationError("laplacian_from_edges: expected " +
                              std::to_string(num_edges(num_nodes)) + " edge weights, got " +
                              std::to_string(edge_weights.size()));
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(num_nodes, num_nodes);
    Eigen::Index e = 0;
    for (int i = 0; i < num_nodes; ++i) {
        for (int j = i + 1; j < num_nodes; ++j, ++e) {
            const double w = edge_weights[e];
            if (w < 0.0)
                throw ValidationError("laplacian_from_edges: negative weight on edge (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
            adj(i, j) = w;
            adj(j, i) = w;
        }
    }
    Eigen::MatrixXd lap = -adj;
    lap.diagonal() = adj.rowwise().sum();
    return lap;
}

Eigen::VectorXd edges_from_laplacian(const Eigen::MatrixXd& l) {
    const int v = static_cast<int>(l.rows());
    Eigen::VectorXd edges(num_edges(v));
    Eigen::Index e = 0;
    for (int i = 0; i < v; ++i)
        for (int j = i + 1; j < v; ++j, ++e) edges[e] = -0.5 * (l(i, j) + l(j, i));
    return edges;
}

static void check_same_nodes(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ValidationError("laplacian dimension mismatch");
}

double frobenius_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    check_same_nodes(a, b);
    return (a - b).norm();
}

Eigen::MatrixXd frechet_mean(const Eigen::VectorXd& w, const std::vector<Eigen::MatrixXd>& anchors) {
    if (static_cast<std::size_t>(w.size()) != anchors.size())
        throw ValidationError("frechet_mean: weight/anchor count mismatch");
    Eigen::VectorXd wn = validate_weights(w);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(anchors[0].rows(), anchors[0].cols());
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        check_same_nodes(anchors[0], anchors[i]);
        out += wn[i] * anchors[i];
    }
    return out;
}

Eigen::VectorXd loss_grad_w(const Eigen::VectorXd& w, const std::vector<Eigen::MatrixXd>& anchors,
                            const Eigen::MatrixXd& target) {
    Eigen::MatrixXd residual = frechet_mean(w, anchors) - target;
    Eigen::VectorXd grad(w.size());
    for (std::size_t i = 0; i < anchors.size(); ++i)
        grad[static_cast<Eigen::Index>(i)] = 2.0 * residual.cwiseProduct(anchors[i]).sum();
    return grad;
}

}  // namespace e2m::network
