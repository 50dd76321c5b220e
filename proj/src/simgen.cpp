#include "e2m/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "e2m/gfr.hpp"
#include "e2m/linalg.hpp"
#include "e2m/network.hpp"
#include "e2m/rng.hpp"
#include "e2m/wasserstein.hpp"

namespace e2m::sim {

namespace {

constexpr double kPi = 3.14159265358979323846;

// shape-rate convention for predictor Gammas
double gamma_sr(std::mt19937_64& rng, double shape, double rate) {
    std::gamma_distribution<double> g(shape, 1.0 / rate);
    return g(rng);
}

double beta_draw(std::mt19937_64& rng, double a, double b) {
    std::gamma_distribution<double> ga(a, 1.0), gb(b, 1.0);
    const double x = ga(rng), y = gb(rng);
    return x / (x + y);
}

// ---- distribution process -------------------------------------------------

Eigen::VectorXd dist_predictors(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u_neg(-1.0, 0.0), u_pos(0.0, 1.0);
    std::bernoulli_distribution b9(0.6), b10(0.5), b11(0.4), b12(0.3);
    Eigen::VectorXd x(12);
    x[0] = u_neg(rng);
    x[1] = u_neg(rng);
    x[2] = u_pos(rng);
    x[3] = u_pos(rng);
    x[4] = gamma_sr(rng, 2, 2);
    x[5] = gamma_sr(rng, 3, 2);
    x[6] = gamma_sr(rng, 4, 2);
    x[7] = gamma_sr(rng, 5, 2);
    x[8] = b9(rng) ? 1.0 : 0.0;
    x[9] = b10(rng) ? 1.0 : 0.0;
    x[10] = b11(rng) ? 1.0 : 0.0;
    x[11] = b12(rng) ? 1.0 : 0.0;
    return x;
}

double dist_mu(const Eigen::VectorXd& x) {
    const double c = std::cos(kPi * x[0]);
    const double s = std::sin(kPi * x[1]);
    return 2.0 + 2.0 * c * c + s * s * x[8] + std::sqrt(x[4] * x[5]) * (1.0 - x[8]);
}

double dist_theta(const Eigen::VectorXd& x) {
    const double t = 1.0 + std::cos(kPi * x[1] / 2.0) + std::sin(kPi * x[2]) * x[9] +
                     std::sqrt(x[5] * x[6]) * (1.0 - x[9]) / 3.0;
    if (!(t > 0.0))
        throw Error("simgen: theta(X) = " + std::to_string(t) + " is not positive");
    return t;
}

// ---- network process ------------------------------------------------------

constexpr int kNetNodes = 10;

Eigen::VectorXd net_predictors(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u1(0.0, 1.0), u2(-0.5, 0.5), u3(1.0, 2.0);
    std::normal_distribution<double> n01(0.0, 1.0), n55(5.0, std::sqrt(5.0));
    std::bernoulli_distribution b7(0.4), b8(0.3), b9(0.6);
    Eigen::VectorXd x(9);
    x[0] = u1(rng);
    x[1] = u2(rng);
    x[2] = u3(rng);
    x[3] = n01(rng);
    x[4] = n01(rng);
    x[5] = n55(rng);
    x[6] = b7(rng) ? 1.0 : 0.0;
    x[7] = b8(rng) ? 1.0 : 0.0;
    x[8] = b9(rng) ? 1.0 : 0.0;
    return x;
}

struct NetParams {
    // index 0 = within block 1, 1 = between blocks, 2 = within block 2
    double alpha[3], beta[3], prob[3] = {0.5, 0.2, 0.5};
    bool valid() const {
        for (int k = 0; k < 3; ++k)
            if (!(alpha[k] > 0.0) || !(beta[k] > 0.0)) return false;
        return true;
    }
};

NetParams net_params(const Eigen::VectorXd& x) {
    const double s1 = std::sin(kPi * x[0]), c2 = std::cos(kPi * x[1]);
    const double x8 = x[7], x7 = x[6];
    const double x4sq = x[3] * x[3], x5sq = x[4] * x[4];
    NetParams p;
    p.alpha[0] = 2.0 * s1 * x8 + c2 * (1.0 - x8);
    p.beta[0] = 2.0 * x4sq * x7 + x5sq * (1.0 - x7);
    p.alpha[2] = s1 * x8 + 2.0 * c2 * (1.0 - x8);
    p.beta[2] = x4sq * x7 + 2.0 * x5sq * (1.0 - x7);
    p.alpha[1] = p.alpha[0];
    p.beta[1] = p.beta[2];
    return p;
}

int edge_kind(int i, int j) {
    const bool bi = i >= kNetNodes / 2, bj = j >= kNetNodes / 2;
    if (bi != bj) return 1;
    return bi ? 2 : 0;
}

// ---- SPD processes --------------------------------------------------------

Eigen::VectorXd spd_power_predictors(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u1(0.0, 1.0), u2(-0.5, 0.5), u3(1.0, 2.0);
    std::normal_distribution<double> n01(0.0, 1.0);
    std::bernoulli_distribution b10(0.4), b11(0.5), b12(0.6);
    Eigen::VectorXd x(12);
    x[0] = u1(rng);
    x[1] = u2(rng);
    x[2] = u3(rng);
    x[3] = gamma_sr(rng, 3, 2);
    x[4] = gamma_sr(rng, 4, 2);
    x[5] = gamma_sr(rng, 5, 2);
    x[6] = n01(rng);
    x[7] = n01(rng);
    x[8] = n01(rng);
    x[9] = b10(rng) ? 1.0 : 0.0;
    x[10] = b11(rng) ? 1.0 : 0.0;
    x[11] = b12(rng) ? 1.0 : 0.0;
    return x;
}

Eigen::VectorXd spd_power_sigma_diag(const Eigen::VectorXd& x) {
    Eigen::VectorXd d(5);
    const double s1 = std::sin(kPi * x[0]), c2 = std::cos(kPi * x[1]);
    const double a = s1 * x[9] + c2 * (1.0 - x[9]);
    d[0] = a * a;
    d[1] = s1 * s1 * c2 * c2;
    const double b = (x[3] / x[4]) * 0.1 * x[10] + std::sqrt(x[4] / x[3]) * 0.1 * (1.0 - x[10]);
    d[2] = b * b;
    d[3] = std::abs(x[6] * x[7]) / 25.0;
    d[4] = std::abs(x[8] / x[5]) / 9.0;
    for (Eigen::Index k = 0; k < 5; ++k)
        if (!(d[k] > 0.0)) d[k] = 1e-10;
    return d;
}

Eigen::VectorXd spd_bw_predictors(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u1(0.0, 1.0), u2(-0.5, 0.5), u3(1.0, 2.0);
    std::bernoulli_distribution b4(0.6), b5(0.5);
    Eigen::VectorXd x(5);
    x[0] = u1(rng);
    x[1] = u2(rng);
    x[2] = u3(rng);
    x[3] = b4(rng) ? 1.0 : 0.0;
    x[4] = b5(rng) ? 1.0 : 0.0;
    return x;
}

Eigen::VectorXd spd_bw_sigma_diag(const Eigen::VectorXd& x) {
    const double s11 = std::sin(kPi * x[0]) * x[3] + std::cos(kPi * x[1]) * (1.0 - x[3]);
    const double s22 = std::sin(kPi * x[1]) * std::cos(kPi * x[2]);
    Eigen::VectorXd d(2);
    d[0] = std::max(s11 * s11, 1e-10);
    d[1] = std::max(s22 * s22, 1e-10);
    return d;
}

// Bartlett draw from W_l(diag(sigma_diag), df).
Eigen::MatrixXd wishart_diag(std::mt19937_64& rng, const Eigen::VectorXd& sigma_diag, int df) {
    const auto l = sigma_diag.size();
    std::normal_distribution<double> n01(0.0, 1.0);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(l, l);
    for (Eigen::Index i = 0; i < l; ++i) {
        std::chi_squared_distribution<double> chi(static_cast<double>(df - i));
        a(i, i) = std::sqrt(chi(rng));
        for (Eigen::Index j = 0; j < i; ++j) a(i, j) = n01(rng);
    }
    Eigen::VectorXd root = sigma_diag.cwiseSqrt();
    Eigen::MatrixXd la = root.asDiagonal() * a;
    Eigen::MatrixXd w = la * la.transpose();
    return sym_part(w) + 1e-10 * Eigen::MatrixXd::Identity(l, l);
}

Eigen::MatrixXd net_truth(const Eigen::VectorXd& x) {
    NetParams p = net_params(x);
    if (!p.valid()) throw Error("simgen: truth query with non-positive Beta shape");
    Eigen::VectorXd edges(network::num_edges(kNetNodes));
    Eigen::Index e = 0;
    for (int i = 0; i < kNetNodes; ++i)
        for (int j = i + 1; j < kNetNodes; ++j, ++e) {
            const int k = edge_kind(i, j);
            edges[e] = p.prob[k] * p.alpha[k] / (p.alpha[k] + p.beta[k]);
        }
    return network::laplacian_from_edges(edges, kNetNodes);
}

}  // namespace

std::string to_string(Dgp dgp) {
    switch (dgp) {
        case Dgp::Distribution: return "distribution";
        case Dgp::Network: return "network";
        case Dgp::SpdPower: return "spd-power";
        case Dgp::SpdBw: return "spd-bw";
    }
    return "?";
}

Dgp parse_dgp(const std::string& name) {
    if (name == "distribution" || name == "dist") return Dgp::Distribution;
    if (name == "network") return Dgp::Network;
    if (name == "spd-power") return Dgp::SpdPower;
    if (name == "spd-bw") return Dgp::SpdBw;
    throw ValidationError("unknown dgp: '" + name + "'");
}

Space space_for(Dgp dgp) {
    switch (dgp) {
        case Dgp::Distribution: return Space::wasserstein(100);
        case Dgp::Network: return Space::network(kNetNodes);
        case Dgp::SpdPower: return Space::spd_power(5);
        case Dgp::SpdBw: return Space::spd_bw(2);
    }
    throw Error("invalid dgp");
}

int num_predictors(Dgp dgp) {
    switch (dgp) {
        case Dgp::Distribution: return 12;
        case Dgp::Network: return 9;
        case Dgp::SpdPower: return 12;
        case Dgp::SpdBw: return 5;
    }
    throw Error("invalid dgp");
}

SimDataset generate(Dgp dgp, int n, std::uint64_t seed) {
    if (n < 1) throw ValidationError("generate: n must be >= 1");
    SimDataset out;
    out.dgp = dgp;
    out.seed = seed;
    out.x.resize(n, num_predictors(dgp));
    out.y.reserve(static_cast<std::size_t>(n));
    auto rng = make_rng(seed, "dgp-" + to_string(dgp));
    const wasserstein::ProbGrid grid(100);

    for (int i = 0; i < n; ++i) {
        switch (dgp) {
            case Dgp::Distribution: {
                Eigen::VectorXd x = dist_predictors(rng);
                std::normal_distribution<double> eta_draw(dist_mu(x), 0.5);
                const double theta = dist_theta(x);
                std::gamma_distribution<double> sigma_draw(theta * theta, 1.0 / theta);
                const double eta = eta_draw(rng);
                const double sigma = sigma_draw(rng);
                std::normal_distribution<double> obs(eta, sigma);
                std::vector<double> samples(100);
                for (double& s : samples) s = obs(rng);
                out.x.row(i) = x.transpose();
                out.y.push_back(wasserstein::quantile_from_samples(std::move(samples), grid));
                break;
            }
            case Dgp::Network: {
                Eigen::VectorXd x;
                NetParams p{};
                int tries = 0;
                do {
                    if (++tries > 1000)
                        throw Error("simgen: could not draw positive Beta shapes");
                    x = net_predictors(rng);
                    p = net_params(x);
                } while (!p.valid());
                std::uniform_real_distribution<double> unif(0.0, 1.0);
                Eigen::VectorXd edges = Eigen::VectorXd::Zero(network::num_edges(kNetNodes));
                Eigen::Index e = 0;
                for (int a = 0; a < kNetNodes; ++a)
                    for (int b = a + 1; b < kNetNodes; ++b, ++e) {
                        const int k = edge_kind(a, b);
                        if (unif(rng) < p.prob[k])
                            edges[e] = beta_draw(rng, p.alpha[k], p.beta[k]);
                    }
                out.x.row(i) = x.transpose();
                out.y.push_back(network::laplacian_from_edges(edges, kNetNodes));
                break;
            }
            case Dgp::SpdPower: {
                Eigen::VectorXd x = spd_power_predictors(rng);
                out.x.row(i) = x.transpose();
                out.y.push_back(wishart_diag(rng, spd_power_sigma_diag(x), 6));
                break;
            }
            case Dgp::SpdBw: {
                Eigen::VectorXd x = spd_bw_predictors(rng);
                out.x.row(i) = x.transpose();
                out.y.push_back(wishart_diag(rng, spd_bw_sigma_diag(x), 3));
                break;
            }
        }
    }
    return out;
}

std::vector<Point> truth_points(Dgp dgp, const Eigen::MatrixXd& x, std::uint64_t seed,
                                int draws) {
    if (x.cols() != num_predictors(dgp))
        throw ValidationError("truth_points: expected " + std::to_string(num_predictors(dgp)) +
                              " predictors, got " + std::to_string(x.cols()));
    std::vector<Point> truths;
    truths.reserve(static_cast<std::size_t>(x.rows()));
    const wasserstein::ProbGrid grid(100);

    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const Eigen::VectorXd xi = x.row(i).transpose();
        switch (dgp) {
            case Dgp::Distribution:
                // E[quantile] = E[eta] + E[sigma] Phi^{-1}(p) = mu + theta Phi^{-1}(p)
                truths.push_back(wasserstein::gaussian_quantiles(dist_mu(xi), dist_theta(xi), grid));
                break;
            case Dgp::Network:
                truths.push_back(net_truth(xi));
                break;
            case Dgp::SpdPower: {
                const int m = draws > 0 ? draws : 50000;
                auto rng = make_rng(seed, "oracle-spd-power", static_cast<std::uint64_t>(i));
                Eigen::VectorXd sd = spd_power_sigma_diag(xi);
                Eigen::MatrixXd mean_root = Eigen::MatrixXd::Zero(5, 5);
                for (int k = 0; k < m; ++k)
                    mean_root += sym_apply(wishart_diag(rng, sd, 6), SymFun::sqrt());
                mean_root /= m;
                truths.push_back(sym_part(mean_root * mean_root));
                break;
            }
            case Dgp::SpdBw: {
                const int m = draws > 0 ? draws : 2000;
                auto rng = make_rng(seed, "oracle-spd-bw", static_cast<std::uint64_t>(i));
                Eigen::VectorXd sd = spd_bw_sigma_diag(xi);
                std::vector<Eigen::MatrixXd> ys;
                ys.reserve(static_cast<std::size_t>(m));
                for (int k = 0; k < m; ++k) ys.push_back(wishart_diag(rng, sd, 3));
                truths.push_back(
                    spd::bw_barycenter(Eigen::VectorXd::Constant(m, 1.0 / m), ys));
                break;
            }
        }
    }
    return truths;
}

namespace {

struct RunScores {
    double e2m;
    double gfr;
};

RunScores one_run(const BenchmarkConfig& cfg, int run) {
    const std::uint64_t run_seed =
        mix_seed(mix_seed(cfg.seed, "benchmark-run"), std::to_string(run));
    const Space space = space_for(cfg.dgp);
    SimDataset train_data = generate(cfg.dgp, cfg.n, mix_seed(run_seed, "train-data"));
    SimDataset test_data = generate(cfg.dgp, cfg.test_size, mix_seed(run_seed, "test-data"));
    std::vector<Point> truth =
        truth_points(cfg.dgp, test_data.x, mix_seed(run_seed, "oracle"));

    TrainConfig tc = cfg.train;
    tc.seed = mix_seed(run_seed, "train");
    TrainResult fit = train(train_data.x, train_data.y, space, tc);
    RunScores scores{};
    scores.e2m = mspe(predict_many(fit.checkpoint, test_data.x), truth, space);
    if (cfg.with_gfr) {
        gfr::GfrModel g = gfr::fit(train_data.x, train_data.y, space);
        scores.gfr = mspe(gfr::predict_many(g, test_data.x), truth, space);
    }
    return scores;
}

double sample_sd(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / (static_cast<double>(v.size()) - 1.0));
}

}  // namespace

BenchmarkReport run_benchmark(const BenchmarkConfig& cfg) {
    if (cfg.runs < 1) throw ValidationError("run_benchmark: runs must be >= 1");
    if (cfg.test_size < 1) throw ValidationError("run_benchmark: test_size must be >= 1");

    std::vector<RunScores> scores(static_cast<std::size_t>(cfg.runs));
    if (cfg.jobs <= 1) {
        for (int r = 0; r < cfg.runs; ++r) scores[static_cast<std::size_t>(r)] = one_run(cfg, r);
    } else {
        int next = 0;
        while (next < cfg.runs) {
            const int chunk = std::min(cfg.jobs, cfg.runs - next);
            std::vector<std::future<RunScores>> futs;
            for (int k = 0; k < chunk; ++k)
                futs.push_back(std::async(std::launch::async, one_run, std::cref(cfg), next + k));
            for (int k = 0; k < chunk; ++k)
                scores[static_cast<std::size_t>(next + k)] = futs[static_cast<std::size_t>(k)].get();
            next += chunk;
        }
    }

    BenchmarkReport report;
    for (const RunScores& s : scores) {
        report.e2m_mspe.push_back(s.e2m);
        if (cfg.with_gfr) report.gfr_mspe.push_back(s.gfr);
    }
    report.e2m_amspe = std::accumulate(report.e2m_mspe.begin(), report.e2m_mspe.end(), 0.0) /
                       static_cast<double>(cfg.runs);
    report.e2m_sd = sample_sd(report.e2m_mspe, report.e2m_amspe);
    if (cfg.with_gfr) {
        report.gfr_amspe = std::accumulate(report.gfr_mspe.begin(), report.gfr_mspe.end(), 0.0) /
                           static_cast<double>(cfg.runs);
        report.gfr_sd = sample_sd(report.gfr_mspe, report.gfr_amspe);
    }
    return report;
}

}  // namespace e2m::sim
