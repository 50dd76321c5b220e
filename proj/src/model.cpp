#include "e2m/model.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <numeric>

#include "e2m/io.hpp"
#include "e2m/rng.hpp"
#include "e2m/simplex.hpp"

namespace e2m {

void TrainConfig::validate(int n) const {
    if (epochs < 1) throw ValidationError("train: epochs must be >= 1");
    if (batch < 1) throw ValidationError("train: batch must be >= 1");
    if (!(holdout_frac > 0.0 && holdout_frac < 1.0))
        throw ValidationError("train: holdout_frac must lie in (0,1)");
    if (dropout < 0.0 || dropout >= 1.0) throw ValidationError("train: dropout must lie in [0,1)");
    if (hidden_dims.empty()) throw ValidationError("train: at least one hidden layer is required");
    if (anchors_m < 0 || anchors_m > n)
        throw ValidationError("train: anchors_m must lie in [1, n]");
    if (eval_every < 1 || patience_evals < 1)
        throw ValidationError("train: eval cadence and patience must be >= 1");
    if (!(delta > 0.0)) throw ValidationError("train: delta must be > 0");
    if (n < 2) throw ValidationError("train: need at least 2 samples");
}

std::vector<int> select_anchors(int n, int m, std::uint64_t seed) {
    if (m < 1 || m > n) throw ValidationError("select_anchors: m must lie in [1, n]");
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    if (m == n) return idx;
    auto rng = make_rng(seed, "anchors");
    // Partial Fisher-Yates: the first m entries are a uniform subset.
    for (int i = 0; i < m; ++i) {
        std::uniform_int_distribution<int> pick(i, n - 1);
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(rng))]);
    }
    idx.resize(static_cast<std::size_t>(m));
    return idx;
}

namespace {

struct Standardizer {
    Eigen::VectorXd mean, sd;
    std::vector<int> constant_columns;

    static Standardizer fit(const Eigen::MatrixXd& x_rows) {
        Standardizer s;
        s.mean = x_rows.colwise().mean();
        Eigen::MatrixXd centered = x_rows.rowwise() - s.mean.transpose();
        s.sd = (centered.array().square().colwise().sum() /
                std::max<double>(1.0, static_cast<double>(x_rows.rows()) - 1.0))
                   .sqrt()
                   .transpose();
        for (Eigen::Index j = 0; j < s.sd.size(); ++j) {
            if (s.sd[j] < 1e-12) {
                s.sd[j] = 1.0;
                s.constant_columns.push_back(static_cast<int>(j));
            }
        }
        return s;
    }

    // columns = samples
    Eigen::MatrixXd apply_cols(const Eigen::MatrixXd& x_rows) const {
        Eigen::MatrixXd t = (x_rows.rowwise() - mean.transpose());
        t.array().rowwise() /= sd.transpose().array();
        return t.transpose();
    }

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
        return ((x - mean).array() / sd.array()).matrix();
    }
};

double entropy_batch_upstream(const Eigen::MatrixXd& w, double lambda, double delta,
                              Eigen::MatrixXd& upstream) {
    // Adds lambda * dH/dw to `upstream` and returns sum of lambda * H(w_j).
    double total = 0.0;
    for (Eigen::Index c = 0; c < w.cols(); ++c) {
        total += lambda * nn::entropy(w.col(c), delta);
        upstream.col(c) += lambda * nn::entropy_grad(w.col(c), delta);
    }
    return total;
}

}  // namespace

TrainResult train(const Eigen::MatrixXd& x, const std::vector<Point>& y, const Space& space,
                  const TrainConfig& cfg) {
    const auto n = static_cast<int>(x.rows());
    cfg.validate(n);
    if (static_cast<std::size_t>(n) != y.size())
        throw ValidationError("train: X/Y row count mismatch");
    for (std::size_t i = 0; i < y.size(); ++i) {
        try {
            space.validate(y[i]);
        } catch (const ValidationError& e) {
            throw ValidationError("train: output " + std::to_string(i) + ": " + e.what());
        }
    }

    // Seeded shuffle; last ceil(holdout_frac * n) rows become the holdout.
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    auto split_rng = make_rng(cfg.seed, "holdout-split");
    std::shuffle(order.begin(), order.end(), split_rng);
    const int n_hold = static_cast<int>(std::ceil(cfg.holdout_frac * n));
    const int n_train = n - n_hold;
    if (n_train < 1) throw ValidationError("train: holdout leaves no training rows");
    std::vector<int> train_idx(order.begin(), order.begin() + n_train);
    std::vector<int> hold_idx(order.begin() + n_train, order.end());

    Eigen::MatrixXd x_train_rows(n_train, x.cols());
    for (int i = 0; i < n_train; ++i) x_train_rows.row(i) = x.row(train_idx[static_cast<std::size_t>(i)]);
    Eigen::MatrixXd x_hold_rows(n_hold, x.cols());
    for (int i = 0; i < n_hold; ++i) x_hold_rows.row(i) = x.row(hold_idx[static_cast<std::size_t>(i)]);

    Standardizer std_fit = Standardizer::fit(x_train_rows);
    Eigen::MatrixXd xt = std_fit.apply_cols(x_train_rows);  // p x n_train
    Eigen::MatrixXd xh = std_fit.apply_cols(x_hold_rows);   // p x n_hold

    const int m = cfg.anchors_m == 0 ? n : cfg.anchors_m;
    std::vector<int> anchor_idx = select_anchors(n, m, cfg.seed);
    std::vector<Point> anchors;
    anchors.reserve(anchor_idx.size());
    for (int idx : anchor_idx) anchors.push_back(y[static_cast<std::size_t>(idx)]);

    const bool flat = space.is_flat();
    Eigen::MatrixXd phi;       // embed_dim x m
    Eigen::MatrixXd y_train_emb, y_hold_emb;
    if (flat) {
        phi = space.embed_all(anchors);
        y_train_emb.resize(space.embed_dim(), n_train);
        for (int i = 0; i < n_train; ++i)
            y_train_emb.col(i) = space.embed(y[static_cast<std::size_t>(train_idx[static_cast<std::size_t>(i)])]);
        y_hold_emb.resize(space.embed_dim(), n_hold);
        for (int i = 0; i < n_hold; ++i)
            y_hold_emb.col(i) = space.embed(y[static_cast<std::size_t>(hold_idx[static_cast<std::size_t>(i)])]);
    }

    std::vector<int> dims;
    dims.push_back(static_cast<int>(x.cols()));
    dims.insert(dims.end(), cfg.hidden_dims.begin(), cfg.hidden_dims.end());
    dims.push_back(m);
    nn::MlpParams params = nn::init_params(dims, cfg.seed);
    nn::AdamState adam = nn::AdamState::init(params, {cfg.lr, 0.9, 0.999, 1e-8});

    auto epoch_rng = make_rng(cfg.seed, "epoch-shuffle");
    auto dropout_rng = make_rng(cfg.seed, "dropout");

    auto holdout_mspe = [&](const nn::MlpParams& p) {
        auto [w, cache] = nn::forward(xh, p, 0.0, nn::Mode::Eval);
        if (flat) {
            Eigen::MatrixXd residual = phi * w - y_hold_emb;
            return residual.colwise().squaredNorm().mean();
        }
        double total = 0.0;
        for (int i = 0; i < n_hold; ++i) {
            Point bary = spd::bw_barycenter(w.col(i), anchors, space.bw_config());
            const double d = space.distance(bary, y[static_cast<std::size_t>(hold_idx[static_cast<std::size_t>(i)])]);
            total += d * d;
        }
        return total / n_hold;
    };

    nn::MlpParams best_params = params;
    double best_mspe = std::numeric_limits<double>::infinity();
    int evals_since_best = 0;
    TrainHistory history;

    std::vector<int> batch_order(static_cast<std::size_t>(n_train));
    std::iota(batch_order.begin(), batch_order.end(), 0);

    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        std::shuffle(batch_order.begin(), batch_order.end(), epoch_rng);
        double epoch_loss = 0.0;
        int batch_index = 0;
        for (int start = 0; start < n_train; start += cfg.batch, ++batch_index) {
            const int b = std::min(cfg.batch, n_train - start);
            Eigen::MatrixXd xb(x.cols(), b);
            for (int j = 0; j < b; ++j)
                xb.col(j) = xt.col(batch_order[static_cast<std::size_t>(start + j)]);

            auto [w, cache] = nn::forward(xb, params, cfg.dropout, nn::Mode::Train, &dropout_rng);

            Eigen::MatrixXd upstream(m, b);
            double batch_loss = 0.0;
            if (flat) {
                Eigen::MatrixXd preds = phi * w;
                Eigen::MatrixXd residual(preds.rows(), b);
                for (int j = 0; j < b; ++j)
                    residual.col(j) =
                        preds.col(j) - y_train_emb.col(batch_order[static_cast<std::size_t>(start + j)]);
                batch_loss += residual.colwise().squaredNorm().sum();
                upstream = 2.0 * (phi.transpose() * residual);
            } else {
                for (int j = 0; j < b; ++j) {
                    const int row = train_idx[static_cast<std::size_t>(batch_order[static_cast<std::size_t>(start + j)])];
                    auto vg = spd::bw_value_and_grad(w.col(j), anchors,
                                                     y[static_cast<std::size_t>(row)], space.bw_config());
                    const double d = space.distance(vg.barycenter, y[static_cast<std::size_t>(row)]);
                    batch_loss += d * d;
                    upstream.col(j) = vg.grad_w;
                }
            }
            batch_loss += entropy_batch_upstream(w, cfg.lambda, cfg.delta, upstream);
            if (!std::isfinite(batch_loss))
                throw Error("train: non-finite loss at epoch " + std::to_string(epoch) +
                            ", batch " + std::to_string(batch_index));
            epoch_loss += batch_loss;

            nn::Grads grads = nn::backprop(params, cache, upstream);
            grads.scale(1.0 / b);
            nn::adam_step(adam, params, grads);
        }

        if (epoch % cfg.eval_every == 0 || epoch == cfg.epochs) {
            const double h_mspe = holdout_mspe(params);
            history.push_back({epoch, epoch_loss / n_train, h_mspe});
            if (h_mspe < best_mspe) {
                best_mspe = h_mspe;
                best_params = params;
                evals_since_best = 0;
            } else if (++evals_since_best >= cfg.patience_evals) {
                break;
            }
        }
    }

    Checkpoint ckpt;
    ckpt.space = space;
    ckpt.params = std::move(best_params);
    ckpt.anchor_indices = std::move(anchor_idx);
    ckpt.anchors = std::move(anchors);
    ckpt.lambda = cfg.lambda;
    ckpt.delta = cfg.delta;
    ckpt.x_mean = std_fit.mean;
    ckpt.x_sd = std_fit.sd;
    ckpt.constant_columns = std_fit.constant_columns;
    ckpt.seed = cfg.seed;
    return {std::move(ckpt), std::move(history)};
}

Point predict(const Checkpoint& ckpt, const Eigen::VectorXd& x) {
    if (x.size() != ckpt.x_mean.size())
        throw ValidationError("predict: input has " + std::to_string(x.size()) +
                              " features, expected " + std::to_string(ckpt.x_mean.size()));
    Eigen::VectorXd xs = ((x - ckpt.x_mean).array() / ckpt.x_sd.array()).matrix();
    auto [w, cache] = nn::forward(xs, ckpt.params, 0.0, nn::Mode::Eval);
    return ckpt.space.frechet_mean(w.col(0), ckpt.anchors);
}

std::vector<Point> predict_many(const Checkpoint& ckpt, const Eigen::MatrixXd& x) {
    Eigen::MatrixXd xs = x.rowwise() - ckpt.x_mean.transpose();
    xs.array().rowwise() /= ckpt.x_sd.transpose().array();
    auto [w, cache] = nn::forward(xs.transpose(), ckpt.params, 0.0, nn::Mode::Eval);
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(x.rows()));
    if (ckpt.space.is_flat()) {
        Eigen::MatrixXd phi = ckpt.space.embed_all(ckpt.anchors);
        Eigen::MatrixXd preds = phi * w;
        for (Eigen::Index i = 0; i < x.rows(); ++i) out.push_back(ckpt.space.decode(preds.col(i)));
    } else {
        for (Eigen::Index i = 0; i < x.rows(); ++i)
            out.push_back(ckpt.space.frechet_mean(w.col(i), ckpt.anchors));
    }
    return out;
}

double mspe(const std::vector<Point>& preds, const std::vector<Point>& refs, const Space& space) {
    if (preds.size() != refs.size() || preds.empty())
        throw ValidationError("mspe: prediction/reference length mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const double d = space.distance(preds[i], refs[i]);
        total += d * d;
    }
    return total / static_cast<double>(preds.size());
}

nlohmann::json Checkpoint::to_json() const {
    nlohmann::json j;
    j["version"] = version;
    j["space"] = io::space_to_json(space);
    j["layer_dims"] = params.layer_dims;
    nlohmann::json weights = nlohmann::json::array();
    nlohmann::json biases = nlohmann::json::array();
    for (std::size_t l = 0; l < params.num_layers(); ++l) {
        nlohmann::json wl = nlohmann::json::array();
        for (Eigen::Index r = 0; r < params.weights[l].rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (Eigen::Index c = 0; c < params.weights[l].cols(); ++c)
                row.push_back(params.weights[l](r, c));
            wl.push_back(std::move(row));
        }
        weights.push_back(std::move(wl));
        nlohmann::json bl = nlohmann::json::array();
        for (Eigen::Index r = 0; r < params.biases[l].size(); ++r)
            bl.push_back(params.biases[l][r]);
        biases.push_back(std::move(bl));
    }
    j["weights"] = std::move(weights);
    j["biases"] = std::move(biases);
    j["anchors"] = {{"indices", anchor_indices},
                    {"payload_csv", io::csv_string(io::rows_from_points(space, anchors))}};
    j["lambda"] = lambda;
    j["delta"] = delta;
    j["standardize"] = {{"mean", std::vector<double>(x_mean.data(), x_mean.data() + x_mean.size())},
                        {"sd", std::vector<double>(x_sd.data(), x_sd.data() + x_sd.size())},
                        {"constant_columns", constant_columns}};
    j["seed"] = seed;
    return j;
}

Checkpoint Checkpoint::from_json(const nlohmann::json& j) {
    Checkpoint ckpt;
    ckpt.version = j.at("version").get<int>();
    if (ckpt.version != 1)
        throw ValidationError("checkpoint: unsupported version " + std::to_string(ckpt.version));
    ckpt.space = io::space_from_json(j.at("space"));
    ckpt.params.layer_dims = j.at("layer_dims").get<std::vector<int>>();
    const auto& weights = j.at("weights");
    const auto& biases = j.at("biases");
    for (std::size_t l = 0; l < weights.size(); ++l) {
        const auto& wl = weights[l];
        Eigen::MatrixXd w(wl.size(), wl.at(0).size());
        for (std::size_t r = 0; r < wl.size(); ++r)
            for (std::size_t c = 0; c < wl[r].size(); ++c)
                w(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = wl[r][c].get<double>();
        ckpt.params.weights.push_back(std::move(w));
        auto b = biases.at(l).get<std::vector<double>>();
        ckpt.params.biases.push_back(Eigen::Map<Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size())));
    }
    ckpt.params.validate();
    ckpt.anchor_indices = j.at("anchors").at("indices").get<std::vector<int>>();
    ckpt.anchors = io::points_from_rows(
        ckpt.space, io::parse_csv_string(j.at("anchors").at("payload_csv").get<std::string>()));
    ckpt.lambda = j.at("lambda").get<double>();
    ckpt.delta = j.at("delta").get<double>();
    auto mean = j.at("standardize").at("mean").get<std::vector<double>>();
    auto sd = j.at("standardize").at("sd").get<std::vector<double>>();
    ckpt.x_mean = Eigen::Map<Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(mean.size()));
    ckpt.x_sd = Eigen::Map<Eigen::VectorXd>(sd.data(), static_cast<Eigen::Index>(sd.size()));
    for (Eigen::Index i = 0; i < ckpt.x_sd.size(); ++i)
        if (!(ckpt.x_sd[i] > 0.0)) throw ValidationError("checkpoint: standardization sd <= 0");
    if (j.at("standardize").contains("constant_columns"))
        ckpt.constant_columns = j.at("standardize").at("constant_columns").get<std::vector<int>>();
    ckpt.seed = j.at("seed").get<std::uint64_t>();
    return ckpt;
}

namespace {

std::vector<std::vector<int>> make_folds(int n, int k, std::mt19937_64& rng) {
    if (k < 2 || k > n) throw ValidationError("cross_validate: folds must lie in [2, n]");
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::vector<int>> folds(static_cast<std::size_t>(k));
    for (int i = 0; i < n; ++i) folds[static_cast<std::size_t>(i % k)].push_back(order[static_cast<std::size_t>(i)]);
    return folds;
}

double fold_mspe(const Eigen::MatrixXd& x, const std::vector<Point>& y, const Space& space,
                 const TrainConfig& cfg, const std::vector<int>& test_rows) {
    const auto n = static_cast<int>(x.rows());
    std::vector<char> is_test(static_cast<std::size_t>(n), 0);
    for (int r : test_rows) is_test[static_cast<std::size_t>(r)] = 1;
    std::vector<int> train_rows;
    for (int i = 0; i < n; ++i)
        if (!is_test[static_cast<std::size_t>(i)]) train_rows.push_back(i);

    Eigen::MatrixXd x_fit(static_cast<Eigen::Index>(train_rows.size()), x.cols());
    std::vector<Point> y_fit;
    y_fit.reserve(train_rows.size());
    for (std::size_t i = 0; i < train_rows.size(); ++i) {
        x_fit.row(static_cast<Eigen::Index>(i)) = x.row(train_rows[i]);
        y_fit.push_back(y[static_cast<std::size_t>(train_rows[i])]);
    }
    TrainConfig fold_cfg = cfg;
    if (fold_cfg.anchors_m > static_cast<int>(train_rows.size()))
        fold_cfg.anchors_m = static_cast<int>(train_rows.size());
    TrainResult fit = train(x_fit, y_fit, space, fold_cfg);

    Eigen::MatrixXd x_test(static_cast<Eigen::Index>(test_rows.size()), x.cols());
    std::vector<Point> y_test;
    for (std::size_t i = 0; i < test_rows.size(); ++i) {
        x_test.row(static_cast<Eigen::Index>(i)) = x.row(test_rows[static_cast<std::size_t>(i)]);
        y_test.push_back(y[static_cast<std::size_t>(test_rows[static_cast<std::size_t>(i)])]);
    }
    return mspe(predict_many(fit.checkpoint, x_test), y_test, space);
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double mu = mean_of(v);
    double acc = 0.0;
    for (double x : v) acc += (x - mu) * (x - mu);
    return std::sqrt(acc / (static_cast<double>(v.size()) - 1.0));
}

// Runs tasks indexed 0..count-1, at most `jobs` at a time, preserving order.
std::vector<double> run_parallel(int count, int jobs, const std::function<double(int)>& task) {
    std::vector<double> results(static_cast<std::size_t>(count));
    if (jobs <= 1) {
        for (int i = 0; i < count; ++i) results[static_cast<std::size_t>(i)] = task(i);
        return results;
    }
    int next = 0;
    while (next < count) {
        const int chunk = std::min(jobs, count - next);
        std::vector<std::future<double>> futs;
        for (int i = 0; i < chunk; ++i)
            futs.push_back(std::async(std::launch::async, task, next + i));
        for (int i = 0; i < chunk; ++i)
            results[static_cast<std::size_t>(next + i)] = futs[static_cast<std::size_t>(i)].get();
        next += chunk;
    }
    return results;
}

}  // namespace

CvResult cross_validate(const Eigen::MatrixXd& x, const std::vector<Point>& y, const Space& space,
                        const TrainConfig& cfg, const CvScheme& scheme, std::uint64_t seed,
                        int jobs) {
    const auto n = static_cast<int>(x.rows());
    if (static_cast<std::size_t>(n) != y.size())
        throw ValidationError("cross_validate: X/Y row count mismatch");

    CvResult result;
    switch (scheme.kind) {
        case CvScheme::Kind::Loo: {
            result.per_split = run_parallel(n, jobs, [&](int i) {
                TrainConfig fold_cfg = cfg;
                fold_cfg.seed = mix_seed(mix_seed(seed, "cv-loo"), std::to_string(i));
                return fold_mspe(x, y, space, fold_cfg, {i});
            });
            break;
        }
        case CvScheme::Kind::KFold: {
            auto rng = make_rng(seed, "cv-kfold");
            auto folds = make_folds(n, scheme.folds, rng);
            result.per_split = run_parallel(static_cast<int>(folds.size()), jobs, [&](int f) {
                TrainConfig fold_cfg = cfg;
                fold_cfg.seed = mix_seed(mix_seed(seed, "cv-fold"), std::to_string(f));
                return fold_mspe(x, y, space, fold_cfg, folds[static_cast<std::size_t>(f)]);
            });
            break;
        }
        case CvScheme::Kind::Repeated: {
            if (scheme.runs < 1) throw ValidationError("cross_validate: runs must be >= 1");
            result.per_split = run_parallel(scheme.runs, jobs, [&](int run) {
                auto rng = make_rng(seed, "cv-repeat", static_cast<std::uint64_t>(run));
                auto folds = make_folds(n, scheme.folds, rng);
                std::vector<double> per_fold;
                for (std::size_t f = 0; f < folds.size(); ++f) {
                    TrainConfig fold_cfg = cfg;
                    fold_cfg.seed = mix_seed(
                        mix_seed(mix_seed(seed, "cv-repeat-fold"), std::to_string(run)),
                        std::to_string(f));
                    per_fold.push_back(fold_mspe(x, y, space, fold_cfg, folds[f]));
                }
                return mean_of(per_fold);
            });
            break;
        }
    }
    result.mean = mean_of(result.per_split);
    result.sd = sd_of(result.per_split);
    return result;
}

GridResult grid_search(const Eigen::MatrixXd& x, const std::vector<Point>& y, const Space& space,
                       const TrainConfig& base, const GridSpec& grid, int folds,
                       std::uint64_t seed, int jobs) {
    if (grid.lambdas.empty() || grid.depths.empty() || grid.widths.empty())
        throw ValidationError("grid_search: empty grid");
    if (folds < 2) throw ValidationError("grid_search: folds must be >= 2");

    GridResult result;
    std::size_t best_at = 0;
    for (double lambda : grid.lambdas) {
        for (int depth : grid.depths) {
            for (int width : grid.widths) {
                TrainConfig cfg = base;
                cfg.lambda = lambda;
                cfg.hidden_dims.assign(static_cast<std::size_t>(depth), width);
                CvResult cv = cross_validate(x, y, space, cfg, CvScheme::kfold(folds), seed, jobs);
                result.table.push_back({lambda, depth, width, cv.mean});
            }
        }
    }
    auto better = [](const GridCell& a, const GridCell& b) {
        if (a.cv_mspe != b.cv_mspe) return a.cv_mspe < b.cv_mspe;
        if (a.width != b.width) return a.width < b.width;
        if (a.depth != b.depth) return a.depth < b.depth;
        return std::abs(a.lambda) < std::abs(b.lambda);
    };
    for (std::size_t i = 1; i < result.table.size(); ++i)
        if (better(result.table[i], result.table[best_at])) best_at = i;

    result.best = base;
    result.best.lambda = result.table[best_at].lambda;
    result.best.hidden_dims.assign(static_cast<std::size_t>(result.table[best_at].depth),
                                   result.table[best_at].width);
    return result;
}

}  // namespace e2m
