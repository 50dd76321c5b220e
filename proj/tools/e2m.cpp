// Command-line front end: simulate / train / predict / evaluate /
// gridsearch / sensitivity / audit / baseline-gfr.
//
// Exit codes: 0 success, 1 runtime or data error, 2 usage error.
// Every successful run writes a manifest.json with the resolved
// configuration and seeds next to its outputs.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "e2m/audit.hpp"
#include "e2m/gfr.hpp"
#include "e2m/io.hpp"
#include "e2m/model.hpp"
#include "e2m/rng.hpp"
#include "e2m/simgen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace e2m;

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("E2M_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

Space space_from_flags(const std::string& name, int grid, int nodes, int dim) {
    switch (parse_space_tag(name)) {
        case SpaceTag::Wasserstein1d: return Space::wasserstein(grid);
        case SpaceTag::Network: return Space::network(nodes);
        case SpaceTag::SpdPower: return Space::spd_power(dim);
        case SpaceTag::SpdBw: return Space::spd_bw(dim);
    }
    throw Error("invalid space");
}

void write_manifest(const fs::path& dir, const std::string& command, json config) {
    config["command"] = command;
    io::write_json((dir / "manifest.json").string(), config);
}

json train_config_json(const TrainConfig& cfg) {
    return json{{"epochs", cfg.epochs},       {"batch", cfg.batch},
                {"lr", cfg.lr},               {"dropout", cfg.dropout},
                {"lambda", cfg.lambda},       {"delta", cfg.delta},
                {"hidden", cfg.hidden_dims},  {"anchors", cfg.anchors_m},
                {"holdout_frac", cfg.holdout_frac},
                {"patience", cfg.patience_evals},
                {"eval_every", cfg.eval_every},
                {"seed", cfg.seed}};
}

struct CommonTrainFlags {
    TrainConfig cfg;
    std::vector<int> hidden{32, 32};

    void attach(CLI::App* cmd) {
        cmd->add_option("--epochs", cfg.epochs, "training epochs")->capture_default_str();
        cmd->add_option("--batch", cfg.batch, "mini-batch size")->capture_default_str();
        cmd->add_option("--lr", cfg.lr, "learning rate")->capture_default_str();
        cmd->add_option("--dropout", cfg.dropout, "dropout rate")->capture_default_str();
        cmd->add_option("--lambda", cfg.lambda, "entropy regularization strength")
            ->capture_default_str();
        cmd->add_option("--hidden", hidden, "hidden layer widths")->capture_default_str();
        cmd->add_option("--anchors", cfg.anchors_m, "anchor count (0 = all training outputs)")
            ->capture_default_str();
    }
    TrainConfig resolve(std::uint64_t seed) {
        cfg.hidden_dims = hidden;
        cfg.seed = seed;
        return cfg;
    }
};

int run_simulate(const std::string& dgp_name, int n, int test_n, std::uint64_t seed,
                 const std::string& out_dir) {
    const sim::Dgp dgp = sim::parse_dgp(dgp_name);
    const Space space = sim::space_for(dgp);
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    sim::SimDataset data = sim::generate(dgp, n, mix_seed(seed, "simulate-train"));
    io::write_csv((dir / "X.csv").string(), data.x);
    io::write_csv((dir / "Y.csv").string(), io::rows_from_points(space, data.y));

    sim::SimDataset test = sim::generate(dgp, test_n, mix_seed(seed, "simulate-test"));
    std::vector<Point> truth =
        sim::truth_points(dgp, test.x, mix_seed(seed, "simulate-oracle"));
    io::write_csv((dir / "X_test.csv").string(), test.x);
    io::write_csv((dir / "Y_test.csv").string(), io::rows_from_points(space, test.y));
    io::write_csv((dir / "truth.csv").string(), io::rows_from_points(space, truth));
    io::write_json((dir / "space.json").string(), io::space_to_json(space));

    write_manifest(dir, "simulate",
                   json{{"dgp", sim::to_string(dgp)},
                        {"n", n},
                        {"test_n", test_n},
                        {"seed", seed},
                        {"space", io::space_to_json(space)},
                        {"gamma_convention", "shape-rate for predictors; sigma uses shape theta^2, scale 1/theta"}});
    std::printf("wrote %d training and %d test units (%s) to %s\n", n, test_n,
                sim::to_string(dgp).c_str(), out_dir.c_str());
    return 0;
}

int run_train(const Space& space, const std::string& x_path, const std::string& y_path,
              const std::string& out_path, TrainConfig cfg) {
    Eigen::MatrixXd x = io::read_csv(x_path);
    std::vector<Point> y = io::points_from_rows(space, io::read_csv(y_path));
    TrainResult result = train(x, y, space, cfg);

    io::write_json(out_path, result.checkpoint.to_json());
    const fs::path out(out_path);
    const fs::path dir = out.parent_path().empty() ? fs::path(".") : out.parent_path();
    Eigen::MatrixXd history(static_cast<Eigen::Index>(result.history.size()), 3);
    for (std::size_t i = 0; i < result.history.size(); ++i)
        history.row(static_cast<Eigen::Index>(i)) << result.history[i].epoch,
            result.history[i].train_loss, result.history[i].holdout_mspe;
    io::write_csv((dir / (out.stem().string() + "_history.csv")).string(), history);
    write_manifest(dir, "train",
                   json{{"space", io::space_to_json(space)},
                        {"x", x_path},
                        {"y", y_path},
                        {"out", out_path},
                        {"train", train_config_json(cfg)}});
    std::printf("epoch  train_loss  holdout_mspe\n");
    for (const EvalRecord& r : result.history)
        std::printf("%5d  %10.6f  %12.6f\n", r.epoch, r.train_loss, r.holdout_mspe);
    std::printf("checkpoint written to %s\n", out_path.c_str());
    return 0;
}

int run_predict(const std::string& model_path, const std::string& x_path,
                const std::string& out_path) {
    Checkpoint ckpt = Checkpoint::from_json(io::read_json(model_path));
    Eigen::MatrixXd x = io::read_csv(x_path);
    std::vector<Point> preds = predict_many(ckpt, x);
    io::write_csv(out_path, io::rows_from_points(ckpt.space, preds));
    const fs::path out(out_path);
    write_manifest(out.parent_path().empty() ? "." : out.parent_path(), "predict",
                   json{{"model", model_path}, {"x", x_path}, {"out", out_path}});
    std::printf("wrote %zd predictions to %s\n", preds.size(), out_path.c_str());
    return 0;
}

int run_evaluate(const std::string& model_path, const std::string& x_path,
                 const std::string& y_path, const std::string& truth_path,
                 const std::string& report_path) {
    Checkpoint ckpt = Checkpoint::from_json(io::read_json(model_path));
    Eigen::MatrixXd x = io::read_csv(x_path);
    const std::string ref_path = truth_path.empty() ? y_path : truth_path;
    if (ref_path.empty())
        throw ValidationError("evaluate: provide --y (held-out observations) or --truth");
    std::vector<Point> refs = io::points_from_rows(ckpt.space, io::read_csv(ref_path));
    const double score = mspe(predict_many(ckpt, x), refs, ckpt.space);

    json report{{"mspe", score},
                {"mode", truth_path.empty() ? "held-out-observations" : "vs-truth"},
                {"n", x.rows()}};
    if (!report_path.empty()) {
        io::write_json(report_path, report);
        const fs::path out(report_path);
        write_manifest(out.parent_path().empty() ? "." : out.parent_path(), "evaluate",
                       json{{"model", model_path},
                            {"x", x_path},
                            {"reference", ref_path},
                            {"report", report_path}});
    }
    std::printf("MSPE (%s): %.6f over %lld points\n", report["mode"].get<std::string>().c_str(),
                score, static_cast<long long>(x.rows()));
    return 0;
}

int run_gridsearch(const Space& space, const std::string& x_path, const std::string& y_path,
                   CommonTrainFlags& flags, int folds, int jobs, std::uint64_t seed,
                   const std::string& report_path) {
    Eigen::MatrixXd x = io::read_csv(x_path);
    std::vector<Point> y = io::points_from_rows(space, io::read_csv(y_path));
    GridSpec grid;
    GridResult result = grid_search(x, y, space, flags.resolve(seed), grid, folds, seed, jobs);

    std::printf("%8s %6s %6s %12s\n", "lambda", "depth", "width", "cv_mspe");
    for (const GridCell& c : result.table)
        std::printf("%8.3f %6d %6d %12.6f\n", c.lambda, c.depth, c.width, c.cv_mspe);
    std::printf("best: lambda=%g, %zu x %d\n", result.best.lambda,
                result.best.hidden_dims.size(), result.best.hidden_dims.front());

    json cells = json::array();
    for (const GridCell& c : result.table)
        cells.push_back({{"lambda", c.lambda}, {"depth", c.depth}, {"width", c.width},
                         {"cv_mspe", c.cv_mspe}});
    json report{{"table", cells}, {"best", train_config_json(result.best)}};
    io::write_json(report_path, report);
    const fs::path out(report_path);
    write_manifest(out.parent_path().empty() ? "." : out.parent_path(), "gridsearch",
                   json{{"space", io::space_to_json(space)},
                        {"x", x_path},
                        {"y", y_path},
                        {"folds", folds},
                        {"jobs", jobs},
                        {"seed", seed}});
    return 0;
}

int run_sensitivity(const std::string& dgp_name, int n, int runs, std::uint64_t seed, int jobs,
                    const std::string& report_path) {
    const std::vector<double> lambdas{-0.1, -0.05, -0.01, 0.0, 0.01, 0.05, 0.1};
    sim::BenchmarkConfig cfg;
    cfg.dgp = sim::parse_dgp(dgp_name);
    cfg.n = n;
    cfg.runs = runs;
    cfg.with_gfr = false;
    cfg.seed = seed;
    cfg.jobs = jobs;
    cfg.train.hidden_dims = {8, 8};

    json rows = json::array();
    std::printf("%8s %10s %10s\n", "lambda", "amspe", "sd");
    for (double lambda : lambdas) {
        cfg.train.lambda = lambda;
        sim::BenchmarkReport rep = sim::run_benchmark(cfg);
        std::printf("%8.3f %10.4f %10.4f\n", lambda, rep.e2m_amspe, rep.e2m_sd);
        rows.push_back({{"lambda", lambda},
                        {"amspe", rep.e2m_amspe},
                        {"sd", rep.e2m_sd},
                        {"per_run", rep.e2m_mspe}});
    }
    io::write_json(report_path, json{{"dgp", sim::to_string(cfg.dgp)},
                                     {"n", n},
                                     {"runs", runs},
                                     {"net", "2x8"},
                                     {"rows", rows}});
    const fs::path out(report_path);
    write_manifest(out.parent_path().empty() ? "." : out.parent_path(), "sensitivity",
                   json{{"dgp", sim::to_string(cfg.dgp)},
                        {"n", n},
                        {"runs", runs},
                        {"seed", seed},
                        {"jobs", jobs},
                        {"lambdas", lambdas}});
    return 0;
}

int run_audit(const std::string& space_name, int trials, int num_anchors, int grad_instances,
              std::uint64_t seed, const std::string& report_path) {
    std::vector<Space> spaces;
    if (space_name == "all") {
        spaces = {Space::wasserstein(100), Space::network(10), Space::spd_power(5),
                  Space::spd_bw(2)};
    } else {
        spaces = {space_from_flags(space_name, 100, 10, space_name == "spd-bw" ? 2 : 5)};
    }

    json report = json::array();
    bool ok = true;
    for (const Space& space : spaces) {
        json entry{{"space", io::space_to_json(space)}};
        GradCheckReport grad = gradient_check(space, grad_instances, num_anchors, seed);
        const double tol = space.is_flat() ? 1e-6 : 1e-3;
        entry["gradient_check"] = {{"instances", grad.instances},
                                   {"max_rel_err", grad.max_rel_err},
                                   {"tolerance", tol},
                                   {"pass", grad.max_rel_err < tol}};
        ok = ok && grad.max_rel_err < tol;
        std::printf("%-13s gradient check: max rel err %.3e (tol %.0e)\n",
                    to_string(space.tag()).c_str(), grad.max_rel_err, tol);

        if (space.is_hadamard()) {
            auto rng = make_rng(seed, "audit-anchors");
            AnchorSet anchors;
            for (int i = 0; i < num_anchors; ++i)
                anchors.points.push_back(random_point(space, rng));
            LipschitzReport lip = audit_lipschitz(space, anchors, trials, seed);
            entry["lipschitz"] = {{"trials", lip.trials},
                                  {"violations", lip.violations},
                                  {"diameter", lip.diameter_estimate},
                                  {"max_ratio", lip.max_ratio}};
            ok = ok && lip.violations == 0;
            std::printf("%-13s lipschitz audit: %d/%d violations, max ratio %.4f\n",
                        to_string(space.tag()).c_str(), lip.violations, lip.trials,
                        lip.max_ratio);
        } else {
            entry["lipschitz"] = {{"skipped", "non-Hadamard space: bound not guaranteed"}};
            std::printf("%-13s lipschitz audit skipped (non-Hadamard)\n",
                        to_string(space.tag()).c_str());
        }
        report.push_back(std::move(entry));
    }

    io::write_json(report_path, report);
    const fs::path out(report_path);
    write_manifest(out.parent_path().empty() ? "." : out.parent_path(), "audit",
                   json{{"space", space_name},
                        {"trials", trials},
                        {"anchors", num_anchors},
                        {"grad_instances", grad_instances},
                        {"seed", seed}});
    if (!ok) throw Error("audit detected violations (see " + report_path + ")");
    return 0;
}

int run_gfr(const Space& space, const std::string& x_path, const std::string& y_path,
            const std::string& test_x_path, const std::string& truth_path,
            const std::string& out_path) {
    Eigen::MatrixXd x = io::read_csv(x_path);
    std::vector<Point> y = io::points_from_rows(space, io::read_csv(y_path));
    gfr::GfrModel model = gfr::fit(x, y, space);
    Eigen::MatrixXd xt = io::read_csv(test_x_path);
    std::vector<Point> preds = gfr::predict_many(model, xt);
    if (!out_path.empty()) {
        io::write_csv(out_path, io::rows_from_points(space, preds));
        std::printf("wrote %zd GFR predictions to %s\n", preds.size(), out_path.c_str());
    }
    if (!truth_path.empty()) {
        std::vector<Point> truth = io::points_from_rows(space, io::read_csv(truth_path));
        std::printf("GFR MSPE vs truth: %.6f\n", mspe(preds, truth, space));
    }
    const fs::path base(out_path.empty() ? truth_path : out_path);
    write_manifest(base.parent_path().empty() ? "." : base.parent_path(), "baseline-gfr",
                   json{{"space", io::space_to_json(space)},
                        {"x", x_path},
                        {"y", y_path},
                        {"test_x", test_x_path},
                        {"truth", truth_path},
                        {"out", out_path}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"End-to-end metric regression over metric-space outputs"};
    app.require_subcommand(1);
    app.fallthrough();  // allow --seed after the subcommand name

    std::uint64_t seed = default_seed();
    app.add_option("--seed", seed, "master seed (default: E2M_SEED env or 0)");

    std::string space_name = "wasserstein1d", dgp_name = "distribution";
    int grid = 100, nodes = 10, dim = 5;
    std::string x_path, y_path, out_path, model_path, truth_path, test_x_path;
    std::string report_path = "report.json";
    int n = 500, test_n = 200, runs = 5, folds = 5, jobs = 1;
    int trials = 1000, num_anchors = 5, grad_instances = 100;
    CommonTrainFlags train_flags, grid_flags;

    auto add_space_flags = [&](CLI::App* cmd) {
        cmd->add_option("--space", space_name, "wasserstein1d|network|spd-power|spd-bw")
            ->capture_default_str();
        cmd->add_option("--grid", grid, "quantile grid size")->capture_default_str();
        cmd->add_option("--nodes", nodes, "network node count")->capture_default_str();
        cmd->add_option("--dim", dim, "SPD matrix dimension")->capture_default_str();
    };

    CLI::App* sim_cmd = app.add_subcommand("simulate", "generate a benchmark dataset");
    sim_cmd->add_option("--dgp", dgp_name, "distribution|network|spd-power|spd-bw")
        ->capture_default_str();
    sim_cmd->add_option("--n", n, "training units")->capture_default_str();
    sim_cmd->add_option("--test-n", test_n, "test units")->capture_default_str();
    sim_cmd->add_option("--out", out_path, "output directory")->required();

    CLI::App* train_cmd = app.add_subcommand("train", "fit a model");
    add_space_flags(train_cmd);
    train_cmd->add_option("--x", x_path, "predictor CSV")->required();
    train_cmd->add_option("--y", y_path, "output CSV (space row format)")->required();
    train_cmd->add_option("--out", out_path, "checkpoint JSON path")->required();
    train_flags.attach(train_cmd);

    CLI::App* pred_cmd = app.add_subcommand("predict", "predict from a checkpoint");
    pred_cmd->add_option("--model", model_path, "checkpoint JSON")->required();
    pred_cmd->add_option("--x", x_path, "predictor CSV")->required();
    pred_cmd->add_option("--out", out_path, "prediction CSV path")->required();

    CLI::App* eval_cmd = app.add_subcommand("evaluate", "MSPE of a checkpoint");
    eval_cmd->add_option("--model", model_path, "checkpoint JSON")->required();
    eval_cmd->add_option("--x", x_path, "predictor CSV")->required();
    eval_cmd->add_option("--y", y_path, "held-out observation CSV");
    eval_cmd->add_option("--truth", truth_path, "truth CSV (switches to vs-truth mode)");
    eval_cmd->add_option("--report", report_path, "JSON report path")->capture_default_str();

    CLI::App* gs_cmd = app.add_subcommand("gridsearch", "cross-validated hyperparameter grid");
    add_space_flags(gs_cmd);
    gs_cmd->add_option("--x", x_path, "predictor CSV")->required();
    gs_cmd->add_option("--y", y_path, "output CSV")->required();
    gs_cmd->add_option("--folds", folds, "CV folds")->capture_default_str();
    gs_cmd->add_option("--jobs", jobs, "parallel folds")->capture_default_str();
    gs_cmd->add_option("--report", report_path, "JSON report path")->capture_default_str();
    grid_flags.attach(gs_cmd);

    CLI::App* sens_cmd = app.add_subcommand("sensitivity", "entropy-regularization sweep");
    sens_cmd->add_option("--dgp", dgp_name, "generating process")->capture_default_str();
    sens_cmd->add_option("--n", n, "training units per run")->capture_default_str();
    sens_cmd->add_option("--runs", runs, "Monte Carlo runs per lambda")->capture_default_str();
    sens_cmd->add_option("--jobs", jobs, "parallel runs")->capture_default_str();
    sens_cmd->add_option("--report", report_path, "JSON report path")->capture_default_str();

    CLI::App* audit_cmd = app.add_subcommand("audit", "geometry audits: Lipschitz + gradients");
    audit_cmd->add_option("--space", space_name, "one space or 'all'")->capture_default_str();
    audit_cmd->add_option("--trials", trials, "Lipschitz weight pairs")->capture_default_str();
    audit_cmd->add_option("--anchors", num_anchors, "anchor count")->capture_default_str();
    audit_cmd->add_option("--grad-instances", grad_instances, "gradient-check instances")
        ->capture_default_str();
    audit_cmd->add_option("--report", report_path, "JSON report path")->capture_default_str();

    CLI::App* gfr_cmd = app.add_subcommand("baseline-gfr", "global Fréchet regression baseline");
    add_space_flags(gfr_cmd);
    gfr_cmd->add_option("--x", x_path, "predictor CSV")->required();
    gfr_cmd->add_option("--y", y_path, "output CSV")->required();
    gfr_cmd->add_option("--test-x", test_x_path, "query predictor CSV")->required();
    gfr_cmd->add_option("--truth", truth_path, "truth CSV (prints MSPE)");
    gfr_cmd->add_option("--out", out_path, "prediction CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (sim_cmd->parsed()) return run_simulate(dgp_name, n, test_n, seed, out_path);
        if (train_cmd->parsed())
            return run_train(space_from_flags(space_name, grid, nodes, dim), x_path, y_path,
                             out_path, train_flags.resolve(seed));
        if (pred_cmd->parsed()) return run_predict(model_path, x_path, out_path);
        if (eval_cmd->parsed())
            return run_evaluate(model_path, x_path, y_path, truth_path, report_path);
        if (gs_cmd->parsed())
            return run_gridsearch(space_from_flags(space_name, grid, nodes, dim), x_path, y_path,
                                  grid_flags, folds, jobs, seed, report_path);
        if (sens_cmd->parsed())
            return run_sensitivity(dgp_name, n, runs, seed, jobs, report_path);
        if (audit_cmd->parsed())
            return run_audit(space_name, trials, num_anchors, grad_instances, seed, report_path);
        if (gfr_cmd->parsed())
            return run_gfr(space_from_flags(space_name, grid, nodes, dim), x_path, y_path,
                           test_x_path, truth_path, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
