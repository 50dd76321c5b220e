#include <doctest.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

#include "e2m/audit.hpp"
#include "e2m/model.hpp"
#include "e2m/rng.hpp"

using namespace e2m;

namespace {

// Small synthetic task: outputs are convex combinations of two base quantile
// vectors with a weight that depends smoothly on x.
struct ToyTask {
    Space space = Space::wasserstein(20);
    Eigen::MatrixXd x;
    std::vector<Point> y;
};

ToyTask make_toy(int n, std::uint64_t seed) {
    ToyTask task;
    auto rng = make_rng(seed, "toy");
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Eigen::VectorXd lo(20), hi(20);
    for (int k = 0; k < 20; ++k) {
        lo[k] = k * 0.1;
        hi[k] = 2.0 + k * 0.2;
    }
    task.x.resize(n, 2);
    for (int i = 0; i < n; ++i) {
        const double u = unif(rng), v = unif(rng);
        task.x.row(i) << u, v;
        const double t = 0.5 * (std::sin(3.0 * u) + 1.0) * 0.8 + 0.1 * v;
        task.y.push_back(t * hi + (1.0 - t) * lo);
    }
    return task;
}

}  // namespace

TEST_CASE("select_anchors draws distinct indices") {
    std::vector<int> all = select_anchors(10, 10, 1);
    for (int i = 0; i < 10; ++i) CHECK(all[static_cast<std::size_t>(i)] == i);

    std::vector<int> sub = select_anchors(100, 20, 1);
    CHECK(sub.size() == 20);
    std::set<int> distinct(sub.begin(), sub.end());
    CHECK(distinct.size() == 20);
    CHECK(*std::min_element(sub.begin(), sub.end()) >= 0);
    CHECK(*std::max_element(sub.begin(), sub.end()) < 100);
    CHECK(select_anchors(100, 20, 1) == sub);
    CHECK_THROWS_AS(select_anchors(5, 6, 1), ValidationError);
}

TEST_CASE("training reduces holdout error on a smooth task") {
    ToyTask task = make_toy(120, 3);
    TrainConfig cfg;
    cfg.epochs = 200;
    cfg.hidden_dims = {16};
    cfg.seed = 9;
    TrainResult result = train(task.x, task.y, task.space, cfg);
    REQUIRE(result.history.size() >= 2);
    CHECK(result.history.back().holdout_mspe < result.history.front().holdout_mspe);
    // predictions are valid space points
    Point p = predict(result.checkpoint, task.x.row(0).transpose());
    CHECK_NOTHROW(task.space.validate(p));
}

TEST_CASE("train is deterministic given the config") {
    ToyTask task = make_toy(60, 4);
    TrainConfig cfg;
    cfg.epochs = 40;
    cfg.hidden_dims = {8};
    cfg.seed = 17;
    TrainResult a = train(task.x, task.y, task.space, cfg);
    TrainResult b = train(task.x, task.y, task.space, cfg);
    CHECK(a.checkpoint.to_json() == b.checkpoint.to_json());
    cfg.seed = 18;
    TrainResult c = train(task.x, task.y, task.space, cfg);
    CHECK(a.checkpoint.to_json() != c.checkpoint.to_json());
}

TEST_CASE("checkpoint json roundtrips and predicts identically") {
    ToyTask task = make_toy(50, 5);
    TrainConfig cfg;
    cfg.epochs = 20;
    cfg.hidden_dims = {8};
    cfg.anchors_m = 25;
    cfg.seed = 2;
    TrainResult result = train(task.x, task.y, task.space, cfg);
    Checkpoint back = Checkpoint::from_json(result.checkpoint.to_json());
    CHECK(back.to_json() == result.checkpoint.to_json());
    for (int i = 0; i < 5; ++i) {
        Eigen::VectorXd q = task.x.row(i).transpose();
        CHECK((predict(back, q) - predict(result.checkpoint, q)).norm() == 0.0);
    }
    CHECK(back.anchors.size() == 25);
}

TEST_CASE("predict_many agrees with predict") {
    ToyTask task = make_toy(40, 6);
    TrainConfig cfg;
    cfg.epochs = 15;
    cfg.hidden_dims = {8};
    cfg.seed = 3;
    Checkpoint ckpt = train(task.x, task.y, task.space, cfg).checkpoint;
    std::vector<Point> batch = predict_many(ckpt, task.x.topRows(6));
    for (int i = 0; i < 6; ++i)
        CHECK((batch[static_cast<std::size_t>(i)] - predict(ckpt, task.x.row(i).transpose()))
                  .norm() < 1e-10);
}

TEST_CASE("mspe definition") {
    Space s = Space::wasserstein(5);
    Point a = Eigen::VectorXd::Zero(5);
    Point b = Eigen::VectorXd::Ones(5);
    CHECK(mspe({a, a}, {b, a}, s) == doctest::Approx(0.5));
    CHECK_THROWS_AS(mspe({a}, {a, b}, s), ValidationError);
}

TEST_CASE("train validates its configuration") {
    ToyTask task = make_toy(20, 7);
    TrainConfig cfg;
    cfg.hidden_dims = {};
    CHECK_THROWS_AS(train(task.x, task.y, task.space, cfg), ValidationError);
    cfg = TrainConfig{};
    cfg.anchors_m = 50;
    CHECK_THROWS_AS(train(task.x, task.y, task.space, cfg), ValidationError);
    cfg = TrainConfig{};
    cfg.dropout = 1.0;
    CHECK_THROWS_AS(train(task.x, task.y, task.space, cfg), ValidationError);
}

TEST_CASE("cross validation produces per-fold scores") {
    ToyTask task = make_toy(60, 8);
    TrainConfig cfg;
    cfg.epochs = 15;
    cfg.hidden_dims = {8};
    CvResult cv = cross_validate(task.x, task.y, task.space, cfg, CvScheme::kfold(3), 1);
    REQUIRE(cv.per_split.size() == 3);
    CHECK(cv.mean == doctest::Approx((cv.per_split[0] + cv.per_split[1] + cv.per_split[2]) / 3));
    for (double v : cv.per_split) CHECK(v >= 0.0);

    // parallel folds give the same answer as sequential
    CvResult cv2 = cross_validate(task.x, task.y, task.space, cfg, CvScheme::kfold(3), 1, 2);
    CHECK(cv.per_split == cv2.per_split);
}

TEST_CASE("grid search picks the best cell with deterministic tie-breaks") {
    ToyTask task = make_toy(50, 9);
    TrainConfig base;
    base.epochs = 10;
    GridSpec grid;
    grid.lambdas = {0.0};
    grid.depths = {1, 2};
    grid.widths = {4, 8};
    GridResult result = grid_search(task.x, task.y, task.space, base, grid, 3, 1);
    REQUIRE(result.table.size() == 4);
    double best = result.table.front().cv_mspe;
    for (const GridCell& c : result.table) best = std::min(best, c.cv_mspe);
    CvResult check = cross_validate(task.x, task.y, task.space, result.best,
                                    CvScheme::kfold(3), 1);
    CHECK(check.mean == doctest::Approx(best));
}
