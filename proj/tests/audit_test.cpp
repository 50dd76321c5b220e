#include <doctest.h>

#include "e2m/audit.hpp"
#include "e2m/rng.hpp"

using namespace e2m;

namespace {

AnchorSet make_anchors(const Space& space, int m, std::uint64_t seed) {
    auto rng = make_rng(seed, "test-anchors");
    AnchorSet anchors;
    for (int i = 0; i < m; ++i) anchors.points.push_back(random_point(space, rng));
    return anchors;
}

}  // namespace

TEST_CASE("random points satisfy space validation") {
    std::mt19937_64 rng(1);
    for (const Space& s : {Space::wasserstein(30), Space::network(6), Space::spd_power(4),
                           Space::spd_bw(2)})
        for (int t = 0; t < 20; ++t) CHECK_NOTHROW(s.validate(random_point(s, rng)));
}

TEST_CASE("anchor set validation") {
    Space s = Space::network(5);
    AnchorSet anchors = make_anchors(s, 3, 2);
    CHECK_NOTHROW(anchors.validate(s));
    anchors.source_indices = {0, 1, 1};
    CHECK_THROWS_AS(anchors.validate(s), ValidationError);
    anchors.source_indices = {0, 1};
    CHECK_THROWS_AS(anchors.validate(s), ValidationError);
    AnchorSet empty;
    CHECK_THROWS_AS(empty.validate(s), ValidationError);
}

TEST_CASE("pairwise diameter on two anchors is their distance") {
    Space s = Space::wasserstein(20);
    AnchorSet anchors = make_anchors(s, 2, 3);
    CHECK(pairwise_diameter(s, anchors) ==
          doctest::Approx(s.distance(anchors.points[0], anchors.points[1])));
}

TEST_CASE("lipschitz audit passes on Hadamard spaces") {
    for (const Space& s : {Space::wasserstein(30), Space::network(6), Space::spd_power(3)}) {
        AnchorSet anchors = make_anchors(s, 5, 4);
        LipschitzReport report = audit_lipschitz(s, anchors, 200, 5);
        CHECK(report.trials == 200);
        CHECK(report.violations == 0);
        CHECK(report.max_ratio <= 1.0);
    }
}

TEST_CASE("lipschitz audit refuses the curved space") {
    Space s = Space::spd_bw(2);
    AnchorSet anchors = make_anchors(s, 3, 6);
    CHECK_THROWS_WITH_AS(audit_lipschitz(s, anchors, 10, 1),
                         "non-Hadamard space: bound not guaranteed", Error);
}

TEST_CASE("gradient check passes per space at its tolerance") {
    for (const Space& s : {Space::wasserstein(30), Space::network(6), Space::spd_power(3)}) {
        GradCheckReport report = gradient_check(s, 5, 4, 7);
        CHECK(report.max_rel_err < 1e-6);
    }
    GradCheckReport bw = gradient_check(Space::spd_bw(2), 5, 4, 7);
    CHECK(bw.max_rel_err < 1e-3);
}
