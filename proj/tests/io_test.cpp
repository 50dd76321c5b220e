#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>

#include "e2m/audit.hpp"
#include "e2m/io.hpp"

using namespace e2m;

TEST_CASE("csv strings roundtrip at full precision") {
    Eigen::MatrixXd m(2, 3);
    m << 1.0, 1.0 / 3.0, -2.5e-17, 4, 5, 6.000000000000001;
    Eigen::MatrixXd back = io::parse_csv_string(io::csv_string(m));
    CHECK((back - m).norm() == 0.0);
}

TEST_CASE("csv parsing rejects malformed input") {
    CHECK_THROWS_AS(io::parse_csv_string("1,2\n3\n"), ValidationError);
    CHECK_THROWS_AS(io::parse_csv_string("1,abc\n"), ValidationError);
    CHECK_THROWS_AS(io::parse_csv_string(""), ValidationError);
}

TEST_CASE("csv files roundtrip") {
    const std::string path = (std::filesystem::temp_directory_path() / "e2m_io_test.csv").string();
    Eigen::MatrixXd m = Eigen::MatrixXd::Random(5, 4);
    io::write_csv(path, m);
    CHECK((io::read_csv(path) - m).norm() == 0.0);
    std::remove(path.c_str());
    CHECK_THROWS_AS(io::read_csv(path), Error);
}

TEST_CASE("space json sidecars roundtrip") {
    for (const Space& s : {Space::wasserstein(50), Space::network(8), Space::spd_power(4),
                           Space::spd_bw(2)}) {
        Space back = io::space_from_json(io::space_to_json(s));
        CHECK(back.tag() == s.tag());
        CHECK(back.row_len() == s.row_len());
    }
    CHECK_THROWS_AS(io::space_from_json(nlohmann::json{{"space", "frobnicate"}}),
                    ValidationError);
}

TEST_CASE("point row serialization roundtrips per space") {
    std::mt19937_64 rng(2);
    for (const Space& s : {Space::wasserstein(20), Space::network(5), Space::spd_power(3),
                           Space::spd_bw(2)}) {
        std::vector<Point> pts;
        for (int i = 0; i < 3; ++i) pts.push_back(random_point(s, rng));
        Eigen::MatrixXd rows = io::rows_from_points(s, pts);
        std::vector<Point> back = io::points_from_rows(s, rows);
        for (int i = 0; i < 3; ++i) CHECK((back[i] - pts[i]).norm() < 1e-12);
    }
}
