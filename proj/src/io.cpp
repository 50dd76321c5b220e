#include "e2m/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace e2m::io {

Eigen::MatrixXd parse_csv_string(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ValidationError("csv: cannot parse value '" + cell + "'");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ValidationError("csv: ragged rows (" + std::to_string(row.size()) + " vs " +
                                  std::to_string(rows.front().size()) + " columns)");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ValidationError("csv: no data rows");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return m;
}

Eigen::MatrixXd read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_csv_string(buf.str());
}

std::string csv_string(const Eigen::MatrixXd& m) {
    std::string out;
    char cell[40];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(cell, sizeof(cell), "%.17g", m(i, j));
            out += cell;
            out += (j + 1 < m.cols()) ? ',' : '\n';
        }
    }
    return out;
}

void write_csv(const std::string& path, const Eigen::MatrixXd& m) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << csv_string(m);
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    return nlohmann::json::parse(in);
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

nlohmann::json space_to_json(const Space& space) {
    nlohmann::json j;
    j["space"] = to_string(space.tag());
    switch (space.tag()) {
        case SpaceTag::Wasserstein1d: j["M"] = space.grid_size(); break;
        case SpaceTag::Network: j["V"] = space.num_nodes(); break;
        case SpaceTag::SpdPower:
        case SpaceTag::SpdBw: j["l"] = space.dim(); break;
    }
    return j;
}

Space space_from_json(const nlohmann::json& j) {
    SpaceTag tag = parse_space_tag(j.at("space").get<std::string>());
    switch (tag) {
        case SpaceTag::Wasserstein1d: return Space::wasserstein(j.value("M", 100));
        case SpaceTag::Network: return Space::network(j.at("V").get<int>());
        case SpaceTag::SpdPower: return Space::spd_power(j.at("l").get<int>());
        case SpaceTag::SpdBw: return Space::spd_bw(j.at("l").get<int>());
    }
    throw Error("invalid space json");
}

std::vector<Point> points_from_rows(const Space& space, const Eigen::MatrixXd& rows) {
    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(rows.rows()));
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        try {
            points.push_back(space.from_row(rows.row(i).transpose()));
        } catch (const ValidationError& e) {
            throw ValidationError("row " + std::to_string(i) + ": " + e.what());
        }
    }
    return points;
}

Eigen::MatrixXd rows_from_points(const Space& space, const std::vector<Point>& points) {
    if (points.empty()) throw ValidationError("rows_from_points: no points");
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(points.size()), space.row_len());
    for (std::size_t i = 0; i < points.size(); ++i)
        rows.row(static_cast<Eigen::Index>(i)) = space.to_row(points[i]).transpose();
    return rows;
}

}  // namespace e2m::io
