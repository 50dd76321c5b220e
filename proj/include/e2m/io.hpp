#pragma once

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "e2m/space.hpp"

namespace e2m::io {

// Plain numeric CSV, no header, values written with full double precision.
Eigen::MatrixXd read_csv(const std::string& path);
void write_csv(const std::string& path, const Eigen::MatrixXd& m);

std::string csv_string(const Eigen::MatrixXd& m);
Eigen::MatrixXd parse_csv_string(const std::string& text);

nlohmann::json read_json(const std::string& path);
void write_json(const std::string& path, const nlohmann::json& j);

// Sidecar header: {"space":"wasserstein1d","M":100} | {"space":"network","V":10}
// | {"space":"spd-power"|"spd-bw","l":5}.
nlohmann::json space_to_json(const Space& space);
Space space_from_json(const nlohmann::json& j);

std::vector<Point> points_from_rows(const Space& space, const Eigen::MatrixXd& rows);
Eigen::MatrixXd rows_from_points(const Space& space, const std::vector<Point>& points);

}  // namespace e2m::io
