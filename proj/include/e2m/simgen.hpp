#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "e2m/model.hpp"
#include "e2m/space.hpp"

namespace e2m::sim {

enum class Dgp { Distribution, Network, SpdPower, SpdBw };

std::string to_string(Dgp dgp);
Dgp parse_dgp(const std::string& name);
Space space_for(Dgp dgp);
int num_predictors(Dgp dgp);

struct SimDataset {
    Dgp dgp = Dgp::Distribution;
    Eigen::MatrixXd x;     // n x p
    std::vector<Point> y;  // observed outputs (space row format)
    std::uint64_t seed = 0;
};

// Seeded draw of n (X, Y) pairs from one of the four generating processes.
// Distribution outputs are empirical quantile vectors built from 100 raw
// samples per unit; the other outputs are exact space points.
SimDataset generate(Dgp dgp, int n, std::uint64_t seed);

// Conditional Fréchet mean oracle at each row of x. Closed form for the
// distribution and network processes; seeded Monte Carlo for the SPD ones
// (`draws` per point; 0 picks the per-process default).
std::vector<Point> truth_points(Dgp dgp, const Eigen::MatrixXd& x, std::uint64_t seed,
                                int draws = 0);

struct BenchmarkConfig {
    Dgp dgp = Dgp::Distribution;
    int n = 500;
    int runs = 1;
    int test_size = 200;
    TrainConfig train;
    bool with_gfr = true;
    std::uint64_t seed = 0;
    int jobs = 1;
};

struct BenchmarkReport {
    std::vector<double> e2m_mspe;  // per run
    std::vector<double> gfr_mspe;  // empty when GFR is skipped
    double e2m_amspe = 0.0, e2m_sd = 0.0;
    double gfr_amspe = 0.0, gfr_sd = 0.0;
};

// Per run: fresh train/test data, E2M fit (and optionally GFR), MSPE against
// the truth oracle on fresh test inputs. Run seeds derive from the master seed.
BenchmarkReport run_benchmark(const BenchmarkConfig& cfg);

}  // namespace e2m::sim
