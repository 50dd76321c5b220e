#include "e2m/simplex.hpp"

#include <cmath>

namespace e2m {

Eigen::VectorXd validate_weights(const Eigen::VectorXd& raw) {
    if (raw.size() == 0) throw ValidationError("weights: empty vector");
    for (Eigen::Index i = 0; i < raw.size(); ++i) {
        if (!std::isfinite(raw[i]))
            throw ValidationError("weights: non-finite coordinate at index " + std::to_string(i));
        if (raw[i] < 0.0)
            throw ValidationError("weights: negative coordinate at index " + std::to_string(i));
    }
    const double sum = raw.sum();
    if (std::abs(sum - 1.0) > 1e-9)
        throw ValidationError("weights: coordinates sum to " + std::to_string(sum) +
                              ", expected 1 within 1e-9");
    return raw / sum;
}

Eigen::VectorXd sample_simplex(Eigen::Index n, std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) w[i] = expo(rng);
    return w / w.sum();
}

}  // namespace e2m
