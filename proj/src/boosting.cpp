#include "fmoe/boosting.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace fmoe::boosting {

namespace {

void check_alpha_p(double alpha, double p) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("alpha must lie in (0, 0.5)");
    if (!(p > 0.0 && p < alpha)) throw std::invalid_argument("p must lie in (0, alpha)");
}

}  // namespace

void BoostConfig::validate() const {
    if (k < 1) throw std::invalid_argument("block count k must be at least 1");
    check_alpha_p(alpha, p);
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    if (threads < 1) throw std::invalid_argument("threads must be at least 1");
}

ConcentrationConstants ConcentrationConstants::of(double alpha, double p) {
    return {boosting::psi(alpha, p), boosting::c_alpha(alpha)};
}

double psi(double alpha, double p) {
    if (!(p > 0.0 && p <= alpha && alpha < 1.0)) {
        throw std::invalid_argument("psi requires 0 < p <= alpha < 1");
    }
    if (p == alpha) return 0.0;
    return (1.0 - alpha) * std::log((1.0 - alpha) / (1.0 - p)) + alpha * std::log(alpha / p);
}

double c_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("c_alpha requires alpha in (0, 0.5)");
    return (1.0 - alpha) / std::sqrt(1.0 - 2.0 * alpha);
}

int select_block_count(double delta, double alpha, double p) {
    check_alpha_p(alpha, p);
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
    const double ratio = std::log(1.0 / delta) / psi(alpha, p);
    if (ratio >= static_cast<double>(std::numeric_limits<int>::max() - 1)) {
        throw std::invalid_argument("delta too small: block count overflows");
    }
    return static_cast<int>(std::floor(ratio)) + 1;
}

std::vector<IndexRange> split_blocks(std::size_t n, std::size_t k, bool assign_leftover) {
    if (k == 0) throw std::invalid_argument("block count must be positive");
    if (k > n) {
        throw std::invalid_argument("block count k=" + std::to_string(k) + " exceeds sample size n=" +
                                    std::to_string(n));
    }
    const std::size_t m = n / k;
    std::vector<IndexRange> out;
    out.reserve(k);
    for (std::size_t j = 0; j < k; ++j) out.push_back({j * m, (j + 1) * m});
    if (assign_leftover) out.back().end = n;
    return out;
}

BoundReport theoretical_bound(const BoostConfig& config, double epsilon, const CurvatureBound& curvature,
                              bool conditional) {
    config.validate();
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be positive");
    const double c = c_alpha(config.alpha);
    double radius = c * epsilon;
    if (curvature.positive()) {
        const double limit = *curvature.diameter_bound() / (std::numbers::pi * c);
        if (!(epsilon < limit)) {
            throw std::invalid_argument("epsilon=" + std::to_string(epsilon) +
                                        " must be below D_kappa/(pi*C_alpha)=" + std::to_string(limit));
        }
        radius *= std::numbers::pi / 2.0;
    }
    double failure = std::exp(-config.k * psi(config.alpha, config.p));
    if (conditional) failure /= 1.0 - std::pow(config.p, config.k);
    return {radius, failure};
}

double fmom_radius(double sigma2, std::size_t n, double delta) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be positive");
    if (n == 0) throw std::invalid_argument("n must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    return 11.0 * std::sqrt(sigma2 * std::log(1.4 / delta) / static_cast<double>(n));
}

}  // namespace fmoe::boosting
