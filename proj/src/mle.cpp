#include "invlindley/mle.hpp"

#include <cmath>
#include <string>

#include "invlindley/errors.hpp"
#include "invlindley/numeric.hpp"
#include "invlindley/special_functions.hpp"

namespace invlindley {

SufficientStats::SufficientStats(std::size_t n, double reciprocal_sum) : n_(n), s_(reciprocal_sum) {
    if (n == 0) throw DomainError("sufficient statistics need n >= 1");
    if (!(reciprocal_sum > 0.0) || !std::isfinite(reciprocal_sum)) {
        throw DomainError("sufficient statistics need a finite positive reciprocal sum");
    }
}

SufficientStats sufficient_stats(std::span<const double> data) {
    if (data.empty()) throw DomainError("sufficient_stats: empty data");
    CompensatedSum s;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!(data[i] > 0.0) || !std::isfinite(data[i])) {
            throw DomainError("sufficient_stats: observation " + std::to_string(i) +
                              " is not a finite positive value");
        }
        s += 1.0 / data[i];
    }
    return {data.size(), s.value()};
}

double mle_theta(const SufficientStats& stats) {
    const double n = static_cast<double>(stats.n());
    const double s = stats.reciprocal_sum();
    const double b = s - n;
    const double disc = std::sqrt(b * b + 8.0 * n * s);
    // Equivalent forms of the positive root; pick the one without cancellation.
    if (b > 0.0) return 4.0 * n / (b + disc);
    return (disc - b) / (2.0 * s);
}

double score(double theta, const SufficientStats& stats) {
    const double n = static_cast<double>(stats.n());
    return 2.0 * n / theta - n / (1.0 + theta) - stats.reciprocal_sum();
}

double loglik(const IldParams& p, std::span<const double> data) {
    CompensatedSum acc;
    for (double x : data) acc += log_pdf(p, x);
    return acc.value();
}

double fisher_info(const IldParams& p) {
    const double t = p.theta();
    return (t * t + 4.0 * t + 2.0) / (t * t * (1.0 + t) * (1.0 + t));
}

ThetaEstimate theta_ci(double theta_hat, std::size_t n, double level) {
    const IldParams p(theta_hat);
    if (n == 0) throw DomainError("theta_ci: n must be >= 1");
    const double z = z_two_sided(level);
    const double se = std::sqrt(1.0 / (static_cast<double>(n) * fisher_info(p)));
    return {theta_hat, se, theta_hat - z * se, theta_hat + z * se, level};
}

}  // namespace invlindley
