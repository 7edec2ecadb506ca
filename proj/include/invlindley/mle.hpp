#pragma once

#include <cstddef>
#include <span>

#include "invlindley/distribution.hpp"

namespace invlindley {

/// (n, sum of 1/x_i): all the likelihood needs from an ILD sample.
class SufficientStats {
public:
    SufficientStats(std::size_t n, double reciprocal_sum);
    std::size_t n() const noexcept { return n_; }
    double reciprocal_sum() const noexcept { return s_; }

private:
    std::size_t n_;
    double s_;
};

struct ThetaEstimate {
    double theta_hat;
    double std_err;
    double ci_low;
    double ci_high;
    double level;
};

/// Throws DomainError on empty data or a non-positive value (naming its index).
SufficientStats sufficient_stats(std::span<const double> data);

/// Positive root of s t^2 + (s - n) t - 2n = 0.
double mle_theta(const SufficientStats& stats);

/// d/dtheta of the log-likelihood: 2n/theta - n/(1 + theta) - s.
double score(double theta, const SufficientStats& stats);

double loglik(const IldParams& p, std::span<const double> data);

/// Per-observation Fisher information (theta^2 + 4 theta + 2) / (theta^2 (1 + theta)^2).
double fisher_info(const IldParams& p);

/// Wald interval theta_hat -+ z * sqrt(1 / (n I(theta_hat))).
ThetaEstimate theta_ci(double theta_hat, std::size_t n, double level);

}  // namespace invlindley
