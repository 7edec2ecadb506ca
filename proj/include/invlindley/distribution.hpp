#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "invlindley/rng.hpp"

namespace invlindley {

/// Scale parameter of an inverse Lindley distribution ILD(theta); theta > 0.
class IldParams {
public:
    explicit IldParams(double theta);
    double theta() const noexcept { return theta_; }

private:
    double theta_;
};

/// Scale parameter of the inverse Rayleigh comparison model, F(x) = exp(-theta / x^2).
class IrdParams {
public:
    explicit IrdParams(double theta);
    double theta() const noexcept { return theta_; }

private:
    double theta_;
};

// Inverse Lindley kernel. Everything here is pure and thread-safe.

double pdf(const IldParams& p, double x);
double log_pdf(const IldParams& p, double x);
/// Zero for x <= 0.
double cdf(const IldParams& p, double x);
double survival(const IldParams& p, double x);
double hazard(const IldParams& p, double x);
/// d/dx log h(x); positive left of the hazard peak, negative right of it.
double log_hazard_slope(const IldParams& p, double x);

double mode(const IldParams& p);
double hazard_peak(const IldParams& p);
double quantile(const IldParams& p, double prob);
double median(const IldParams& p);

/// Renyi entropy of order gamma (> 1/2, != 1) by quadrature.
double renyi_entropy(const IldParams& p, double gamma);
/// Closed-form Renyi entropy for integer order gamma >= 2 (finite binomial series).
double renyi_entropy_series(const IldParams& p, int gamma);

/// Draws one ILD variate by the exponential / gamma(2) mixture of the reciprocal.
double draw(const IldParams& p, Rng& rng);
void sample_into(const IldParams& p, Rng& rng, std::span<double> out);
/// n i.i.d. draws from the generator stream Rng(seed, 0). Rejects n == 0.
std::vector<double> sample(const IldParams& p, std::size_t n, std::uint64_t seed);

// Inverse Rayleigh comparison model.

double ird_pdf(const IrdParams& p, double x);
double ird_cdf(const IrdParams& p, double x);
IrdParams ird_mle(std::span<const double> data);
double ird_loglik(const IrdParams& p, std::span<const double> data);

}  // namespace invlindley
