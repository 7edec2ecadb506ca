#include "invlindley/distribution.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "invlindley/errors.hpp"
#include "invlindley/numeric.hpp"
#include "invlindley/special_functions.hpp"

namespace invlindley {

IldParams::IldParams(double theta) : theta_(theta) {
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw DomainError("ILD parameter theta must be finite and > 0, got " + std::to_string(theta));
    }
}

IrdParams::IrdParams(double theta) : theta_(theta) {
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw DomainError("IRD parameter theta must be finite and > 0, got " + std::to_string(theta));
    }
}

namespace {

void require_positive(double x, const char* what) {
    if (!(x > 0.0)) throw DomainError(std::string(what) + ": x must be > 0");
}

// 1 - (1 + u) e^{-u}, the Gamma(2, 1) cdf at u, without cancellation for small u.
double gamma2_cdf(double u) {
    if (u < 0.5) {
        // sum_{k>=2} (-1)^k (k - 1) u^k / k!
        double term = u * u / 2.0;  // u^k / k! at k = 2
        double sum = term;
        for (int k = 3; k < 40; ++k) {
            term *= -u / k;
            const double add = (k - 1) * term;
            sum += add;
            if (std::abs(add) < 1e-18 * sum) break;
        }
        return sum;
    }
    return -std::expm1(-u) - u * std::exp(-u);
}

}  // namespace

double log_pdf(const IldParams& p, double x) {
    require_positive(x, "pdf");
    const double t = p.theta();
    return 2.0 * std::log(t) - std::log1p(t) + std::log1p(x) - 3.0 * std::log(x) - t / x;
}

double pdf(const IldParams& p, double x) { return std::exp(log_pdf(p, x)); }

double cdf(const IldParams& p, double x) {
    if (!(x > 0.0)) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double t = p.theta();
    return (1.0 + t / ((1.0 + t) * x)) * std::exp(-t / x);
}

double survival(const IldParams& p, double x) {
    if (!(x > 0.0)) return 1.0;
    if (std::isinf(x)) return 0.0;
    // S = [1 - (1 + u) e^{-u}] + theta^2 / ((1 + theta) x) e^{-u}, u = theta / x; both terms >= 0.
    const double t = p.theta();
    const double u = t / x;
    return gamma2_cdf(u) + t * t / ((1.0 + t) * x) * std::exp(-u);
}

double hazard(const IldParams& p, double x) {
    require_positive(x, "hazard");
    return pdf(p, x) / survival(p, x);
}

double log_hazard_slope(const IldParams& p, double x) {
    require_positive(x, "hazard");
    const double t = p.theta();
    const double dlogf = -(2.0 * x * x - (t - 3.0) * x - t) / (x * x * (1.0 + x));
    return dlogf + hazard(p, x);
}

double mode(const IldParams& p) {
    const double t = p.theta();
    const double b = t - 3.0;
    const double root = std::sqrt(b * b + 8.0 * t);
    // Rationalised form when t - 3 < 0 keeps precision as theta -> 0.
    if (b < 0.0) return 2.0 * t / (root - b);
    return (b + root) / 4.0;
}

double hazard_peak(const IldParams& p) {
    constexpr double lo = 1e-8;
    constexpr double hi = 1e8;
    constexpr int per_decade = 16;
    const double ratio = std::pow(10.0, 1.0 / per_decade);

    double a = lo;
    double fa = log_hazard_slope(p, a);
    for (double b = a * ratio; b <= hi * ratio; b *= ratio) {
        const double fb = log_hazard_slope(p, b);
        if (fa > 0.0 && fb <= 0.0) {
            if (fb == 0.0) return b;
            std::uintmax_t iters = 200;
            auto tol = boost::math::tools::eps_tolerance<double>(50);
            auto [x0, x1] = boost::math::tools::toms748_solve(
                [&](double x) { return log_hazard_slope(p, x); }, a, b, fa, fb, tol, iters);
            return 0.5 * (x0 + x1);
        }
        a = b;
        fa = fb;
    }
    throw ConvergenceError("hazard_peak: no sign change of the log-hazard slope in (1e-8, 1e8)");
}

double quantile(const IldParams& p, double prob) {
    if (!(prob > 0.0 && prob < 1.0)) throw DomainError("quantile: probability must lie in (0, 1)");
    const double t = p.theta();
    // W_{-1}(-prob (1 + t) e^{-(1 + t)}), taken through its logarithm so large theta cannot underflow.
    const double w = lambert_wm1_from_log(std::log(prob) + std::log1p(t) - (1.0 + t));
    const double x = -t / (1.0 + t + w);
    if (prob <= 0.5) return x;

    // Upper tail: 1 + t + w cancels as prob -> 1, so polish u = t / x by Newton
    // on log S(u) = log(1 - prob), with S(u) = G2(u) + t u e^{-u} / (1 + t).
    const double q = 1.0 - prob;
    const double log_q = std::log(q);
    double u = (std::isfinite(x) && x > 0.0) ? t / x : q * (1.0 + t) / t;
    for (int i = 0; i < 60; ++i) {
        const double su = gamma2_cdf(u) + t * u * std::exp(-u) / (1.0 + t);
        const double ds = std::exp(-u) * (t + u) / (1.0 + t);
        const double step = (std::log(su) - log_q) * su / ds;
        double next = u - step;
        if (next <= 0.0) next = 0.5 * u;
        if (std::abs(next - u) <= 4.0 * std::numeric_limits<double>::epsilon() * u) {
            u = next;
            break;
        }
        u = next;
    }
    return t / u;
}

double median(const IldParams& p) { return quantile(p, 0.5); }

double renyi_entropy(const IldParams& p, double gamma) {
    if (!(gamma > 0.5) || gamma == 1.0) {
        throw DomainError("renyi_entropy: order must satisfy gamma > 1/2 and gamma != 1");
    }
    const double t = p.theta();
    const double log_c = 2.0 * std::log(t) - std::log1p(t);
    // With s = theta / x the integrand of f^gamma dx becomes
    // c^g (1 + s/t)^g (s/t)^(2g-2) e^{-g s} / t on (0, inf).
    auto integrand = [&](double s) {
        if (s <= 0.0) return 0.0;
        const double logv = gamma * log_c + gamma * std::log1p(s / t) +
                            (2.0 * gamma - 2.0) * std::log(s / t) - gamma * s - std::log(t);
        return std::exp(logv);
    };
    boost::math::quadrature::exp_sinh<double> integrator;
    const double integral = integrator.integrate(integrand, 0.0, std::numeric_limits<double>::infinity(),
                                                 std::sqrt(std::numeric_limits<double>::epsilon()) * 1e-4);
    return std::log(integral) / (1.0 - gamma);
}

double renyi_entropy_series(const IldParams& p, int gamma) {
    if (gamma < 2) throw DomainError("renyi_entropy_series: integer order must be >= 2");
    const double t = p.theta();
    const double g = gamma;
    // log of each term C(g, j) Gamma(3g - j - 1) / (t g)^(3g - j - 1), combined by log-sum-exp.
    std::vector<double> logs;
    logs.reserve(static_cast<std::size_t>(gamma) + 1);
    for (int j = 0; j <= gamma; ++j) {
        const double a = 3.0 * g - j - 1.0;
        const double log_binom = log_gamma(g + 1.0) - log_gamma(j + 1.0) - log_gamma(g - j + 1.0);
        logs.push_back(log_binom + log_gamma(a) - a * std::log(t * g));
    }
    double peak = logs.front();
    for (double v : logs) peak = std::max(peak, v);
    CompensatedSum acc;
    for (double v : logs) acc += std::exp(v - peak);
    const double log_integral = 2.0 * g * std::log(t) - g * std::log1p(t) + peak + std::log(acc.value());
    return log_integral / (1.0 - g);
}

double draw(const IldParams& p, Rng& rng) {
    const double t = p.theta();
    const double u = rng.uniform();
    if (u <= t / (t + 1.0)) return 1.0 / rng.exponential(t);
    return 1.0 / (rng.exponential(t) + rng.exponential(t));
}

void sample_into(const IldParams& p, Rng& rng, std::span<double> out) {
    for (double& v : out) v = draw(p, rng);
}

std::vector<double> sample(const IldParams& p, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw DomainError("sample: n must be >= 1");
    std::vector<double> out(n);
    Rng rng(seed, 0);
    sample_into(p, rng, out);
    return out;
}

double ird_pdf(const IrdParams& p, double x) {
    require_positive(x, "ird_pdf");
    const double t = p.theta();
    return 2.0 * t / (x * x * x) * std::exp(-t / (x * x));
}

double ird_cdf(const IrdParams& p, double x) {
    if (!(x > 0.0)) return 0.0;
    if (std::isinf(x)) return 1.0;
    return std::exp(-p.theta() / (x * x));
}

IrdParams ird_mle(std::span<const double> data) {
    if (data.empty()) throw DomainError("ird_mle: empty data");
    CompensatedSum s;
    for (double x : data) {
        require_positive(x, "ird_mle");
        s += 1.0 / (x * x);
    }
    return IrdParams(static_cast<double>(data.size()) / s.value());
}

double ird_loglik(const IrdParams& p, std::span<const double> data) {
    const double log2t = std::log(2.0 * p.theta());
    CompensatedSum acc;
    for (double x : data) {
        require_positive(x, "ird_loglik");
        acc += log2t - 3.0 * std::log(x) - p.theta() / (x * x);
    }
    return acc.value();
}

}  // namespace invlindley
