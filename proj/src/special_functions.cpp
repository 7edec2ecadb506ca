#include "invlindley/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "invlindley/errors.hpp"

namespace invlindley {
namespace {

constexpr int kMaxIterations = 50;
constexpr double kResidualTol = 1e-12;

// Puiseux series of W about the branch point -1/e in p = +-sqrt(2(ez + 1)).
double branch_point_series(double p) {
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))));
}

// Stops on the step size, so tiny |z| still gets full relative accuracy.
double halley(double w, double z) {
    for (int i = 0; i < kMaxIterations; ++i) {
        const double ew = std::exp(w);
        const double f = w * ew - z;
        if (f == 0.0) return w;
        const double wp1 = w + 1.0;
        if (wp1 == 0.0) return w;
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        const double next = w - step;
        if (!std::isfinite(next)) break;
        if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(next))) {
            return next;
        }
        w = next;
    }
    const double residual = w * std::exp(w) - z;
    if (std::abs(residual) <= kResidualTol * std::abs(z) * (1.0 + std::abs(w))) return w;
    throw ConvergenceError("lambert_w: Halley iteration did not converge for z = " + std::to_string(z));
}
}  // namespace

double lambert_w(WBranch branch, double z) {
    constexpr double inv_e = 1.0 / std::numbers::e;
    if (std::isnan(z) || z < -inv_e) {
        throw DomainError("lambert_w: argument below the branch point -1/e");
    }
    if (branch == WBranch::negative && z >= 0.0) {
        throw DomainError("lambert_w: negative branch requires z < 0");
    }
    if (z == -inv_e) return -1.0;
    const double q = std::fma(std::numbers::e, z, 1.0);
    if (q <= 0.0) return -1.0;

    if (branch == WBranch::principal) {
        if (z == 0.0) return 0.0;
        if (std::isinf(z)) return z;
        double w0;
        if (z < -0.25) {
            w0 = branch_point_series(std::sqrt(2.0 * q));
        } else if (z < 3.0) {
            w0 = std::log1p(z) * (1.0 - std::log1p(std::log1p(z)) / (2.0 + std::log1p(z)));
        } else {
            const double l1 = std::log(z);
            const double l2 = std::log(l1);
            w0 = l1 - l2 + l2 / l1;
        }
        return halley(w0, z);
    }

    double w0;
    if (z < -0.25) {
        w0 = branch_point_series(-std::sqrt(2.0 * q));
    } else {
        const double l1 = std::log(-z);
        const double l2 = std::log(-l1);
        w0 = l1 - l2 + l2 / l1;
    }
    const double w = halley(w0, z);
    return std::min(w, -1.0);
}

double lambert_wm1_from_log(double log_neg_z) {
    if (!(log_neg_z <= -1.0)) {
        throw DomainError("lambert_wm1_from_log: requires log(-z) <= -1");
    }
    if (log_neg_z > -700.0) return lambert_w(WBranch::negative, -std::exp(log_neg_z));
    // g(w) = w + log(-w) - L, Newton in w; g'(w) = 1 + 1/w.
    double w = log_neg_z - std::log(-log_neg_z);
    for (int i = 0; i < kMaxIterations; ++i) {
        const double g = w + std::log(-w) - log_neg_z;
        const double step = g / (1.0 + 1.0 / w);
        w -= step;
        if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(w)) break;
    }
    return w;
}

double log_gamma(double a) {
    if (!(a > 0.0)) throw DomainError("log_gamma: argument must be positive");
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(a, &sign);
#else
    return std::lgamma(a);
#endif
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile: p must lie in (0, 1)");

    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00, 2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // Halley refinement against the exact cdf.
    for (int i = 0; i < 2; ++i) {
        // cdf(x) - p, taken from the tail that avoids cancellation.
        const double e = (x > 0.0) ? (1.0 - p) - 0.5 * std::erfc(x / std::numbers::sqrt2)
                                   : 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
        const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

double z_two_sided(double level) {
    if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence level must lie in (0, 1)");
    const double alpha = 1.0 - level;
    return -normal_quantile(0.5 * alpha);
}

}  // namespace invlindley
