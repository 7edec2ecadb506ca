#include "invlindley/bayes_lindley.hpp"

#include <cmath>
#include <string>

#include "invlindley/errors.hpp"
#include "invlindley/stress_strength.hpp"

namespace invlindley {

PriorSpec PriorSpec::gamma(double a1, double b1, double a2, double b2) {
    for (double v : {a1, b1, a2, b2}) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw DomainError("gamma prior hyperparameters must be finite and >= 0");
        }
    }
    return PriorSpec(Kind::gamma, {a1, b1}, {a2, b2});
}

std::optional<GammaHyper> PriorSpec::hyper(int which) const {
    if (which != 1 && which != 2) throw DomainError("parameter index must be 1 or 2");
    if (kind_ == Kind::jeffrey) return std::nullopt;
    return which == 1 ? h1_ : h2_;
}

double PriorSpec::log_prior_gradient(int which, double theta) const {
    const auto h = hyper(which);
    if (!h) {
        return (theta + 2.0) / (theta * theta + 4.0 * theta + 2.0) - 1.0 / theta - 1.0 / (1.0 + theta);
    }
    return (h->a - 1.0) / theta - h->b;
}

GammaHyper elicit_gamma_hyper(double prior_mean, double prior_variance) {
    if (!(prior_mean > 0.0) || !(prior_variance > 0.0)) {
        throw DomainError("elicit_gamma_hyper: mean and variance must be > 0");
    }
    return {prior_mean * prior_mean / prior_variance, prior_mean / prior_variance};
}

namespace {

struct SampleTerms {
    double theta_hat;
    double sigma;
    double l3;
    double rho;
};

SampleTerms sample_terms(const SufficientStats& stats, int which, const PriorSpec& prior) {
    const double n = static_cast<double>(stats.n());
    const double t = mle_theta(stats);
    if (!(t > 0.0) || !std::isfinite(t)) throw ApproximationError("Lindley terms: MLE is not positive");
    const double hessian = -2.0 * n / (t * t) + n / ((1.0 + t) * (1.0 + t));
    const double sigma = -1.0 / hessian;
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ApproximationError("Lindley terms: observed information is not positive");
    }
    const double l3 = 4.0 * n / (t * t * t) - 2.0 * n / ((1.0 + t) * (1.0 + t) * (1.0 + t));
    return {t, sigma, l3, prior.log_prior_gradient(which, t)};
}

double invert_bracket(double bracket, const char* what) {
    if (!(bracket > 0.0) || !std::isfinite(bracket)) {
        throw ApproximationError(std::string(what) +
                                 ": entropy-loss bracket is not positive; sample too small for the Lindley "
                                 "approximation");
    }
    return 1.0 / bracket;
}

}  // namespace

LindleyTerms lindley_terms(const SufficientStats& strength, const SufficientStats& stress, const PriorSpec& prior) {
    const SampleTerms x = sample_terms(strength, 1, prior);
    const SampleTerms y = sample_terms(stress, 2, prior);
    return {x.theta_hat, y.theta_hat, x.sigma, y.sigma, x.l3, y.l3, x.rho, y.rho};
}

double bayes_theta(const SufficientStats& stats, int which, const PriorSpec& prior, LossKind loss,
                   LindleyOptions options) {
    const SampleTerms k = sample_terms(stats, which, prior);
    const double t = k.theta_hat;
    if (loss == LossKind::self) {
        // Under the Jeffrey prior rho * sigma + L * sigma^2 / 2 vanishes identically.
        if (prior.kind() == PriorSpec::Kind::jeffrey && !options.full_lindley) return t;
        return t + k.rho * k.sigma + 0.5 * k.l3 * k.sigma * k.sigma;
    }
    const double bracket =
        1.0 / t + (k.sigma / (t * t)) * (1.0 / t - k.rho) - k.l3 * k.sigma * k.sigma / (2.0 * t * t);
    return invert_bracket(bracket, "bayes_theta");
}

double bayes_r(const SufficientStats& strength, const SufficientStats& stress, const PriorSpec& prior,
               LossKind loss) {
    const LindleyTerms k = lindley_terms(strength, stress, prior);
    const RDerivatives d = r_derivatives(StressStrengthModel(k.theta1_hat, k.theta2_hat));

    // phi + 1/2 sum_i sigma_ii (phi_ii + 2 phi_i rho_i) + 1/2 sum_i L_iii phi_i sigma_ii^2
    auto expand = [&](double phi, double phi1, double phi2, double phi11, double phi22) {
        return phi + 0.5 * (k.sigma11 * (phi11 + 2.0 * phi1 * k.rho1) + k.sigma22 * (phi22 + 2.0 * phi2 * k.rho2)) +
               0.5 * (k.l111 * phi1 * k.sigma11 * k.sigma11 + k.l222 * phi2 * k.sigma22 * k.sigma22);
    };

    if (loss == LossKind::self) return expand(d.r, d.r1, d.r2, d.r11, d.r22);
    return invert_bracket(expand(d.inv_r, d.inv_r1, d.inv_r2, d.inv_r11, d.inv_r22), "bayes_r");
}

}  // namespace invlindley
