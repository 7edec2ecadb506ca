#pragma once

#include <optional>

#include "invlindley/mle.hpp"

namespace invlindley {

struct GammaHyper {
    double a;  // shape
    double b;  // rate
};

/// Independent priors on (theta1, theta2): Jeffrey, or gamma(a_k, b_k) with
/// density proportional to theta^(a-1) e^(-b theta). All-zero hyperparameters
/// give the improper "Gamma 1" prior.
class PriorSpec {
public:
    enum class Kind { jeffrey, gamma };

    static PriorSpec jeffrey() { return PriorSpec(Kind::jeffrey, {}, {}); }
    static PriorSpec gamma(double a1, double b1, double a2, double b2);

    Kind kind() const noexcept { return kind_; }
    /// Hyperparameters for parameter k (1 or 2); empty for Jeffrey.
    std::optional<GammaHyper> hyper(int which) const;

    /// d/dtheta of the log prior for parameter k at theta.
    double log_prior_gradient(int which, double theta) const;

private:
    PriorSpec(Kind kind, GammaHyper h1, GammaHyper h2) : kind_(kind), h1_(h1), h2_(h2) {}
    Kind kind_;
    GammaHyper h1_;
    GammaHyper h2_;
};

enum class LossKind { self, elf };

struct LindleyTerms {
    double theta1_hat, theta2_hat;
    double sigma11, sigma22;  // inverse negative Hessian of the log-likelihood (diagonal)
    double l111, l222;        // third log-likelihood derivatives
    double rho1, rho2;        // log-prior gradients
};

struct LindleyOptions {
    /// Apply the general correction for Jeffrey/SELF instead of returning the MLE.
    bool full_lindley = false;
};

/// Gamma (shape, rate) with the given mean and variance.
GammaHyper elicit_gamma_hyper(double prior_mean, double prior_variance);

LindleyTerms lindley_terms(const SufficientStats& strength, const SufficientStats& stress, const PriorSpec& prior);

/// Bayes estimate of theta_k (which = 1 strength, 2 stress) from that sample's statistics.
double bayes_theta(const SufficientStats& stats, int which, const PriorSpec& prior, LossKind loss,
                   LindleyOptions options = {});

double bayes_r(const SufficientStats& strength, const SufficientStats& stress, const PriorSpec& prior,
               LossKind loss);

}  // namespace invlindley
