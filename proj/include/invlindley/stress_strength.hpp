#pragma once

#include <algorithm>
#include <cstddef>

#include "invlindley/mle.hpp"

namespace invlindley {

/// Strength X ~ ILD(theta1), stress Y ~ ILD(theta2); R = P(Y < X).
class StressStrengthModel {
public:
    StressStrengthModel(double theta1, double theta2);
    double theta1() const noexcept { return theta1_; }
    double theta2() const noexcept { return theta2_; }

private:
    double theta1_;
    double theta2_;
};

/// R = delta / lambda with the partial derivatives of both factors, the
/// derivatives of R, and those of 1/R (used by the entropy-loss estimator).
struct RDerivatives {
    double r;
    double r1, r2, r11, r22;
    double lambda, delta;
    double lambda1, lambda2, delta1, delta2;
    double lambda11, lambda22, delta11, delta22;
    double inv_r;
    double inv_r1, inv_r2, inv_r11, inv_r22;
};

struct RInterval {
    double estimate;
    double std_err;
    double low;   // raw, may fall outside [0, 1]
    double high;  // raw
    double level;

    double clipped_low() const noexcept { return std::clamp(low, 0.0, 1.0); }
    double clipped_high() const noexcept { return std::clamp(high, 0.0, 1.0); }
};

double reliability(const StressStrengthModel& m);

RDerivatives r_derivatives(const StressStrengthModel& m);

/// Explicit dR/dtheta1 and dR/dtheta2 (independent of the quotient-rule route).
double r1_closed_form(const StressStrengthModel& m);
double r2_closed_form(const StressStrengthModel& m);

/// Invariance plug-in: R at (mle(strength), mle(stress)).
double r_mle(const SufficientStats& strength, const SufficientStats& stress);

/// Delta-method interval R -+ z sqrt(R1^2 / (n I(theta1)) + R2^2 / (m I(theta2))).
RInterval r_ci(const StressStrengthModel& m, std::size_t n, std::size_t mcount, double level);

}  // namespace invlindley
