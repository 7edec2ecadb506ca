#include "invlindley/stress_strength.hpp"

#include <cmath>

#include "invlindley/errors.hpp"
#include "invlindley/special_functions.hpp"

namespace invlindley {

StressStrengthModel::StressStrengthModel(double theta1, double theta2) : theta1_(theta1), theta2_(theta2) {
    if (!(theta1 > 0.0) || !(theta2 > 0.0) || !std::isfinite(theta1) || !std::isfinite(theta2)) {
        throw DomainError("stress-strength parameters must be finite and > 0");
    }
}

double reliability(const StressStrengthModel& m) {
    const double a = m.theta1();
    const double b = m.theta2();
    const double s = a + b;
    const double num = a * a * (s * s * (1.0 + b) + s * (1.0 + 2.0 * b) + 2.0 * b);
    const double den = (1.0 + a) * (1.0 + b) * s * s * s;
    return num / den;
}

RDerivatives r_derivatives(const StressStrengthModel& m) {
    const double a = m.theta1();
    const double b = m.theta2();
    const double s = a + b;
    const double s2 = s * s;
    const double s3 = s2 * s;

    RDerivatives d{};
    const double bracket = s2 * (1.0 + b) + s * (1.0 + 2.0 * b) + 2.0 * b;
    d.lambda = (1.0 + a) * (1.0 + b) * s3;
    d.delta = a * a * bracket;

    d.lambda1 = (1.0 + b) * s3 + 3.0 * (1.0 + a) * (1.0 + b) * s2;
    d.lambda2 = (1.0 + a) * s3 + 3.0 * (1.0 + a) * (1.0 + b) * s2;
    d.delta1 = 2.0 * a * bracket + a * a * (2.0 * s * (1.0 + b) + (1.0 + 2.0 * b));
    d.delta2 = a * a * (s2 + 2.0 * s * (1.0 + b) + 2.0 * s + (1.0 + 2.0 * b) + 2.0);

    d.lambda11 = 6.0 * (1.0 + b) * s * (2.0 * a + b + 1.0);
    d.lambda22 = 6.0 * (1.0 + a) * s * (2.0 * b + a + 1.0);
    d.delta11 = 2.0 * s * (1.0 + b) * (5.0 * a + b) + 2.0 * (3.0 * a + b) * (1.0 + 2.0 * b) +
                2.0 * b * (a * a + 2.0) + 2.0 * a * a;
    d.delta22 = a * a * (2.0 * (1.0 + b) + 4.0 * s + 4.0);

    const double L = d.lambda;
    const double D = d.delta;
    d.r = D / L;
    d.r1 = (L * d.delta1 - D * d.lambda1) / (L * L);
    d.r2 = (L * d.delta2 - D * d.lambda2) / (L * L);
    d.r11 = (L * L * (L * d.delta11 - D * d.lambda11) - 2.0 * L * d.lambda1 * (L * d.delta1 - D * d.lambda1)) /
            (L * L * L * L);
    d.r22 = (L * L * (L * d.delta22 - D * d.lambda22) - 2.0 * L * d.lambda2 * (L * d.delta2 - D * d.lambda2)) /
            (L * L * L * L);

    d.inv_r = L / D;
    d.inv_r1 = (D * d.lambda1 - L * d.delta1) / (D * D);
    d.inv_r2 = (D * d.lambda2 - L * d.delta2) / (D * D);
    d.inv_r11 = (D * D * (D * d.lambda11 - L * d.delta11) - 2.0 * D * d.delta1 * (D * d.lambda1 - L * d.delta1)) /
                (D * D * D * D);
    d.inv_r22 = (D * D * (D * d.lambda22 - L * d.delta22) - 2.0 * D * d.delta2 * (D * d.lambda2 - L * d.delta2)) /
                (D * D * D * D);
    return d;
}

double r1_closed_form(const StressStrengthModel& m) {
    const double a = m.theta1();
    const double b = m.theta2();
    const double s = a + b;
    const double num = a * b * b *
                       (a * a * a + 2.0 * a * a * (b + 3.0) + 2.0 * (b * b + 3.0 * b + 3.0) +
                        a * (b + 2.0) * (b + 6.0));
    const double den = (1.0 + a) * (1.0 + a) * (1.0 + b) * s * s * s * s;
    return num / den;
}

double r2_closed_form(const StressStrengthModel& m) {
    const double a = m.theta1();
    const double b = m.theta2();
    const double s = a + b;
    const double num = -a * a * b *
                       (6.0 + a * a * (b + 2.0) + b * (b * b + 6.0 * b + 12.0) + 2.0 * a * (b + 1.0) * (b + 3.0));
    const double den = (1.0 + a) * (1.0 + b) * (1.0 + b) * s * s * s * s;
    return num / den;
}

double r_mle(const SufficientStats& strength, const SufficientStats& stress) {
    return reliability(StressStrengthModel(mle_theta(strength), mle_theta(stress)));
}

RInterval r_ci(const StressStrengthModel& m, std::size_t n, std::size_t mcount, double level) {
    if (n == 0 || mcount == 0) throw DomainError("r_ci: sample sizes must be >= 1");
    const double z = z_two_sided(level);
    const double r = reliability(m);
    const double g1 = r1_closed_form(m);
    const double g2 = r2_closed_form(m);
    const double var = g1 * g1 / (static_cast<double>(n) * fisher_info(IldParams(m.theta1()))) +
                       g2 * g2 / (static_cast<double>(mcount) * fisher_info(IldParams(m.theta2())));
    const double se = std::sqrt(var);
    return {r, se, r - z * se, r + z * se, level};
}

}  // namespace invlindley
