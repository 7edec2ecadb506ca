#pragma once

namespace invlindley {

enum class WBranch { principal, negative };

/// Real Lambert W: returns w with w * exp(w) == z on the requested branch.
///
/// principal: z >= -1/e, w >= -1.  negative: -1/e <= z < 0, w <= -1.
/// Throws DomainError outside the branch domain.
double lambert_w(WBranch branch, double z);

/// W_{-1} evaluated from log(-z), for arguments too close to 0- to represent.
/// Solves w + log(-w) == log_neg_z with w <= -1. Requires log_neg_z <= -1.
double lambert_wm1_from_log(double log_neg_z);

/// Natural log of the gamma function for a > 0.
double log_gamma(double a);

/// Standard normal quantile, |error| below 1e-12 on (1e-300, 1 - 1e-16).
double normal_quantile(double p);

/// Upper alpha/2 point of the standard normal for a two-sided interval at `level`.
double z_two_sided(double level);

}  // namespace invlindley
