#pragma once

#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace invlindley {

enum class KsConvention {
    /// sup |F_n - F| over sorted data: max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n).
    two_sided,
    /// max_i |i/n - F(x_i)| over the data in the order given (no sort, no
    /// (i-1)/n side). Kept for comparison with older head-and-neck summaries.
    ordered_step,
};

struct FitReport {
    std::string model;
    double theta_hat;
    double loglik;
    double aic;
    double bic;
    double ks;
    std::size_t n;
};

struct InformationCriteria {
    double aic;
    double bic;
};

struct CurvePoint {
    double x;
    double empirical;
    double fitted;
};

double ks_statistic(const std::function<double(double)>& cdf, std::span<const double> data,
                    KsConvention convention = KsConvention::two_sided);

InformationCriteria aic_bic(double loglik, std::size_t k, std::size_t n);

/// Fits ILD and IRD by closed-form MLE; reports sorted by AIC ascending.
std::vector<FitReport> compare_models(std::span<const double> data,
                                      KsConvention convention = KsConvention::two_sided);

/// Right-continuous empirical cdf.
double ecdf(std::span<const double> sorted_data, double x);

/// (x, empirical, fitted ILD) triples at each grid point; grid must be sorted.
std::vector<CurvePoint> ecdf_curve(std::span<const double> data, std::span<const double> grid);

/// CSV with header `x,empirical,fitted`.
void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve);

}  // namespace invlindley
