#include "invlindley/gof.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

#include "invlindley/distribution.hpp"
#include "invlindley/errors.hpp"
#include "invlindley/mle.hpp"

namespace invlindley {

double ks_statistic(const std::function<double(double)>& cdf, std::span<const double> data,
                    KsConvention convention) {
    if (data.empty()) throw DomainError("ks_statistic: empty data");
    const double n = static_cast<double>(data.size());
    double d = 0.0;
    if (convention == KsConvention::ordered_step) {
        for (std::size_t i = 0; i < data.size(); ++i) {
            d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - cdf(data[i])));
        }
        return d;
    }
    std::vector<double> sorted(data.begin(), data.end());
    std::stable_sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        const double above = (static_cast<double>(i) + 1.0) / n - f;
        const double below = f - static_cast<double>(i) / n;
        d = std::max({d, above, below});
    }
    return d;
}

InformationCriteria aic_bic(double loglik, std::size_t k, std::size_t n) {
    if (n == 0 || k == 0) throw DomainError("aic_bic: n and k must be >= 1");
    const double kk = static_cast<double>(k);
    return {-2.0 * loglik + 2.0 * kk, -2.0 * loglik + kk * std::log(static_cast<double>(n))};
}

std::vector<FitReport> compare_models(std::span<const double> data, KsConvention convention) {
    const SufficientStats stats = sufficient_stats(data);
    const std::size_t n = stats.n();

    const IldParams ild(mle_theta(stats));
    const double ild_ll = loglik(ild, data);
    const auto ild_ic = aic_bic(ild_ll, 1, n);
    const double ild_ks = ks_statistic([&](double x) { return cdf(ild, x); }, data, convention);

    const IrdParams ird = ird_mle(data);
    const double ird_ll = ird_loglik(ird, data);
    const auto ird_ic = aic_bic(ird_ll, 1, n);
    const double ird_ks = ks_statistic([&](double x) { return ird_cdf(ird, x); }, data, convention);

    std::vector<FitReport> out{
        {"ILD", ild.theta(), ild_ll, ild_ic.aic, ild_ic.bic, ild_ks, n},
        {"IRD", ird.theta(), ird_ll, ird_ic.aic, ird_ic.bic, ird_ks, n},
    };
    std::stable_sort(out.begin(), out.end(), [](const FitReport& a, const FitReport& b) { return a.aic < b.aic; });
    return out;
}

double ecdf(std::span<const double> sorted_data, double x) {
    const auto it = std::upper_bound(sorted_data.begin(), sorted_data.end(), x);
    return static_cast<double>(it - sorted_data.begin()) / static_cast<double>(sorted_data.size());
}

std::vector<CurvePoint> ecdf_curve(std::span<const double> data, std::span<const double> grid) {
    if (!std::is_sorted(grid.begin(), grid.end())) throw DomainError("ecdf_curve: grid must be sorted");
    const IldParams fit(mle_theta(sufficient_stats(data)));
    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<CurvePoint> out;
    out.reserve(grid.size());
    for (double x : grid) out.push_back({x, ecdf(sorted, x), cdf(fit, x)});
    return out;
}

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve) {
    out << "x,empirical,fitted\n" << std::setprecision(17);
    for (const auto& p : curve) out << p.x << ',' << p.empirical << ',' << p.fitted << '\n';
}

}  // namespace invlindley
