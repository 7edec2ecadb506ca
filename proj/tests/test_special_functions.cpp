#include <doctest.h>

#include <boost/math/special_functions/lambert_w.hpp>
#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "invlindley/errors.hpp"
#include "invlindley/special_functions.hpp"
#include "oracles.hpp"

using namespace invlindley;

namespace {
const double kInvE = 1.0 / std::numbers::e;
}

TEST_CASE("lambert_w fixed points") {
    CHECK(lambert_w(WBranch::negative, -kInvE) == -1.0);
    CHECK(lambert_w(WBranch::principal, -kInvE) == -1.0);
    CHECK(lambert_w(WBranch::principal, 0.0) == 0.0);
    CHECK(lambert_w(WBranch::principal, std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));

    const double bis = oracle::bisect([](double w) { return w * std::exp(w) + 0.1; }, -50, -1);
    CHECK(lambert_w(WBranch::negative, -0.1) == doctest::Approx(bis).epsilon(1e-12));
    CHECK(lambert_w(WBranch::negative, -0.1) == doctest::Approx(-3.577152063957297).epsilon(1e-12));
}

TEST_CASE("lambert_w domain errors") {
    CHECK_THROWS_AS(lambert_w(WBranch::principal, -0.4), DomainError);
    CHECK_THROWS_AS(lambert_w(WBranch::negative, -0.4), DomainError);
    CHECK_THROWS_AS(lambert_w(WBranch::negative, 0.0), DomainError);
    CHECK_THROWS_AS(lambert_w(WBranch::negative, 1.0), DomainError);
    CHECK_THROWS_AS(lambert_w(WBranch::principal, std::nan("")), DomainError);
}

TEST_CASE("lambert_w round trip, 1000 points per branch") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
        // log-spread over the negative-branch domain [-1/e, 0)
        const double z = -kInvE * std::pow(10.0, -12.0 * u(gen));
        const double w = lambert_w(WBranch::negative, z);
        if (!(std::abs(w * std::exp(w) - z) <= 1e-10) || w > -1) ++bad;
        const double zp = -kInvE + (std::exp(8.0 * u(gen)) - 1) * 1.0;  // [-1/e, ~3000)
        const double wp = lambert_w(WBranch::principal, zp);
        if (!(std::abs(wp * std::exp(wp) - zp) <= 1e-10 * std::max(1.0, std::abs(zp))) || wp < -1) ++bad;
    }
    CHECK(bad == 0);
}

TEST_CASE("lambert_w agrees with Boost on both branches") {
    for (double z = -kInvE + 1e-12; z < 0; z += 0.0123) {
        CHECK(lambert_w(WBranch::negative, z) == doctest::Approx(boost::math::lambert_wm1(z)).epsilon(1e-10));
        CHECK(lambert_w(WBranch::principal, z) == doctest::Approx(boost::math::lambert_w0(z)).epsilon(1e-10));
    }
    for (double z : {1e-300, 1e-10, 0.5, 3.0, 1e3, 1e100, 1e300}) {
        CHECK(lambert_w(WBranch::principal, z) == doctest::Approx(boost::math::lambert_w0(z)).epsilon(1e-12));
    }
}

TEST_CASE("branch separation and monotonicity") {
    double prev = 0;
    bool first = true;
    for (int i = 1; i < 1000; ++i) {
        const double z = -kInvE + kInvE * i / 1000.0;
        const double wm = lambert_w(WBranch::negative, z);
        const double wp = lambert_w(WBranch::principal, z);
        CHECK(wm <= -1.0);
        CHECK(wp >= -1.0);
        if (!first) CHECK(wm < prev);
        prev = wm;
        first = false;
    }
}

TEST_CASE("W_-1 from the log of the argument") {
    for (double l : {-1.5, -5.0, -50.0, -700.0}) {
        CHECK(lambert_wm1_from_log(l) == doctest::Approx(lambert_w(WBranch::negative, -std::exp(l))).epsilon(1e-13));
    }
    for (double l : {-800.0, -1e4, -1e8}) {
        const double w = lambert_wm1_from_log(l);
        CHECK(w + std::log(-w) == doctest::Approx(l).epsilon(1e-14));
        CHECK(w <= -1);
    }
}

TEST_CASE("log_gamma") {
    CHECK(log_gamma(1.0) == 0.0);
    CHECK(log_gamma(2.0) == 0.0);
    CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-2.5), DomainError);
    for (double a = 0.1; a <= 100.0; a += 0.1) {
        CHECK(std::abs(log_gamma(a + 1) - log_gamma(a) - std::log(a)) <= 1e-10);
    }
}

TEST_CASE("normal quantile") {
    boost::math::normal nd;
    for (double p : {1e-300, 1e-20, 1e-8, 0.001, 0.025, 0.3, 0.5, 0.7, 0.975, 0.999, 1 - 1e-12}) {
        CHECK(normal_quantile(p) == doctest::Approx(boost::math::quantile(nd, p)).epsilon(1e-12));
    }
    CHECK(z_two_sided(0.95) == doctest::Approx(1.959963984540054).epsilon(1e-13));
    CHECK_THROWS_AS(z_two_sided(1.0), DomainError);
    CHECK_THROWS_AS(z_two_sided(0.0), DomainError);
}
