#include <doctest.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "invlindley/errors.hpp"
#include "invlindley/simulation.hpp"
#include "invlindley/stress_strength.hpp"

using namespace invlindley;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool identical(const SimulationReport& a, const SimulationReport& b) {
    if (a.estimator_ids != b.estimator_ids) return false;
    for (std::size_t t = 0; t < 3; ++t) {
        if (a.cells[t].size() != b.cells[t].size()) return false;
        for (std::size_t k = 0; k < a.cells[t].size(); ++k) {
            const auto &x = a.cells[t][k], &y = b.cells[t][k];
            if (!same_bits(x.av, y.av) || !same_bits(x.mse, y.mse) || x.count != y.count || x.failures != y.failures)
                return false;
        }
    }
    return true;
}

const std::vector<std::pair<std::size_t, std::size_t>> kSizes = {{15, 20}, {20, 15}, {30, 20}, {20, 30}, {50, 50}};
const std::vector<std::pair<double, double>> kParams = {{1, 2}, {1, 1}, {2, 1}};

}  // namespace

TEST_CASE("scenario validation") {
    CHECK_THROWS_AS(make_scenario(0, 1, 10, 10, 10, 1), InputError);
    CHECK_THROWS_AS(make_scenario(1, 1, 1, 10, 10, 1), InputError);
    CHECK_THROWS_AS(make_scenario(1, 1, 10, 10, 0, 1), InputError);
    auto cfg = make_scenario(1, 1, 10, 10, 10, 1);
    cfg.replications = 0;
    CHECK_THROWS_AS(validate(cfg), InputError);
    CHECK_THROWS_AS(run_scenario(cfg), InputError);
    CHECK_THROWS_AS(run_scenario_serial(cfg), InputError);
    const std::vector<ScenarioConfig> none;
    CHECK_THROWS_AS(run_suite(none), InputError);
}

TEST_CASE("standard priors and estimator layout") {
    const auto cfg = make_scenario(1, 2, 20, 30, 10, 5);
    REQUIRE(cfg.priors.size() == 4);
    CHECK(cfg.priors[0].prior.kind() == PriorSpec::Kind::jeffrey);
    CHECK(cfg.priors[1].prior.hyper(1)->a == 0.0);
    CHECK(cfg.priors[2].prior.hyper(2)->a == doctest::Approx(8.0));  // mean 2, variance 0.5
    CHECK(cfg.priors[2].prior.hyper(2)->b == doctest::Approx(4.0));
    CHECK(cfg.priors[3].prior.hyper(1)->a == doctest::Approx(0.1));
    CHECK(estimator_count(cfg) == 9);
    const auto rep = run_scenario(cfg);
    const std::vector<std::string> ids = {"mle",         "jeffrey_self", "jeffrey_elf", "gamma1_self", "gamma1_elf",
                                          "gamma2_self", "gamma2_elf",   "gamma3_self", "gamma3_elf"};
    CHECK(rep.estimator_ids == ids);
    CHECK(rep.estimator_labels[0] == "MLE");
    CHECK(rep.estimator_labels[5] == "Gamma 2 SELF");
    CHECK_THROWS(rep.at(Target::r, "nope"));
}

TEST_CASE("one replication reproduces its own estimates") {
    const auto cfg = make_scenario(1, 2, 15, 20, 1, 77);
    std::vector<double> est(3 * estimator_count(cfg));
    replicate(cfg, 0, est);
    const auto rep = run_scenario_serial(cfg);
    const double truth[3] = {1, 2, reliability(StressStrengthModel(1, 2))};
    for (Target t : kTargets) {
        for (std::size_t k = 0; k < rep.estimator_ids.size(); ++k) {
            const double v = est[static_cast<std::size_t>(t) * estimator_count(cfg) + k];
            const auto& c = rep.cells[static_cast<std::size_t>(t)][k];
            CHECK(c.av == v);
            CHECK(c.mse == doctest::Approx((v - truth[int(t)]) * (v - truth[int(t)])).epsilon(1e-15));
            CHECK(c.count == 1);
        }
    }
}

TEST_CASE("parallel runs are bitwise identical to the serial reference") {
    for (auto [a, b] : kParams) {
        const auto cfg = make_scenario(a, b, 15, 20, 3000, 2026);
        const auto ref = run_scenario_serial(cfg);
        for (int th : {1, 2, 3, 8}) CHECK(identical(ref, run_scenario(cfg, th)));
    }
    const std::vector<ScenarioConfig> two = {make_scenario(1, 1, 20, 20, 500, 3), make_scenario(1, 1, 20, 20, 500, 3)};
    const auto reps = run_suite(two, 4);
    CHECK(identical(reps[0], reps[1]));
}

TEST_CASE("full grid: sample size, prior and consistency patterns") {
    std::vector<ScenarioConfig> cfgs;
    for (auto [a, b] : kParams)
        for (auto [n, m] : kSizes) cfgs.push_back(make_scenario(a, b, n, m, 5000, 12345));
    const auto reps = run_suite(cfgs);
    REQUIRE(reps.size() == 15);
    for (std::size_t i = 0; i < reps.size(); ++i) {
        CHECK(reps[i].config.n == cfgs[i].n);
        CHECK(reps[i].config.theta1 == cfgs[i].theta1);
    }

    for (std::size_t p = 0; p < kParams.size(); ++p) {
        const auto& small = reps[p * 5 + 0];
        const auto& large = reps[p * 5 + 4];
        for (Target t : kTargets) {
            for (const auto& id : small.estimator_ids) {
                CHECK(large.at(t, id).mse < small.at(t, id).mse);
                CHECK(small.at(t, id).mse >= 0);
            }
        }
        CHECK(std::abs(large.at(Target::r, "gamma1_self").av - large.at(Target::r, "jeffrey_self").av) <= 0.002);
    }
    // informative prior beats the non-informative one for R in the (1, 2) table
    for (std::size_t s = 0; s < 5; ++s) {
        const auto& r = reps[s];
        CHECK(r.at(Target::r, "gamma2_self").mse <= r.at(Target::r, "jeffrey_self").mse + 1e-12);
    }
    // MLE of theta = 1 at n = 50 averages near 1.0108
    CHECK(std::abs(reps[9].at(Target::theta1, "mle").av - 1.0108) <= 0.02);
    CHECK(reps[9].config.theta1 == 1.0);
    CHECK(std::abs(reps[9].at(Target::theta2, "mle").av - 1.0108) <= 0.02);
}

TEST_CASE("config parsing") {
    std::istringstream in(
        "# grid\n theta1 = 1, 1, 2\ntheta2=2,1,1\nn = 15, 50\nm = 20, 50\nreplications = 40\nseed = 9\n"
        "prior_variances = 0.5, 10\n");
    const auto cfgs = parse_config(in);
    REQUIRE(cfgs.size() == 6);
    CHECK(cfgs[0].theta1 == 1);
    CHECK(cfgs[0].theta2 == 2);
    CHECK(cfgs[0].n == 15);
    CHECK(cfgs[0].m == 20);
    CHECK(cfgs[1].n == 50);
    CHECK(cfgs[5].theta1 == 2);
    CHECK(cfgs[5].replications == 40);
    CHECK(cfgs[5].seed == 9);
    CHECK(cfgs[0].priors.size() == 4);

    std::istringstream none("theta1=1\ntheta2=1\nn=10\nm=10\nprior_variances = none\n");
    CHECK(parse_config(none)[0].priors.size() == 2);

    auto bad = [](const char* text) {
        std::istringstream s(text);
        return parse_config(s);
    };
    CHECK_THROWS_AS(bad("theta1=1,2\ntheta2=1\nn=10\nm=10\n"), InputError);
    CHECK_THROWS_AS(bad("theta1=1\ntheta2=1\nn=10,20\nm=10\n"), InputError);
    CHECK_THROWS_AS(bad("theta1=1\ntheta2=1\nn=10\nm=10\ncolour=red\n"), InputError);
    CHECK_THROWS_AS(bad("theta1=1\ntheta2=1\nn=10\nm=ten\n"), InputError);
    CHECK_THROWS_AS(bad("theta1=1\ntheta2=1\nn=10\n"), InputError);
    CHECK_THROWS_AS(bad("theta1 1\n"), InputError);
    CHECK_THROWS_AS(bad("theta1=-1\ntheta2=1\nn=10\nm=10\n"), InputError);
}

TEST_CASE("rendering and CSV round trip") {
    const std::vector<ScenarioConfig> cfgs = {make_scenario(1, 2, 15, 20, 200, 1), make_scenario(2, 1, 50, 50, 200, 2)};
    const auto reps = run_suite(cfgs);

    std::ostringstream txt;
    render_text(txt, reps);
    CHECK(txt.str().find("Gamma 3 ELF") != std::string::npos);
    CHECK(txt.str().find("(15,20)") != std::string::npos);

    std::ostringstream csv;
    render_csv(csv, reps);
    std::istringstream back(csv.str());
    const auto rows = parse_csv(back);
    REQUIRE(rows.size() == 2 * 3 * 9);
    std::size_t i = 0;
    for (const auto& r : reps) {
        for (Target t : kTargets) {
            for (std::size_t k = 0; k < r.estimator_ids.size(); ++k, ++i) {
                const auto& c = r.cells[static_cast<std::size_t>(t)][k];
                CHECK(rows[i].theta1 == r.config.theta1);
                CHECK(rows[i].n == r.config.n);
                CHECK(rows[i].seed == r.config.seed);
                CHECK(rows[i].target == target_name(t));
                CHECK(rows[i].estimator == r.estimator_ids[k]);
                CHECK(same_bits(rows[i].av, c.av));
                CHECK(same_bits(rows[i].mse, c.mse));
                CHECK(rows[i].count == c.count);
                CHECK(rows[i].failures == c.failures);
            }
        }
    }
}
