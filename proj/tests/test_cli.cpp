#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "invlindley/cli.hpp"
#include "invlindley/distribution.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = invlindley::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "invlindley_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

bool contains(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

}  // namespace

TEST_CASE("fit") {
    auto r = run({"fit", "--builtin", "headneck_rt", "--variant", "corrected"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "55.4540"));
    CHECK(contains(r.out, "741.3652"));
    r = run({"fit", "--builtin", "headneck_ctrt"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "77.6755"));
    r = run({"fit", "--data", INVLINDLEY_SOURCE_DIR "/data/headneck_rt.txt", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["models"][0]["model"] == "ILD");
    CHECK(j["models"][0]["theta_hat"].get<double>() == doctest::Approx(55.453954847).epsilon(1e-10));
    r = run({"fit", "--builtin", "headneck_rt", "--variant", "as_printed", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, ",58\n"));
}

TEST_CASE("input errors exit with 2 and a one-line diagnostic") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"fit", "--data", "missing.txt"},
             {"fit"},
             {"fit", "--builtin", "nope"},
             {"fit", "--builtin", "headneck_rt", "--format", "xml"},
             {"fit", "--builtin", "headneck_rt", "--ks", "one-sided"},
             {"frobnicate"},
             {},
             {"quantile", "--theta", "1", "--p", "1.5"},
             {"quantile", "--theta", "-1", "--p", "0.5"},
             {"sample", "--theta", "1", "--n", "0", "--seed", "1"},
             {"reliability", "--strength", "headneck_rt", "--stress", "nothing.txt"},
             {"reliability", "--strength", "headneck_rt", "--stress", "headneck_ctrt", "--level", "2"},
             {"bayes", "--strength", "headneck_ctrt", "--stress", "headneck_rt", "--prior", "gamma", "--hyper",
              "-1,0,0,0"},
             {"bayes", "--strength", "headneck_ctrt", "--stress", "headneck_rt", "--prior", "gamma"},
             {"bayes", "--strength", "headneck_ctrt", "--stress", "headneck_rt", "--prior", "gamma", "--hyper", "1,2"},
             {"bayes", "--strength", "headneck_ctrt", "--stress", "headneck_rt", "--loss", "linex"},
             {"simulate", "--config", "missing.cfg"},
         }) {
        const auto r = run(args);
        CHECK(r.code == 2);
        CHECK(!r.err.empty());
        CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    }
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("reliability") {
    auto r = run({"reliability", "--strength", "headneck_ctrt", "--stress", "headneck_rt"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "0.5847"));
    CHECK(contains(r.out, "level 0.95"));
    r = run({"reliability", "--strength", "headneck_ctrt", "--stress", "headneck_ctrt", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(std::abs(nlohmann::json::parse(r.out)["R"]["estimate"].get<double>() - 0.5) <= 1e-14);
}

TEST_CASE("bayes") {
    auto r = run({"bayes", "--strength", "headneck_ctrt", "--stress", "headneck_rt", "--prior", "gamma", "--hyper",
                  "0,0,0,0", "--loss", "self"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "R       0.5834"));
    CHECK(contains(r.out, "77.6963"));
    r = run({"bayes", "--strength", "headneck_ctrt", "--stress", "headneck_rt", "--loss", "elf", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "prior,loss,theta1,theta2,R\njeffrey,elf,75.991"));
    r = run({"bayes", "--strength", "headneck_ctrt", "--stress", "headneck_rt", "--full-lindley"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "77.6755"));

    const auto one = scratch("one.txt");
    std::ofstream(one) << "1000\n";
    r = run({"bayes", "--strength", one.string(), "--stress", one.string(), "--prior", "gamma", "--hyper",
             "1e6,0,1e6,0", "--loss", "elf"});
    CHECK(r.code == 3);
    CHECK(contains(r.err, "bracket"));
}

TEST_CASE("quantile and sample") {
    auto r = run({"quantile", "--theta", "1", "--p", "0.5"});
    REQUIRE(r.code == 0);
    const double q = std::stod(r.out);
    CHECK(std::abs(invlindley::cdf(invlindley::IldParams(1.0), q) - 0.5) <= 1e-9);

    const auto a = run({"sample", "--theta", "1", "--n", "5", "--seed", "7"});
    const auto b = run({"sample", "--theta", "1", "--n", "5", "--seed", "7"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 5);
    const auto path = scratch("draws.txt");
    CHECK(run({"sample", "--theta", "1", "--n", "5", "--seed", "7", "--out", path.string()}).code == 0);
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == a.out);
}

TEST_CASE("gof with curve export") {
    const auto path = scratch("curve.csv");
    const auto r = run({"gof", "--builtin", "headneck_ctrt", "--ks", "ordered-step", "--curve", path.string(),
                        "--points", "25"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "K-S = 0.0799"));
    std::ifstream f(path);
    std::string line;
    int lines = 0;
    std::getline(f, line);
    CHECK(line == "x,empirical,fitted");
    while (std::getline(f, line)) ++lines;
    CHECK(lines == 25);
}

TEST_CASE("simulate") {
    const auto cfg = scratch("grid.cfg");
    std::ofstream(cfg) << "theta1 = 1, 2\ntheta2 = 2, 1\nn = 15, 50\nm = 20, 50\nseed = 5\n";
    const auto out = scratch("sim.csv");
    auto r = run({"simulate", "--config", cfg.string(), "--reps", "200", "--out", out.string()});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "AV / MSE of R estimators"));
    CHECK(fs::file_size(out) > 0);

    setenv("INVLINDLEY_THREADS", "3", 1);
    const auto csv3 = run({"simulate", "--config", cfg.string(), "--reps", "200", "--format", "csv"});
    setenv("INVLINDLEY_THREADS", "1", 1);
    const auto csv1 = run({"simulate", "--config", cfg.string(), "--reps", "200", "--format", "csv"});
    CHECK(csv3.code == 0);
    CHECK(csv3.out == csv1.out);
    std::ifstream f(out);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == csv1.out);

    setenv("INVLINDLEY_THREADS", "many", 1);
    CHECK(run({"simulate", "--config", cfg.string(), "--reps", "10"}).code == 2);
    unsetenv("INVLINDLEY_THREADS");

    r = run({"simulate", "--config", INVLINDLEY_SOURCE_DIR "/configs/full_grid.cfg", "--reps", "200", "--format",
             "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.size() == 15);
    CHECK(j[0]["replications"] == 200);
    CHECK(j[0]["estimates"]["R"].contains("gamma3_elf"));
}
