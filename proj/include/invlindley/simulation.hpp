#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "invlindley/bayes_lindley.hpp"

namespace invlindley {

struct NamedPrior {
    std::string id;     // machine name, e.g. "gamma2"
    std::string label;  // display name, e.g. "Gamma 2"
    PriorSpec prior;
};

struct ScenarioConfig {
    double theta1 = 1.0;
    double theta2 = 1.0;
    std::size_t n = 50;
    std::size_t m = 50;
    std::size_t replications = 5000;
    std::uint64_t seed = 12345;
    std::vector<NamedPrior> priors;
};

inline constexpr std::array<double, 2> kDefaultVariances = {0.5, 10.0};

/// Jeffrey, Gamma 1 (all-zero hyperparameters), then one gamma prior per
/// variance with mean equal to the true parameter ("Gamma 2", "Gamma 3", ...).
std::vector<NamedPrior> standard_priors(double theta1, double theta2, std::span<const double> prior_variances);

ScenarioConfig make_scenario(double theta1, double theta2, std::size_t n, std::size_t m, std::size_t replications,
                             std::uint64_t seed, std::span<const double> prior_variances = kDefaultVariances);

enum class Target { theta1 = 0, theta2 = 1, r = 2 };
inline constexpr std::array<Target, 3> kTargets = {Target::theta1, Target::theta2, Target::r};
std::string target_name(Target t);

struct EstimatorSummary {
    double av = 0.0;
    double mse = 0.0;
    std::size_t count = 0;     // replications contributing
    std::size_t failures = 0;  // replications where the estimator failed
};

struct SimulationReport {
    ScenarioConfig config;
    std::vector<std::string> estimator_ids;     // "mle", "<prior>_self", "<prior>_elf", ...
    std::vector<std::string> estimator_labels;  // "MLE", "Jeffrey SELF", ...
    std::array<std::vector<EstimatorSummary>, 3> cells;  // indexed by Target, then estimator

    const EstimatorSummary& at(Target t, std::string_view estimator_id) const;
};

void validate(const ScenarioConfig& cfg);

/// Estimates from one replication, laid out [target][estimator] with NaN marking
/// an estimator failure. Replication r draws from Rng(seed, r): X first, then Y.
void replicate(const ScenarioConfig& cfg, std::size_t r, std::span<double> out);

std::size_t estimator_count(const ScenarioConfig& cfg);

/// OpenMP-parallel over replications; `threads` = 0 uses the runtime default.
/// Bitwise identical to run_scenario_serial for every thread count.
SimulationReport run_scenario(const ScenarioConfig& cfg, int threads = 0);

/// Single-threaded streaming reference implementation.
SimulationReport run_scenario_serial(const ScenarioConfig& cfg);

std::vector<SimulationReport> run_suite(std::span<const ScenarioConfig> cfgs, int threads = 0);

/// `key = value` lines. theta1/theta2 and n/m take comma lists paired
/// elementwise; the suite is the cross product of parameter pairs and size pairs.
std::vector<ScenarioConfig> parse_config(std::istream& in);

/// Two-line (AV over MSE) cells, one table per target and parameter pair.
void render_text(std::ostream& out, std::span<const SimulationReport> reports);
void render_csv(std::ostream& out, std::span<const SimulationReport> reports);

struct CsvRecord {
    double theta1, theta2;
    std::size_t n, m, replications;
    std::uint64_t seed;
    std::string target;
    std::string estimator;
    double av, mse;
    std::size_t count, failures;
};

std::vector<CsvRecord> parse_csv(std::istream& in);

}  // namespace invlindley
