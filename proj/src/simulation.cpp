#include "invlindley/simulation.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "invlindley/distribution.hpp"
#include "invlindley/errors.hpp"
#include "invlindley/numeric.hpp"
#include "invlindley/stress_strength.hpp"

namespace invlindley {

std::vector<NamedPrior> standard_priors(double theta1, double theta2, std::span<const double> prior_variances) {
    std::vector<NamedPrior> priors;
    priors.push_back({"jeffrey", "Jeffrey", PriorSpec::jeffrey()});
    priors.push_back({"gamma1", "Gamma 1", PriorSpec::gamma(0.0, 0.0, 0.0, 0.0)});
    int k = 2;
    for (double v : prior_variances) {
        const GammaHyper h1 = elicit_gamma_hyper(theta1, v);
        const GammaHyper h2 = elicit_gamma_hyper(theta2, v);
        priors.push_back({"gamma" + std::to_string(k), "Gamma " + std::to_string(k),
                          PriorSpec::gamma(h1.a, h1.b, h2.a, h2.b)});
        ++k;
    }
    return priors;
}

ScenarioConfig make_scenario(double theta1, double theta2, std::size_t n, std::size_t m, std::size_t replications,
                             std::uint64_t seed, std::span<const double> prior_variances) {
    ScenarioConfig cfg{theta1, theta2, n, m, replications, seed, {}};
    validate(cfg);
    cfg.priors = standard_priors(theta1, theta2, prior_variances);
    return cfg;
}

std::string target_name(Target t) {
    switch (t) {
        case Target::theta1: return "theta1";
        case Target::theta2: return "theta2";
        case Target::r: return "R";
    }
    return "?";
}

const EstimatorSummary& SimulationReport::at(Target t, std::string_view estimator_id) const {
    const auto it = std::find(estimator_ids.begin(), estimator_ids.end(), estimator_id);
    if (it == estimator_ids.end()) throw InputError("unknown estimator '" + std::string(estimator_id) + "'");
    return cells[static_cast<std::size_t>(t)][static_cast<std::size_t>(it - estimator_ids.begin())];
}

void validate(const ScenarioConfig& cfg) {
    if (!(cfg.theta1 > 0.0) || !(cfg.theta2 > 0.0)) throw InputError("scenario: theta1 and theta2 must be > 0");
    if (cfg.n < 2 || cfg.m < 2) throw InputError("scenario: n and m must be >= 2");
    if (cfg.replications < 1) throw InputError("scenario: replications must be >= 1");
}

std::size_t estimator_count(const ScenarioConfig& cfg) { return 1 + 2 * cfg.priors.size(); }

void replicate(const ScenarioConfig& cfg, std::size_t r, std::span<double> out) {
    const std::size_t e = estimator_count(cfg);
    if (out.size() != 3 * e) throw DomainError("replicate: output span has the wrong size");

    thread_local std::vector<double> xs;
    thread_local std::vector<double> ys;
    xs.resize(cfg.n);
    ys.resize(cfg.m);
    Rng rng(cfg.seed, r);
    sample_into(IldParams(cfg.theta1), rng, xs);
    sample_into(IldParams(cfg.theta2), rng, ys);

    const SufficientStats sx = sufficient_stats(xs);
    const SufficientStats sy = sufficient_stats(ys);

    auto put = [&](Target t, std::size_t est, double v) { out[static_cast<std::size_t>(t) * e + est] = v; };
    auto guarded = [](auto&& f) {
        try {
            return static_cast<double>(f());
        } catch (const ApproximationError&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };

    put(Target::theta1, 0, mle_theta(sx));
    put(Target::theta2, 0, mle_theta(sy));
    put(Target::r, 0, r_mle(sx, sy));
    std::size_t est = 1;
    for (const auto& np : cfg.priors) {
        for (LossKind loss : {LossKind::self, LossKind::elf}) {
            put(Target::theta1, est, guarded([&] { return bayes_theta(sx, 1, np.prior, loss); }));
            put(Target::theta2, est, guarded([&] { return bayes_theta(sy, 2, np.prior, loss); }));
            put(Target::r, est, guarded([&] { return bayes_r(sx, sy, np.prior, loss); }));
            ++est;
        }
    }
}

namespace {

// Order-dependent accumulation; both run paths feed it replications in index order.
class Aggregator {
public:
    explicit Aggregator(const ScenarioConfig& cfg)
        : e_(estimator_count(cfg)),
          truth_{cfg.theta1, cfg.theta2, reliability(StressStrengthModel(cfg.theta1, cfg.theta2))},
          sum_(3 * e_),
          sq_(3 * e_),
          count_(3 * e_, 0),
          fail_(3 * e_, 0) {}

    void add(std::span<const double> row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            const double v = row[i];
            if (std::isnan(v)) {
                ++fail_[i];
                continue;
            }
            const double err = v - truth_[i / e_];
            sum_[i] += v;
            sq_[i] += err * err;
            ++count_[i];
        }
    }

    SimulationReport finish(const ScenarioConfig& cfg) const {
        SimulationReport rep;
        rep.config = cfg;
        rep.estimator_ids.push_back("mle");
        rep.estimator_labels.push_back("MLE");
        for (const auto& np : cfg.priors) {
            rep.estimator_ids.push_back(np.id + "_self");
            rep.estimator_labels.push_back(np.label + " SELF");
            rep.estimator_ids.push_back(np.id + "_elf");
            rep.estimator_labels.push_back(np.label + " ELF");
        }
        for (std::size_t t = 0; t < 3; ++t) {
            auto& cells = rep.cells[t];
            cells.resize(e_);
            for (std::size_t k = 0; k < e_; ++k) {
                const std::size_t i = t * e_ + k;
                EstimatorSummary s;
                s.count = count_[i];
                s.failures = fail_[i];
                if (s.count > 0) {
                    s.av = sum_[i].value() / static_cast<double>(s.count);
                    s.mse = sq_[i].value() / static_cast<double>(s.count);
                } else {
                    s.av = s.mse = std::numeric_limits<double>::quiet_NaN();
                }
                cells[k] = s;
            }
        }
        return rep;
    }

private:
    std::size_t e_;
    std::array<double, 3> truth_;
    std::vector<CompensatedSum> sum_;
    std::vector<CompensatedSum> sq_;
    std::vector<std::size_t> count_;
    std::vector<std::size_t> fail_;
};

}  // namespace

SimulationReport run_scenario_serial(const ScenarioConfig& cfg) {
    validate(cfg);
    const std::size_t width = 3 * estimator_count(cfg);
    Aggregator agg(cfg);
    std::vector<double> row(width);
    for (std::size_t r = 0; r < cfg.replications; ++r) {
        replicate(cfg, r, row);
        agg.add(row);
    }
    return agg.finish(cfg);
}

SimulationReport run_scenario(const ScenarioConfig& cfg, int threads) {
    validate(cfg);
    const std::size_t width = 3 * estimator_count(cfg);
    const auto reps = static_cast<std::ptrdiff_t>(cfg.replications);
    std::vector<double> table(cfg.replications * width);
    const int nt = threads > 0 ? threads : omp_get_max_threads();

    std::exception_ptr error;
#pragma omp parallel for schedule(static) num_threads(nt)
    for (std::ptrdiff_t r = 0; r < reps; ++r) {
        try {
            replicate(cfg, static_cast<std::size_t>(r),
                      std::span<double>(table.data() + static_cast<std::size_t>(r) * width, width));
        } catch (...) {
#pragma omp critical(invlindley_sim_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    Aggregator agg(cfg);
    for (std::size_t r = 0; r < cfg.replications; ++r) {
        agg.add(std::span<const double>(table.data() + r * width, width));
    }
    return agg.finish(cfg);
}

std::vector<SimulationReport> run_suite(std::span<const ScenarioConfig> cfgs, int threads) {
    if (cfgs.empty()) throw InputError("run_suite: no scenarios");
    std::vector<SimulationReport> out;
    out.reserve(cfgs.size());
    for (const auto& cfg : cfgs) out.push_back(run_scenario(cfg, threads));
    return out;
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::stringstream ss{std::string(s)};
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto t = trim(item);
        if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
}

template <typename T>
T parse_number(const std::string& token, std::size_t lineno) {
    T v{};
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw InputError("config line " + std::to_string(lineno) + ": cannot parse '" + token + "'");
    }
    return v;
}

template <typename T>
std::vector<T> parse_numbers(const std::string& value, std::size_t lineno) {
    std::vector<T> out;
    for (const auto& tok : split_list(value)) out.push_back(parse_number<T>(tok, lineno));
    return out;
}

}  // namespace

std::vector<ScenarioConfig> parse_config(std::istream& in) {
    std::vector<double> theta1, theta2;
    std::vector<std::size_t> ns, ms;
    std::size_t reps = 5000;
    std::uint64_t seed = 12345;
    std::vector<double> variances(kDefaultVariances.begin(), kDefaultVariances.end());

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InputError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key == "theta1") {
            theta1 = parse_numbers<double>(value, lineno);
        } else if (key == "theta2") {
            theta2 = parse_numbers<double>(value, lineno);
        } else if (key == "n") {
            ns = parse_numbers<std::size_t>(value, lineno);
        } else if (key == "m") {
            ms = parse_numbers<std::size_t>(value, lineno);
        } else if (key == "replications") {
            reps = parse_number<std::size_t>(value, lineno);
        } else if (key == "seed") {
            seed = parse_number<std::uint64_t>(value, lineno);
        } else if (key == "prior_variances") {
            variances = (value == "none") ? std::vector<double>{} : parse_numbers<double>(value, lineno);
        } else {
            throw InputError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    if (theta1.empty() || theta2.empty() || ns.empty() || ms.empty()) {
        throw InputError("config: theta1, theta2, n and m are required");
    }
    if (theta1.size() != theta2.size()) throw InputError("config: theta1 and theta2 lists differ in length");
    if (ns.size() != ms.size()) throw InputError("config: n and m lists differ in length");
    for (double v : variances) {
        if (!(v > 0.0)) throw InputError("config: prior variances must be > 0");
    }

    std::vector<ScenarioConfig> out;
    for (std::size_t p = 0; p < theta1.size(); ++p) {
        for (std::size_t s = 0; s < ns.size(); ++s) {
            if (!(theta1[p] > 0.0) || !(theta2[p] > 0.0)) throw InputError("config: parameters must be > 0");
            out.push_back(make_scenario(theta1[p], theta2[p], ns[s], ms[s], reps, seed, variances));
        }
    }
    return out;
}

void render_text(std::ostream& out, std::span<const SimulationReport> reports) {
    // Group by parameter pair, keeping first-appearance order.
    std::vector<std::pair<double, double>> pairs;
    for (const auto& r : reports) {
        const std::pair<double, double> key{r.config.theta1, r.config.theta2};
        if (std::find(pairs.begin(), pairs.end(), key) == pairs.end()) pairs.push_back(key);
    }
    const auto flags = out.flags();
    const auto prec = out.precision();
    out << std::fixed << std::setprecision(4);
    for (const auto& [t1, t2] : pairs) {
        std::vector<const SimulationReport*> group;
        for (const auto& r : reports) {
            if (r.config.theta1 == t1 && r.config.theta2 == t2) group.push_back(&r);
        }
        const auto& labels = group.front()->estimator_labels;
        for (Target t : kTargets) {
            out << "AV / MSE of " << target_name(t) << " estimators, theta1 = " << t1 << ", theta2 = " << t2
                << " (" << group.front()->config.replications << " replications)\n";
            out << std::setw(10) << std::left << "(n,m)" << std::right;
            for (const auto& l : labels) out << std::setw(std::max<int>(10, static_cast<int>(l.size()) + 2)) << l;
            out << '\n';
            std::size_t failures = 0;
            for (const auto* r : group) {
                const auto& cells = r->cells[static_cast<std::size_t>(t)];
                std::ostringstream nm;
                nm << '(' << r->config.n << ',' << r->config.m << ')';
                out << std::setw(10) << std::left << nm.str() << std::right;
                for (std::size_t k = 0; k < cells.size(); ++k) {
                    out << std::setw(std::max<int>(10, static_cast<int>(labels[k].size()) + 2)) << cells[k].av;
                    failures += cells[k].failures;
                }
                out << '\n' << std::setw(10) << "";
                for (std::size_t k = 0; k < cells.size(); ++k) {
                    out << std::setw(std::max<int>(10, static_cast<int>(labels[k].size()) + 2)) << cells[k].mse;
                }
                out << '\n';
            }
            if (failures > 0) out << "  (" << failures << " estimator failures excluded)\n";
            out << '\n';
        }
    }
    out.flags(flags);
    out.precision(prec);
}

void render_csv(std::ostream& out, std::span<const SimulationReport> reports) {
    const auto prec = out.precision();
    out << "theta1,theta2,n,m,replications,seed,target,estimator,av,mse,count,failures\n";
    out << std::setprecision(17);
    for (const auto& r : reports) {
        for (Target t : kTargets) {
            const auto& cells = r.cells[static_cast<std::size_t>(t)];
            for (std::size_t k = 0; k < cells.size(); ++k) {
                out << r.config.theta1 << ',' << r.config.theta2 << ',' << r.config.n << ',' << r.config.m << ','
                    << r.config.replications << ',' << r.config.seed << ',' << target_name(t) << ','
                    << r.estimator_ids[k] << ',' << cells[k].av << ',' << cells[k].mse << ',' << cells[k].count
                    << ',' << cells[k].failures << '\n';
            }
        }
    }
    out.precision(prec);
}

std::vector<CsvRecord> parse_csv(std::istream& in) {
    std::vector<CsvRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 || trim(line).empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) f.push_back(trim(item));
        if (f.size() != 12) throw InputError("csv line " + std::to_string(lineno) + ": expected 12 fields");
        auto num = [&](const std::string& s) {
            if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
            return parse_number<double>(s, lineno);
        };
        out.push_back({num(f[0]), num(f[1]), parse_number<std::size_t>(f[2], lineno),
                       parse_number<std::size_t>(f[3], lineno), parse_number<std::size_t>(f[4], lineno),
                       parse_number<std::uint64_t>(f[5], lineno), f[6], f[7], num(f[8]), num(f[9]),
                       parse_number<std::size_t>(f[10], lineno), parse_number<std::size_t>(f[11], lineno)});
    }
    return out;
}

}  // namespace invlindley
