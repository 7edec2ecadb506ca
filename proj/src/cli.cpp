#include "invlindley/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "invlindley/bayes_lindley.hpp"
#include "invlindley/datasets.hpp"
#include "invlindley/distribution.hpp"
#include "invlindley/errors.hpp"
#include "invlindley/gof.hpp"
#include "invlindley/mle.hpp"
#include "invlindley/simulation.hpp"
#include "invlindley/stress_strength.hpp"

namespace invlindley::cli {
namespace {

using nlohmann::json;

enum class Format { table, csv, json };

Format parse_format(const std::string& s) {
    if (s == "table") return Format::table;
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw InputError("unknown --format '" + s + "' (table, csv or json)");
}

KsConvention parse_ks(const std::string& s) {
    if (s == "two-sided") return KsConvention::two_sided;
    if (s == "ordered-step") return KsConvention::ordered_step;
    throw InputError("unknown --ks '" + s + "' (two-sided or ordered-step)");
}

/// A builtin name, or else a file path.
Dataset resolve(const std::string& spec, const std::string& variant) {
    const auto names = builtin_names();
    if (std::find(names.begin(), names.end(), spec) != names.end()) return load_builtin(spec, parse_variant(variant));
    return load_file(spec);
}

Dataset resolve_fit_input(const std::string& data, const std::string& builtin, const std::string& variant) {
    if (!data.empty() && !builtin.empty()) throw InputError("give either --data or --builtin, not both");
    if (!builtin.empty()) return load_builtin(builtin, parse_variant(variant));
    if (!data.empty()) return load_file(data);
    throw InputError("one of --data or --builtin is required");
}

int threads_from_env() {
    const char* v = std::getenv("INVLINDLEY_THREADS");
    if (v == nullptr || *v == '\0') return 0;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 0) throw InputError("INVLINDLEY_THREADS must be a non-negative integer");
    return static_cast<int>(n);
}

struct Fixed4 {
    double v;
};
std::ostream& operator<<(std::ostream& os, Fixed4 f) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << f.v;
    return os << s.str();
}

void print_fit(std::ostream& out, const Dataset& d, const std::vector<FitReport>& rows, Format fmt) {
    if (fmt == Format::json) {
        json j = {{"dataset", d.name}, {"n", d.values.size()}, {"models", json::array()}};
        for (const auto& r : rows) {
            j["models"].push_back({{"model", r.model}, {"theta_hat", r.theta_hat}, {"loglik", r.loglik},
                                   {"aic", r.aic}, {"bic", r.bic}, {"ks", r.ks}, {"n", r.n}});
        }
        out << j.dump(2) << '\n';
        return;
    }
    if (fmt == Format::csv) {
        out << "dataset,model,theta_hat,loglik,aic,bic,ks,n\n" << std::setprecision(17);
        for (const auto& r : rows) {
            out << d.name << ',' << r.model << ',' << r.theta_hat << ',' << r.loglik << ',' << r.aic << ',' << r.bic
                << ',' << r.ks << ',' << r.n << '\n';
        }
        return;
    }
    out << d.name << " (n = " << d.values.size() << ")\n";
    out << std::left << std::setw(7) << "Model" << std::right << std::setw(12) << "MLE" << std::setw(16)
        << "Log-Likelihood" << std::setw(12) << "AIC" << std::setw(12) << "BIC" << std::setw(10) << "K-S" << '\n';
    for (const auto& r : rows) {
        out << std::left << std::setw(7) << r.model << std::right << std::setw(12) << Fixed4{r.theta_hat}
            << std::setw(16) << Fixed4{r.loglik} << std::setw(12) << Fixed4{r.aic} << std::setw(12)
            << Fixed4{r.bic} << std::setw(10) << Fixed4{r.ks} << '\n';
    }
}

std::vector<double> parse_hyper(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw InputError("--hyper: cannot parse '" + item + "'");
        }
    }
    if (v.size() != 4) throw InputError("--hyper needs four values a1,b1,a2,b2");
    return v;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Inverse Lindley distribution: fitting, stress-strength reliability and Bayes estimation",
                 "invlindley"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "table";
    app.add_option("--format", format, "Output format: table, csv or json")->capture_default_str();

    // fit
    std::string data, builtin, variant = "corrected", ks = "two-sided";
    auto* fit = app.add_subcommand("fit", "Fit ILD and inverse Rayleigh models and compare them");
    fit->add_option("--data", data, "Data file");
    fit->add_option("--builtin", builtin, "Bundled dataset: headneck_rt or headneck_ctrt");
    fit->add_option("--variant", variant, "corrected or as_printed")->capture_default_str();
    fit->add_option("--ks", ks, "K-S convention: two-sided or ordered-step")->capture_default_str();

    // gof
    std::string curve;
    std::size_t points = 200;
    auto* gof = app.add_subcommand("gof", "Goodness of fit of the ILD model, with optional ECDF curve export");
    gof->add_option("--data", data, "Data file");
    gof->add_option("--builtin", builtin, "Bundled dataset");
    gof->add_option("--variant", variant, "corrected or as_printed")->capture_default_str();
    gof->add_option("--ks", ks, "K-S convention: two-sided or ordered-step")->capture_default_str();
    gof->add_option("--curve", curve, "Write x,empirical,fitted CSV here");
    gof->add_option("--points", points, "Grid points for --curve")->capture_default_str();

    // reliability / bayes
    std::string strength, stress;
    double level = 0.95;
    auto* rel = app.add_subcommand("reliability", "MLE of R = P(stress < strength) with asymptotic intervals");
    rel->add_option("--strength", strength, "Strength sample (builtin name or file)")->required();
    rel->add_option("--stress", stress, "Stress sample (builtin name or file)")->required();
    rel->add_option("--variant", variant, "Variant used for builtin datasets")->capture_default_str();
    rel->add_option("--level", level, "Confidence level")->capture_default_str();

    std::string prior = "jeffrey", hyper, loss = "self";
    bool full_lindley = false;
    auto* bay = app.add_subcommand("bayes", "Lindley-approximation Bayes estimates of theta1, theta2 and R");
    bay->add_option("--strength", strength, "Strength sample (builtin name or file)")->required();
    bay->add_option("--stress", stress, "Stress sample (builtin name or file)")->required();
    bay->add_option("--variant", variant, "Variant used for builtin datasets")->capture_default_str();
    bay->add_option("--prior", prior, "jeffrey or gamma")->capture_default_str();
    bay->add_option("--hyper", hyper, "Gamma hyperparameters a1,b1,a2,b2");
    bay->add_option("--loss", loss, "self or elf")->capture_default_str();
    bay->add_flag("--full-lindley", full_lindley, "Apply the general correction for Jeffrey/SELF");

    // sample / quantile
    double theta = 1.0, prob = 0.5;
    std::size_t count = 0;
    std::uint64_t seed = 0;
    std::string out_path;
    auto* smp = app.add_subcommand("sample", "Draw ILD variates, one per line");
    smp->add_option("--theta", theta, "Parameter theta")->required();
    smp->add_option("--n", count, "Number of draws")->required();
    smp->add_option("--seed", seed, "Seed")->required();
    smp->add_option("--out", out_path, "Write to this file instead of stdout");
    auto* qnt = app.add_subcommand("quantile", "ILD quantile Q(p)");
    qnt->add_option("--theta", theta, "Parameter theta")->required();
    qnt->add_option("--p", prob, "Probability in (0, 1)")->required();

    // simulate
    std::string config;
    std::optional<std::size_t> reps;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo AV/MSE study of all estimators");
    sim->add_option("--config", config, "Scenario file (key = value lines)")->required();
    sim->add_option("--reps", reps, "Override the number of replications");
    sim->add_option("--out", out_path, "Also write CSV here");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        const Format fmt = parse_format(format);

        if (fit->parsed()) {
            const Dataset d = resolve_fit_input(data, builtin, variant);
            print_fit(out, d, compare_models(d.values, parse_ks(ks)), fmt);
            return kOk;
        }

        if (gof->parsed()) {
            const Dataset d = resolve_fit_input(data, builtin, variant);
            const KsConvention conv = parse_ks(ks);
            const IldParams fitp(mle_theta(sufficient_stats(d.values)));
            const double ll = loglik(fitp, d.values);
            const auto ic = aic_bic(ll, 1, d.values.size());
            const double dks = ks_statistic([&](double x) { return cdf(fitp, x); }, d.values, conv);
            if (fmt == Format::json) {
                out << json{{"dataset", d.name}, {"n", d.values.size()}, {"theta_hat", fitp.theta()},
                            {"loglik", ll}, {"aic", ic.aic}, {"bic", ic.bic}, {"ks", dks}}
                           .dump(2)
                    << '\n';
            } else if (fmt == Format::csv) {
                out << "dataset,n,theta_hat,loglik,aic,bic,ks\n"
                    << std::setprecision(17) << d.name << ',' << d.values.size() << ',' << fitp.theta() << ','
                    << ll << ',' << ic.aic << ',' << ic.bic << ',' << dks << '\n';
            } else {
                out << d.name << ": n = " << d.values.size() << ", theta_hat = " << Fixed4{fitp.theta()}
                    << ", loglik = " << Fixed4{ll} << ", AIC = " << Fixed4{ic.aic} << ", BIC = " << Fixed4{ic.bic}
                    << ", K-S = " << Fixed4{dks} << '\n';
            }
            if (!curve.empty()) {
                if (points < 2) throw InputError("--points must be >= 2");
                const auto [lo_it, hi_it] = std::minmax_element(d.values.begin(), d.values.end());
                const double lo = *lo_it * 0.5;
                const double hi = *hi_it * 1.5;
                std::vector<double> grid(points);
                for (std::size_t i = 0; i < points; ++i) {
                    grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(points - 1));
                }
                std::ofstream f(curve);
                if (!f) throw InputError("cannot write '" + curve + "'");
                write_curve_csv(f, ecdf_curve(d.values, grid));
            }
            return kOk;
        }

        if (rel->parsed() || bay->parsed()) {
            const Dataset x = resolve(strength, variant);
            const Dataset y = resolve(stress, variant);
            const SufficientStats sx = sufficient_stats(x.values);
            const SufficientStats sy = sufficient_stats(y.values);

            if (rel->parsed()) {
                const double t1 = mle_theta(sx);
                const double t2 = mle_theta(sy);
                const ThetaEstimate c1 = theta_ci(t1, sx.n(), level);
                const ThetaEstimate c2 = theta_ci(t2, sy.n(), level);
                const RInterval rc = r_ci(StressStrengthModel(t1, t2), sx.n(), sy.n(), level);
                if (fmt == Format::json) {
                    auto te = [](const ThetaEstimate& e) {
                        return json{{"estimate", e.theta_hat}, {"std_err", e.std_err}, {"low", e.ci_low},
                                    {"high", e.ci_high}};
                    };
                    out << json{{"strength", x.name}, {"stress", y.name}, {"level", level}, {"theta1", te(c1)},
                                {"theta2", te(c2)},
                                {"R",
                                 {{"estimate", rc.estimate}, {"std_err", rc.std_err}, {"low", rc.low},
                                  {"high", rc.high}, {"low_clipped", rc.clipped_low()},
                                  {"high_clipped", rc.clipped_high()}}}}
                               .dump(2)
                        << '\n';
                } else if (fmt == Format::csv) {
                    out << "parameter,estimate,std_err,low,high\n" << std::setprecision(17);
                    out << "R," << rc.estimate << ',' << rc.std_err << ',' << rc.clipped_low() << ','
                        << rc.clipped_high() << '\n';
                    out << "theta1," << c1.theta_hat << ',' << c1.std_err << ',' << c1.ci_low << ',' << c1.ci_high
                        << '\n';
                    out << "theta2," << c2.theta_hat << ',' << c2.std_err << ',' << c2.ci_low << ',' << c2.ci_high
                        << '\n';
                } else {
                    out << "strength: " << x.name << " (n = " << sx.n() << "), stress: " << y.name
                        << " (m = " << sy.n() << "), level " << level << '\n';
                    out << "R       " << Fixed4{rc.estimate} << "  [" << Fixed4{rc.clipped_low()} << ", "
                        << Fixed4{rc.clipped_high()} << "]\n";
                    out << "theta1  " << Fixed4{c1.theta_hat} << "  [" << Fixed4{c1.ci_low} << ", "
                        << Fixed4{c1.ci_high} << "]\n";
                    out << "theta2  " << Fixed4{c2.theta_hat} << "  [" << Fixed4{c2.ci_low} << ", "
                        << Fixed4{c2.ci_high} << "]\n";
                }
                return kOk;
            }

            PriorSpec ps = PriorSpec::jeffrey();
            if (prior == "gamma") {
                if (hyper.empty()) throw InputError("--prior gamma requires --hyper a1,b1,a2,b2");
                const auto h = parse_hyper(hyper);
                try {
                    ps = PriorSpec::gamma(h[0], h[1], h[2], h[3]);
                } catch (const DomainError& e) {
                    throw InputError(e.what());
                }
            } else if (prior != "jeffrey") {
                throw InputError("unknown --prior '" + prior + "' (jeffrey or gamma)");
            }
            LossKind lk;
            if (loss == "self") {
                lk = LossKind::self;
            } else if (loss == "elf") {
                lk = LossKind::elf;
            } else {
                throw InputError("unknown --loss '" + loss + "' (self or elf)");
            }
            const LindleyOptions opts{full_lindley};
            const double b1 = bayes_theta(sx, 1, ps, lk, opts);
            const double b2 = bayes_theta(sy, 2, ps, lk, opts);
            const double br = bayes_r(sx, sy, ps, lk);
            if (fmt == Format::json) {
                out << json{{"prior", prior}, {"loss", loss}, {"theta1", b1}, {"theta2", b2}, {"R", br}}.dump(2)
                    << '\n';
            } else if (fmt == Format::csv) {
                out << "prior,loss,theta1,theta2,R\n"
                    << std::setprecision(17) << prior << ',' << loss << ',' << b1 << ',' << b2 << ',' << br << '\n';
            } else {
                out << "prior " << prior << ", loss " << loss << '\n';
                out << "R       " << Fixed4{br} << '\n';
                out << "theta1  " << Fixed4{b1} << '\n';
                out << "theta2  " << Fixed4{b2} << '\n';
            }
            return kOk;
        }

        if (smp->parsed()) {
            const auto xs = sample(IldParams(theta), count, seed);
            std::ofstream file;
            if (!out_path.empty()) {
                file.open(out_path);
                if (!file) throw InputError("cannot write '" + out_path + "'");
            }
            std::ostream& dst = out_path.empty() ? out : file;
            dst << std::setprecision(17);
            for (double v : xs) dst << v << '\n';
            return kOk;
        }

        if (qnt->parsed()) {
            const double q = quantile(IldParams(theta), prob);
            if (fmt == Format::json) {
                out << json{{"theta", theta}, {"p", prob}, {"quantile", q}}.dump(2) << '\n';
            } else {
                out << std::setprecision(17) << q << '\n';
            }
            return kOk;
        }

        if (sim->parsed()) {
            std::ifstream in(config);
            if (!in) throw InputError("cannot open config '" + config + "'");
            auto cfgs = parse_config(in);
            if (reps) {
                if (*reps < 1) throw InputError("--reps must be >= 1");
                for (auto& c : cfgs) c.replications = *reps;
            }
            const auto reports = run_suite(cfgs, threads_from_env());
            if (fmt == Format::csv) {
                render_csv(out, reports);
            } else if (fmt == Format::json) {
                json j = json::array();
                for (const auto& r : reports) {
                    json cells = json::object();
                    for (Target t : kTargets) {
                        json tj = json::object();
                        for (std::size_t k = 0; k < r.estimator_ids.size(); ++k) {
                            const auto& c = r.cells[static_cast<std::size_t>(t)][k];
                            tj[r.estimator_ids[k]] = {
                                {"av", c.av}, {"mse", c.mse}, {"count", c.count}, {"failures", c.failures}};
                        }
                        cells[target_name(t)] = tj;
                    }
                    j.push_back({{"theta1", r.config.theta1}, {"theta2", r.config.theta2}, {"n", r.config.n},
                                 {"m", r.config.m}, {"replications", r.config.replications},
                                 {"seed", r.config.seed}, {"estimates", cells}});
                }
                out << j.dump(2) << '\n';
            } else {
                render_text(out, reports);
            }
            if (!out_path.empty()) {
                std::ofstream f(out_path);
                if (!f) throw InputError("cannot write '" + out_path + "'");
                render_csv(f, reports);
            }
            return kOk;
        }
    } catch (const ApproximationError& e) {
        err << "error: " << e.what() << '\n';
        return kNumericalError;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kNumericalError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace invlindley::cli
