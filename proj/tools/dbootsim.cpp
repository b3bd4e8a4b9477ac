#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dboot/errors.hpp"
#include "dboot/experiment.hpp"
#include "dboot/functional.hpp"
#include "dboot/generators.hpp"
#include "dboot/oracles.hpp"

namespace {

using dboot::ExperimentConfig;

/// Analytic oracle table for the configured grid: population moments and the
/// expansion quantities every simulation is judged against.
void print_oracle(const ExperimentConfig& cfg, std::ostream& os) {
    struct Row {
        std::string generator, functional;
        std::size_t n;
        double theta, bias, tau2, g2, g3, g4;
    };
    std::vector<Row> rows;
    for (const auto& gen_name : cfg.generators) {
        const dboot::DataGenerator gen = dboot::parse_generator(gen_name);
        const dboot::MomentSet m = gen.moments();
        for (const auto& f_name : cfg.functionals) {
            const dboot::SmoothFunctional f = dboot::parse_functional(f_name);
            const dboot::GammaSet g = dboot::gamma_contractions(f, m);
            const double theta = f.value(std::vector<double>{m.mean});
            for (const std::size_t n : cfg.n_values) {
                rows.push_back({gen.name(), f.name(), n, theta,
                                dboot::analytic_bias(f, m, n), dboot::tau_squared(f, m), g.g2,
                                g.g3, g.g4});
            }
        }
    }
    if (cfg.format == "csv") {
        os << "generator,functional,n,theta,analytic_bias,tau2,g2,g3,g4\n";
        for (const auto& r : rows) {
            os << r.generator << ',' << r.functional << ',' << r.n << ','
               << dboot::format_number(r.theta) << ',' << dboot::format_number(r.bias) << ','
               << dboot::format_number(r.tau2) << ',' << dboot::format_number(r.g2) << ','
               << dboot::format_number(r.g3) << ',' << dboot::format_number(r.g4) << '\n';
        }
        return;
    }
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    auto& out_rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        out_rows.push_back({{"generator", r.generator},
                            {"functional", r.functional},
                            {"n", r.n},
                            {"theta", dboot::emitted_value(r.theta)},
                            {"analytic_bias", dboot::emitted_value(r.bias)},
                            {"tau2", dboot::emitted_value(r.tau2)},
                            {"g2", dboot::emitted_value(r.g2)},
                            {"g3", dboot::emitted_value(r.g3)},
                            {"g4", dboot::emitted_value(r.g4)}});
    }
    os << j.dump(2) << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nested bootstrap bias correction and interval calibration simulations"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format;
    std::string reference;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t threads = 0;
    bool full_scale = false;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file, key = value lines");
        sub->add_option("--seed", seed, "master seed");
        sub->add_option("--trials", trials, "Monte Carlo trials");
        sub->add_option("--threads", threads, "worker threads, 0 means all cores");
        sub->add_option("--out", out_path, "output path, default stdout");
        sub->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--full-scale", full_scale,
                      "published design: n up to 80, 5000 trials, uncapped inner sizes");
    };

    CLI::App* bias = app.add_subcommand("bias", "bias-estimation accuracy grid");
    bias->add_option("--reference", reference, "truth the ratio column divides by")
        ->check(CLI::IsMember({"analytic", "mc", "tabulated"}));
    CLI::App* coverage =
        app.add_subcommand("coverage", "interval coverage grid at the configured level");
    CLI::App* variance =
        app.add_subcommand("variance-check", "repeated-run variance of the corrected estimators");
    CLI::App* oracle = app.add_subcommand("oracle", "print analytic oracle values for the grid");
    for (CLI::App* sub : {bias, coverage, variance, oracle}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();

    try {
        ExperimentConfig cfg;
        if (!config_path.empty()) cfg = dboot::load_config(config_path);

        if (name != "oracle") {
            const std::string expected = name == "variance-check" ? "variance_check" : name;
            if (!config_path.empty() && cfg.experiment != expected) {
                throw dboot::ConfigError("config is for experiment '" + cfg.experiment +
                                         "' but the subcommand is '" + expected + "'");
            }
            cfg.experiment = expected;
        }

        if (full_scale) cfg.apply_full_scale();
        if (sub->count("--seed") != 0) cfg.seed = seed;
        if (sub->count("--trials") != 0) cfg.trials = trials;
        if (sub->count("--threads") != 0) cfg.threads = threads;
        if (!out_path.empty()) cfg.out = out_path;
        if (!format.empty()) cfg.format = format;
        if (!reference.empty()) {
            cfg.reference = reference == "analytic"
                                ? dboot::ReferenceMode::analytic
                                : (reference == "mc" ? dboot::ReferenceMode::mc
                                                     : dboot::ReferenceMode::tabulated);
        }
        cfg.validate();

        std::ofstream file;
        std::ostream* os = &std::cout;
        if (!cfg.out.empty()) {
            file.open(cfg.out);
            if (!file) throw dboot::IoError("cannot open output file: " + cfg.out);
            os = &file;
        }

        if (name == "bias") {
            dboot::emit(dboot::run_bias_experiment(cfg), *os, cfg.format);
        } else if (name == "coverage") {
            dboot::emit(dboot::run_coverage_experiment(cfg), *os, cfg.format);
        } else if (name == "variance-check") {
            dboot::emit(dboot::run_variance_experiment(cfg), *os, cfg.format);
        } else {
            print_oracle(cfg, *os);
        }
        os->flush();
        if (!*os) throw dboot::IoError("failed while writing output");
    } catch (const dboot::ExcessTrialFailures& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const dboot::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
