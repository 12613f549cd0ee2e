// backflow command line tool: `figure` renders the trajectory/bound table for
// one of the two solvable models, `check` runs the randomized property
// suites. Exit codes: 0 all certificates satisfied, 1 bound violation,
// 2 configuration error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "backflow/runner.hpp"
#include "backflow/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitConfigError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Bare file names land in BACKFLOW_OUTPUT_DIR when it is set.
std::string resolve_output_path(const std::string& requested, backflow::OutputFormat format) {
    std::string path = requested;
    if (path.empty())
        path = std::string("figure.") + std::string(backflow::to_string(format));
    if (path.find('/') == std::string::npos) {
        if (const char* dir = std::getenv("BACKFLOW_OUTPUT_DIR"); dir && *dir)
            path = std::string(dir) + "/" + path;
    }
    return path;
}

int run_figure(const std::string& config_path, const std::vector<std::string>& quantifier_names,
               const std::string& model_name, const std::string& format_name, double mu,
               double horizon, std::size_t grid, std::uint64_t seed, const std::string& output,
               bool general_bounds, std::size_t threads, bool has_mu, bool has_horizon,
               bool has_grid, bool has_seed, bool has_threads) {
    backflow::ExperimentConfig config;
    if (!config_path.empty())
        config = backflow::config_from_json_text(read_file(config_path));

    if (!model_name.empty()) {
        const auto model = backflow::model_from_string(model_name);
        if (!model)
            throw std::invalid_argument("config field 'model': expected 'spin-star' or 'jc', got '" +
                                        model_name + "'");
        config.model = *model;
    }
    if (!format_name.empty()) {
        const auto format = backflow::format_from_string(format_name);
        if (!format)
            throw std::invalid_argument("config field 'format': expected 'csv' or 'json', got '" +
                                        format_name + "'");
        config.format = *format;
    }
    if (!quantifier_names.empty()) {
        config.quantifiers.clear();
        for (const std::string& name : quantifier_names) {
            const auto q = backflow::quantifier_from_string(name);
            if (!q)
                throw std::invalid_argument("config field 'quantifiers': unknown quantifier '" +
                                            name + "'");
            config.quantifiers.push_back(*q);
        }
    }
    if (has_mu) config.mu = mu;
    if (has_horizon) config.horizon = horizon;
    if (has_grid) config.grid_points = grid;
    if (has_seed) config.seed = seed;
    if (has_threads) config.threads = threads;
    if (!output.empty()) config.output_path = output;
    if (general_bounds) config.general_bounds = true;

    const backflow::ExperimentResult result = backflow::run_experiment(config);
    const std::string path = resolve_output_path(result.config.output_path, result.config.format);
    backflow::emit(result, result.config.format, path);

    std::cout << "model " << backflow::to_string(result.config.model) << ", mu "
              << result.config.mu << ", " << result.rows.size() << " grid rows -> " << path
              << "\n";
    for (backflow::Quantifier q : result.config.quantifiers)
        std::printf("  %-22s summed revivals %.6e, min slack %+.3e\n",
                    std::string(backflow::to_string(q)).c_str(), result.summed_revivals.at(q),
                    result.min_slack.at(q));
    if (!result.all_satisfied) {
        std::cerr << "bound violation: at least one certificate has slack below tolerance\n";
        return kExitViolation;
    }
    return kExitOk;
}

int run_check(std::uint64_t seed, std::size_t trials) {
    const backflow::PropertyReport report = backflow::run_property_suite(seed, trials);
    std::printf("property suite: seed %llu, %zu trials, %zu checks\n",
                static_cast<unsigned long long>(report.seed), report.trials,
                report.total_checks());
    for (const backflow::PropertyFamilyReport& family : report.families)
        std::printf("  %-20s checks %8zu  violations %4zu  min slack %+.3e\n",
                    family.family.c_str(), family.checks, family.violations, family.min_slack);
    if (!report.all_passed()) {
        std::cerr << report.total_violations() << " violation(s) beyond tolerance\n";
        return kExitViolation;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distinguishability quantifiers and information-backflow bound certificates"};
    app.set_version_flag("--version", backflow::kVersion);
    app.require_subcommand(1);

    // figure
    auto* figure = app.add_subcommand("figure", "trajectory and bound table for one model");
    std::string config_path, model_name, format_name, output;
    std::vector<std::string> quantifier_names;
    double mu = 0.5, horizon = 0.0;
    std::size_t grid = 400, threads = 0;
    std::uint64_t seed = 1;
    bool general_bounds = false;
    figure->add_option("--config", config_path, "JSON config file (flags override it)");
    figure->add_option("--model", model_name, "spin-star or jc");
    figure->add_option("--mu", mu, "skewing parameter in (0,1)");
    figure->add_option("--horizon", horizon, "time horizon T (0 = model default)");
    figure->add_option("--grid", grid, "number of grid points");
    figure->add_option("--seed", seed, "seed for random couplings");
    figure->add_option("--output", output, "output path");
    figure->add_option("--format", format_name, "csv or json");
    figure->add_option("--quantifiers", quantifier_names, "subset of quantifiers")
        ->delimiter(',');
    figure->add_flag("--general-bounds", general_bounds,
                     "use the phi-composition bound instead of the tight family bounds");
    figure->add_option("--threads", threads, "worker threads (0 = hardware)");

    // check
    auto* check = app.add_subcommand("check", "randomized property suites");
    std::uint64_t check_seed = 20240817;
    std::size_t trials = 10000;
    check->add_option("--seed", check_seed, "harness seed");
    check->add_option("--trials", trials, "number of random trials");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (figure->parsed())
            return run_figure(config_path, quantifier_names, model_name, format_name, mu, horizon,
                              grid, seed, output, general_bounds, threads,
                              figure->count("--mu") > 0, figure->count("--horizon") > 0,
                              figure->count("--grid") > 0, figure->count("--seed") > 0,
                              figure->count("--threads") > 0);
        return run_check(check_seed, trials);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
}
