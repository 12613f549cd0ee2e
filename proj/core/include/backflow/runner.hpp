// runner.hpp: experiment orchestration. Builds a model trajectory, evaluates
// the selected quantifiers and their backflow bounds along the grid, runs the
// randomized property suites, and renders tables as CSV or JSON.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "backflow/models.hpp"
#include "backflow/tolerances.hpp"

namespace backflow {

enum class Model { spin_star, jaynes_cummings };
enum class OutputFormat { csv, json };

std::string_view to_string(Model m);
std::string_view to_string(OutputFormat f);
std::optional<Model> model_from_string(std::string_view name);
std::optional<OutputFormat> format_from_string(std::string_view name);

struct ExperimentConfig {
    Model model = Model::spin_star;
    SpinStarParams spin_star;        // couplings empty: drawn from the seed
    double mean_coupling = 1.0;      // sets the spin-star time unit
    JCParams jc;
    double mu = 0.5;
    std::vector<Quantifier> quantifiers{kAllQuantifiers,
                                        kAllQuantifiers + std::size(kAllQuantifiers)};
    double horizon = 0.0;            // 0: model default (5/gbar spin-star, 8.9/g JC)
    std::size_t grid_points = 400;
    std::uint64_t seed = 1;
    std::string output_path;
    OutputFormat format = OutputFormat::csv;
    bool general_bounds = false;     // phi-composition variant instead of the tight bounds
    std::size_t threads = 0;         // 0: hardware concurrency
    Tolerances tolerances;
};

// Parse a config JSON document; unknown or ill-typed fields raise
// std::invalid_argument naming the field.
ExperimentConfig config_from_json_text(const std::string& text);

// Per-quantifier data of one grid row.
struct FigureEntry {
    double value = 0.0;            // quantifier at s on the reduced pair
    double lhs = 0.0;              // variation value(T) - value(s)
    double rhs_environment = 0.0;  // bound contributions at s
    double rhs_correlation_rho = 0.0;
    double rhs_correlation_sigma = 0.0;
    double rhs_total = 0.0;
    double slack = 0.0;
};

struct FigureRow {
    double s = 0.0;
    std::vector<FigureEntry> entries;  // parallel to the configured quantifier list
};

struct ExperimentResult {
    ExperimentConfig config;  // echo with resolved horizon and couplings
    std::vector<FigureRow> rows;
    std::map<Quantifier, double> summed_revivals;  // over the value series
    std::map<Quantifier, double> min_slack;
    bool all_satisfied = false;
};

// Bound table for an existing trajectory; rows ordered by time regardless of
// the number of worker threads.
std::vector<FigureRow> figure_table(const JointTrajectory& trajectory, const SkewParam& mu,
                                    const std::vector<Quantifier>& quantifiers,
                                    BoundVariant variant, std::size_t threads,
                                    const Tolerances& tol = default_tolerances());

ExperimentResult run_experiment(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Randomized property suites.

struct PropertyFamilyReport {
    std::string family;
    std::size_t checks = 0;
    std::size_t violations = 0;
    double min_slack = 0.0;  // most negative margin observed
};

struct PropertyReport {
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::vector<PropertyFamilyReport> families;

    bool all_passed() const;
    std::size_t total_checks() const;
    std::size_t total_violations() const;
};

// Exercises normalization, contractivity, invariances, symmetries,
// Pinsker-like, triangle-like, mixture-shift and telescoping inequalities on
// random states of dimension 2 to 4. Deterministic under the seed.
PropertyReport run_property_suite(std::uint64_t seed, std::size_t trials,
                                  const Tolerances& tol = default_tolerances());

// ---------------------------------------------------------------------------
// Emission.

std::string to_csv(const ExperimentResult& result);
std::string to_json_text(const ExperimentResult& result);

// Writes the rendered table to `path` in the requested format.
void emit(const ExperimentResult& result, OutputFormat format, const std::string& path);

}  // namespace backflow
