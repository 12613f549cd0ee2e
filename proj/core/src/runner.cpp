#include "backflow/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "backflow/rng.hpp"
#include "backflow/version.hpp"

namespace backflow {

using nlohmann::json;

std::string_view to_string(Model m) {
    return m == Model::spin_star ? "spin-star" : "jc";
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

std::optional<Model> model_from_string(std::string_view name) {
    if (name == "spin-star") return Model::spin_star;
    if (name == "jc") return Model::jaynes_cummings;
    return std::nullopt;
}

std::optional<OutputFormat> format_from_string(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Config parsing.

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
    throw std::invalid_argument("config field '" + field + "': " + what);
}

template <typename T>
T field_as(const json& node, const std::string& field) {
    try {
        return node.get<T>();
    } catch (const json::exception&) {
        config_error(field, "unexpected type");
    }
}

void check_known_keys(const json& object, const std::string& scope,
                      std::initializer_list<const char*> known) {
    for (const auto& [key, value] : object.items()) {
        bool found = false;
        for (const char* k : known)
            if (key == k) found = true;
        if (!found)
            config_error(scope.empty() ? key : scope + "." + key, "unknown field");
    }
}

void parse_spin_star(const json& node, SpinStarParams& params) {
    check_known_keys(node, "spin_star", {"n_env", "omega_s", "omega_e", "couplings"});
    if (node.contains("n_env")) params.n_env = field_as<std::size_t>(node["n_env"], "spin_star.n_env");
    if (node.contains("omega_s"))
        params.omega_s = field_as<double>(node["omega_s"], "spin_star.omega_s");
    if (node.contains("omega_e"))
        params.omega_e = field_as<std::vector<double>>(node["omega_e"], "spin_star.omega_e");
    if (node.contains("couplings"))
        params.couplings = field_as<std::vector<double>>(node["couplings"], "spin_star.couplings");
}

void parse_jc(const json& node, JCParams& params) {
    check_known_keys(node, "jc", {"g", "delta", "beta_omega", "cutoff"});
    if (node.contains("g")) params.g = field_as<double>(node["g"], "jc.g");
    if (node.contains("delta")) params.delta = field_as<double>(node["delta"], "jc.delta");
    if (node.contains("beta_omega"))
        params.beta_omega = field_as<double>(node["beta_omega"], "jc.beta_omega");
    if (node.contains("cutoff")) params.cutoff = field_as<std::size_t>(node["cutoff"], "jc.cutoff");
}

void parse_tolerances(const json& node, Tolerances& tol) {
    check_known_keys(node, "tolerances",
                     {"structural", "solver", "max_sweeps", "violation", "support_eigenvalue",
                      "support_overlap"});
    if (node.contains("structural"))
        tol.structural = field_as<double>(node["structural"], "tolerances.structural");
    if (node.contains("solver")) tol.solver = field_as<double>(node["solver"], "tolerances.solver");
    if (node.contains("max_sweeps"))
        tol.max_sweeps = field_as<int>(node["max_sweeps"], "tolerances.max_sweeps");
    if (node.contains("violation"))
        tol.violation = field_as<double>(node["violation"], "tolerances.violation");
    if (node.contains("support_eigenvalue"))
        tol.support_eigenvalue =
            field_as<double>(node["support_eigenvalue"], "tolerances.support_eigenvalue");
    if (node.contains("support_overlap"))
        tol.support_overlap =
            field_as<double>(node["support_overlap"], "tolerances.support_overlap");
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("config: top level must be an object");

    check_known_keys(doc, "",
                     {"model", "spin_star", "mean_coupling", "jc", "mu", "quantifiers", "horizon",
                      "grid_points", "seed", "output", "format", "general_bounds", "threads",
                      "tolerances"});

    ExperimentConfig config;
    if (doc.contains("model")) {
        const auto name = field_as<std::string>(doc["model"], "model");
        const auto model = model_from_string(name);
        if (!model) config_error("model", "expected 'spin-star' or 'jc', got '" + name + "'");
        config.model = *model;
    }
    if (doc.contains("spin_star")) parse_spin_star(doc["spin_star"], config.spin_star);
    if (doc.contains("mean_coupling"))
        config.mean_coupling = field_as<double>(doc["mean_coupling"], "mean_coupling");
    if (doc.contains("jc")) parse_jc(doc["jc"], config.jc);
    if (doc.contains("mu")) config.mu = field_as<double>(doc["mu"], "mu");
    if (doc.contains("quantifiers")) {
        const auto names = field_as<std::vector<std::string>>(doc["quantifiers"], "quantifiers");
        config.quantifiers.clear();
        for (const std::string& name : names) {
            const auto q = quantifier_from_string(name);
            if (!q) config_error("quantifiers", "unknown quantifier '" + name + "'");
            config.quantifiers.push_back(*q);
        }
    }
    if (doc.contains("horizon")) config.horizon = field_as<double>(doc["horizon"], "horizon");
    if (doc.contains("grid_points"))
        config.grid_points = field_as<std::size_t>(doc["grid_points"], "grid_points");
    if (doc.contains("seed")) config.seed = field_as<std::uint64_t>(doc["seed"], "seed");
    if (doc.contains("output")) config.output_path = field_as<std::string>(doc["output"], "output");
    if (doc.contains("format")) {
        const auto name = field_as<std::string>(doc["format"], "format");
        const auto format = format_from_string(name);
        if (!format) config_error("format", "expected 'csv' or 'json', got '" + name + "'");
        config.format = *format;
    }
    if (doc.contains("general_bounds"))
        config.general_bounds = field_as<bool>(doc["general_bounds"], "general_bounds");
    if (doc.contains("threads")) config.threads = field_as<std::size_t>(doc["threads"], "threads");
    if (doc.contains("tolerances")) parse_tolerances(doc["tolerances"], config.tolerances);
    return config;
}

// ---------------------------------------------------------------------------
// Figure table.

namespace {

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

struct RowData {
    std::map<Quantifier, double> values;
    std::map<Quantifier, BackflowTerms> terms;
};

}  // namespace

std::vector<FigureRow> figure_table(const JointTrajectory& trajectory, const SkewParam& mu,
                                    const std::vector<Quantifier>& quantifiers,
                                    BoundVariant variant, std::size_t threads,
                                    const Tolerances& tol) {
    if (trajectory.snapshots.size() != trajectory.times.size())
        throw std::invalid_argument("figure_table: trajectory times and snapshots disagree");
    if (trajectory.snapshots.empty())
        throw std::invalid_argument("figure_table: empty trajectory");
    if (quantifiers.empty())
        throw std::invalid_argument("figure_table: quantifier list must not be empty");

    const std::size_t n = trajectory.snapshots.size();
    std::vector<RowData> data(n);
    parallel_for(n, threads, [&](std::size_t i) {
        const SnapshotPair& snap = trajectory.snapshots[i];
        data[i].values = evaluate_quantifiers(snap.rho_s, snap.sigma_s, mu, quantifiers, tol);
        data[i].terms = backflow_terms(snap, mu, quantifiers, tol);
    });

    const std::map<Quantifier, double>& final_values = data.back().values;
    std::vector<FigureRow> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i].s = trajectory.times[i];
        rows[i].entries.reserve(quantifiers.size());
        for (Quantifier q : quantifiers) {
            const double value = data[i].values.at(q);
            const double lhs = final_values.at(q) - value;
            const BoundCertificate cert =
                assemble_backflow_certificate(q, mu, variant, lhs, data[i].terms.at(q), tol);
            FigureEntry entry;
            entry.value = value;
            entry.lhs = lhs;
            entry.rhs_environment = cert.rhs_terms[0].second;
            entry.rhs_correlation_rho = cert.rhs_terms[1].second;
            entry.rhs_correlation_sigma = cert.rhs_terms[2].second;
            entry.rhs_total = cert.rhs_total;
            entry.slack = cert.slack;
            rows[i].entries.push_back(entry);
        }
    }
    return rows;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    ExperimentConfig resolved = config;
    if (resolved.quantifiers.empty())
        throw std::invalid_argument("config field 'quantifiers': must not be empty");
    if (resolved.grid_points < 2)
        throw std::invalid_argument("config field 'grid_points': need at least 2");
    const SkewParam mu(resolved.mu);

    if (resolved.model == Model::spin_star && resolved.spin_star.couplings.empty())
        resolved.spin_star = SpinStarParams::with_random_couplings(
            resolved.spin_star.n_env, resolved.mean_coupling, resolved.seed);
    if (resolved.horizon == 0.0)
        resolved.horizon = resolved.model == Model::spin_star ? 5.0 / resolved.mean_coupling
                                                              : 8.9 / resolved.jc.g;
    if (!(resolved.horizon > 0.0))
        throw std::invalid_argument("config field 'horizon': must be > 0");

    const std::vector<double> times = uniform_grid(resolved.horizon, resolved.grid_points);
    const Tolerances& tol = resolved.tolerances;

    JointTrajectory trajectory;
    if (resolved.model == Model::spin_star) {
        const auto [rho0, sigma0] = spin_star_initial_pair(tol);
        trajectory = spin_star_evolve(resolved.spin_star, rho0, sigma0, times, tol);
    } else {
        const auto [rho0, sigma0] = jc_initial_pair(tol);
        trajectory = jc_evolve(resolved.jc, rho0, sigma0, times, tol);
    }

    ExperimentResult result;
    result.config = resolved;
    result.rows = figure_table(trajectory, mu, resolved.quantifiers,
                               resolved.general_bounds ? BoundVariant::general : BoundVariant::tight,
                               resolved.threads, tol);

    result.all_satisfied = true;
    for (std::size_t qi = 0; qi < resolved.quantifiers.size(); ++qi) {
        const Quantifier q = resolved.quantifiers[qi];
        std::vector<double> series;
        series.reserve(result.rows.size());
        double min_slack = std::numeric_limits<double>::infinity();
        for (const FigureRow& row : result.rows) {
            series.push_back(row.entries[qi].value);
            min_slack = std::min(min_slack, row.entries[qi].slack);
        }
        result.summed_revivals[q] = summed_revivals(series);
        result.min_slack[q] = min_slack;
        if (min_slack < -tol.violation) result.all_satisfied = false;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Property suite.

namespace {

class FamilyTracker {
public:
    explicit FamilyTracker(std::string name) : report_{std::move(name), 0, 0,
                                                       std::numeric_limits<double>::infinity()} {}

    // Margin semantics: negative means violated.
    void record(double margin) {
        ++report_.checks;
        report_.min_slack = std::min(report_.min_slack, margin);
        if (margin < 0.0) ++report_.violations;
    }

    // For checks that are satisfied vacuously (infinite budget).
    void record_pass() { ++report_.checks; }

    void record_certificates(const std::vector<BoundCertificate>& certs, double tolerance) {
        for (const BoundCertificate& c : certs) record(c.slack + tolerance);
    }

    PropertyFamilyReport report() const {
        PropertyFamilyReport r = report_;
        if (r.checks == 0 || !std::isfinite(r.min_slack)) r.min_slack = 0.0;
        return r;
    }

private:
    PropertyFamilyReport report_;
};

}  // namespace

bool PropertyReport::all_passed() const {
    for (const PropertyFamilyReport& f : families)
        if (f.violations > 0) return false;
    return true;
}

std::size_t PropertyReport::total_checks() const {
    std::size_t n = 0;
    for (const PropertyFamilyReport& f : families) n += f.checks;
    return n;
}

std::size_t PropertyReport::total_violations() const {
    std::size_t n = 0;
    for (const PropertyFamilyReport& f : families) n += f.violations;
    return n;
}

PropertyReport run_property_suite(std::uint64_t seed, std::size_t trials, const Tolerances& tol) {
    if (trials < 1) throw std::invalid_argument("run_property_suite: need at least one trial");

    Rng rng(seed);
    const double mu_grid[] = {0.1, 0.25, 0.5, 0.75, 0.9};
    const std::vector<Quantifier> all(kAllQuantifiers,
                                      kAllQuantifiers + std::size(kAllQuantifiers));

    FamilyTracker normalization("normalization");
    FamilyTracker contractivity("contractivity");
    FamilyTracker unitary_invariance("unitary_invariance");
    FamilyTracker ancilla_invariance("ancilla_invariance");
    FamilyTracker symmetry("symmetry");
    FamilyTracker pinsker("pinsker");
    FamilyTracker triangle("triangle");
    FamilyTracker appendix("appendix");
    FamilyTracker weighting("helstrom_weighting");
    FamilyTracker base_independence("base_independence");
    FamilyTracker dual_path("dual_path");

    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t dim = 2 + trial % 3;
        const SkewParam mu(mu_grid[trial % std::size(mu_grid)]);
        const double m = mu.mu();
        const double h = binary_entropy(mu);

        const DensityMatrix rho = random_state(rng, dim, 0, tol);
        const DensityMatrix sigma =
            trial % 5 == 0 ? random_pure_state(rng, dim, tol) : random_state(rng, dim, 0, tol);
        const DensityMatrix tau = random_state(rng, dim, 0, tol);

        const auto values = evaluate_quantifiers(rho, sigma, mu, all, tol);
        const double dist = values.at(Quantifier::trace_distance);
        const double hel = values.at(Quantifier::helstrom);
        const double hel_sym = values.at(Quantifier::helstrom_symmetrized);
        const double k = values.at(Quantifier::holevo_skew);
        const double s = values.at(Quantifier::quantum_skew);
        const double j = values.at(Quantifier::jensen_shannon);

        // Property I: bounds and normalization.
        for (double v : {k, s, j, dist})
            normalization.record(std::min(v + tol.violation, 1.0 + tol.violation - v));
        normalization.record(std::min(hel - std::abs(2.0 * m - 1.0) + tol.violation,
                                      1.0 + tol.violation - hel));
        normalization.record(1.0 + tol.violation - hel_sym);
        for (double v : {holevo_skew(rho, rho, mu, tol), quantum_skew(rho, rho, mu, tol),
                         jensen_shannon(rho, rho, tol), trace_distance(rho, rho, tol)})
            normalization.record(tol.violation - std::abs(v));
        if (trial % 4 == 0) {
            const auto [oa, ob] = random_orthogonal_pair(rng, dim, tol);
            normalization.record(support_orthogonal(oa, ob, tol) ? tol.violation : -1.0);
            for (double v :
                 {holevo_skew(oa, ob, mu, tol), quantum_skew(oa, ob, mu, tol),
                  jensen_shannon(oa, ob, tol), trace_distance(oa, ob, tol)})
                normalization.record(tol.violation - std::abs(1.0 - v));
        }
        if (trial % 5 != 0) {
            // Full-rank pairs must stay strictly away from the orthogonal
            // ceiling.
            normalization.record(support_orthogonal(rho, sigma, tol) ? -1.0 : tol.violation);
            for (double v : {k, s, j}) normalization.record(1.0 - 1e-6 - v);
        }

        // Property II: contractivity under a random CPTP map, plus the
        // relative entropy.
        {
            const auto kraus = random_kraus_set(rng, dim, 1 + trial % 4);
            const DensityMatrix lrho = apply_channel(kraus, rho, tol);
            const DensityMatrix lsigma = apply_channel(kraus, sigma, tol);
            const auto mapped = evaluate_quantifiers(lrho, lsigma, mu, all, tol);
            for (Quantifier q : all)
                contractivity.record(values.at(q) - mapped.at(q) + tol.violation);
            const ExtendedReal pre = relative_entropy(rho, sigma, tol);
            const ExtendedReal post = relative_entropy(lrho, lsigma, tol);
            if (pre.is_infinite())
                contractivity.record_pass();
            else if (post.is_infinite())
                contractivity.record(-1.0);
            else
                contractivity.record(pre.value() - post.value() + tol.violation);
        }

        // Unitary and ancilla invariance.
        {
            const la::ComplexMatrix u = random_unitary(rng, dim);
            const auto rotated = evaluate_quantifiers(unitary_rotate(rho, u, tol),
                                                      unitary_rotate(sigma, u, tol), mu, all, tol);
            for (Quantifier q : all)
                unitary_invariance.record(tol.structural - std::abs(rotated.at(q) - values.at(q)));

            const DensityMatrix ancilla = random_state(rng, 2, 0, tol);
            const auto extended = evaluate_quantifiers(tensor(rho, ancilla),
                                                       tensor(sigma, ancilla), mu, all, tol);
            for (Quantifier q : all)
                ancilla_invariance.record(tol.structural - std::abs(extended.at(q) - values.at(q)));
        }

        // Skew symmetries.
        {
            const SkewParam nu = mu.complement();
            symmetry.record(tol.structural -
                            std::abs(k - holevo_skew(sigma, rho, nu, tol)));
            symmetry.record(tol.structural -
                            std::abs(s - quantum_skew(sigma, rho, nu, tol)));
            symmetry.record(tol.structural - std::abs(hel - helstrom(sigma, rho, nu, tol)));
        }

        // Pinsker-like lower bounds.
        pinsker.record(h / (2.0 * m * (1.0 - m)) * k - dist * dist + tol.violation);
        pinsker.record(std::log(m) * std::log(1.0 - m) / (2.0 * m * (1.0 - m) * h) * s -
                       dist * dist + tol.violation);

        // Triangle-like inequalities, their scalar envelopes, and the chain
        // that turns the log bound into the quartic one.
        {
            for (TriangleFamily family :
                 {TriangleFamily::holevo_skew, TriangleFamily::quantum_skew,
                  TriangleFamily::helstrom_symmetrized, TriangleFamily::sqrt_jensen_shannon})
                triangle.record_certificates(
                    check_triangle_like(rho, sigma, tau, mu, family, tol), tol.violation);

            const double d_st = trace_distance(sigma, tau, tol);
            const double k_st = holevo_skew(sigma, tau, mu, tol);
            triangle.record(phi_quartic(k_st, kappa_mu(mu)) - g_mu(d_st, mu) + tol.violation);

            const double x = rng.uniform01();
            triangle.record(std::sqrt(4.0 * m * (1.0 - m)) / h * std::sqrt(x) - g_mu(x, mu) +
                            tol.violation);
            const double y = rng.uniform01();
            triangle.record(phi_quartic(x, kappa_mu(mu)) + phi_quartic(y, kappa_mu(mu)) -
                            phi_quartic(x + y, kappa_mu(mu)) + tol.violation);
        }

        // Mixture-shift and telescoping bounds.
        {
            const auto pair = check_appendix_a(rho, tau, sigma, mu, tol);
            appendix.record_certificates({pair.begin(), pair.end()}, tol.violation);

            la::ComplexMatrix w(dim), x(dim), y(dim);
            if (trial % 2 == 0) {
                for (std::size_t i = 0; i < dim; ++i) {
                    w(i, i) = rng.uniform(0.0, 2.0);
                    x(i, i) = rng.uniform(0.0, 2.0);
                    y(i, i) = rng.uniform(0.0, 2.0);
                }
            } else {
                w = random_positive(rng, dim);
                x = random_positive(rng, dim);
                y = random_positive(rng, dim);
            }
            appendix.record_certificates(check_audenaert(w, x, y, tol), tol.violation);
        }

        // Helstrom weighting identities.
        {
            const DensityMatrix mix = DensityMatrix::validate(
                m * rho.matrix() + (1.0 - m) * sigma.matrix(), tol);
            weighting.record(tol.structural -
                             std::abs(trace_distance(rho, mix, tol) - (1.0 - m) * dist));
            weighting.record(tol.structural -
                             std::abs(trace_distance(sigma, mix, tol) - m * dist));
        }

        // Base independence of the normalized entropic quantifiers.
        {
            const double base_tol = 1e-12;
            base_independence.record(
                base_tol - std::abs(k - holevo_skew(rho, sigma, mu, tol, LogBase::bits)));
            base_independence.record(
                base_tol - std::abs(s - quantum_skew(rho, sigma, mu, tol, LogBase::bits)));
            base_independence.record(
                base_tol - std::abs(j - jensen_shannon(rho, sigma, tol, LogBase::bits)));
        }

        // Dual-path agreement for the Holevo skew divergence.
        dual_path.record(tol.structural -
                         std::abs(holevo_skew(rho, sigma, mu, tol) -
                                  holevo_skew_from_relative_entropies(rho, sigma, mu, tol)));
    }

    PropertyReport report;
    report.seed = seed;
    report.trials = trials;
    for (const FamilyTracker* tracker :
         {&normalization, &contractivity, &unitary_invariance, &ancilla_invariance, &symmetry,
          &pinsker, &triangle, &appendix, &weighting, &base_independence, &dual_path})
        report.families.push_back(tracker->report());
    return report;
}

// ---------------------------------------------------------------------------
// Emission.

namespace {

std::string format_double(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17e", v);
    return buffer;
}

const char* kEntryFields[] = {"value",    "lhs",       "rhs_env", "rhs_corr_rho",
                              "rhs_corr_sigma", "rhs_total", "slack"};

std::vector<double> entry_values(const FigureEntry& e) {
    return {e.value,     e.lhs,       e.rhs_environment, e.rhs_correlation_rho,
            e.rhs_correlation_sigma, e.rhs_total, e.slack};
}

}  // namespace

std::string to_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << "s";
    for (Quantifier q : result.config.quantifiers)
        for (const char* field : kEntryFields) out << ',' << to_string(q) << '_' << field;
    out << '\n';
    for (const FigureRow& row : result.rows) {
        out << format_double(row.s);
        for (const FigureEntry& entry : row.entries)
            for (double v : entry_values(entry)) out << ',' << format_double(v);
        out << '\n';
    }
    return out.str();
}

namespace {

json config_to_json(const ExperimentConfig& config) {
    json quantifiers = json::array();
    for (Quantifier q : config.quantifiers) quantifiers.push_back(std::string(to_string(q)));
    json node{{"model", std::string(to_string(config.model))},
              {"mu", config.mu},
              {"quantifiers", quantifiers},
              {"horizon", config.horizon},
              {"grid_points", config.grid_points},
              {"seed", config.seed},
              {"format", std::string(to_string(config.format))},
              {"general_bounds", config.general_bounds},
              {"threads", config.threads},
              {"mean_coupling", config.mean_coupling}};
    if (config.model == Model::spin_star) {
        node["spin_star"] = json{{"n_env", config.spin_star.n_env},
                                 {"omega_s", config.spin_star.omega_s},
                                 {"omega_e", config.spin_star.omega_e},
                                 {"couplings", config.spin_star.couplings}};
    } else {
        node["jc"] = json{{"g", config.jc.g},
                          {"delta", config.jc.delta},
                          {"beta_omega", config.jc.beta_omega},
                          {"cutoff", config.jc.cutoff}};
    }
    return node;
}

}  // namespace

std::string to_json_text(const ExperimentResult& result) {
    json rows = json::array();
    for (const FigureRow& row : result.rows) {
        json node{{"s", row.s}};
        for (std::size_t qi = 0; qi < result.config.quantifiers.size(); ++qi) {
            const FigureEntry& e = row.entries[qi];
            node[std::string(to_string(result.config.quantifiers[qi]))] =
                json{{"value", e.value},
                     {"lhs", e.lhs},
                     {"rhs_env", e.rhs_environment},
                     {"rhs_corr_rho", e.rhs_correlation_rho},
                     {"rhs_corr_sigma", e.rhs_correlation_sigma},
                     {"rhs_total", e.rhs_total},
                     {"slack", e.slack}};
        }
        rows.push_back(std::move(node));
    }
    json revivals = json::object();
    json min_slack = json::object();
    for (const auto& [q, v] : result.summed_revivals) revivals[std::string(to_string(q))] = v;
    for (const auto& [q, v] : result.min_slack) min_slack[std::string(to_string(q))] = v;

    const json doc{{"library_version", kVersion},
                   {"config", config_to_json(result.config)},
                   {"rows", rows},
                   {"summary", json{{"summed_revivals", revivals},
                                    {"min_slack", min_slack},
                                    {"all_satisfied", result.all_satisfied}}}};
    return doc.dump(2) + "\n";
}

void emit(const ExperimentResult& result, OutputFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit: cannot open '" + path + "' for writing");
    out << (format == OutputFormat::csv ? to_csv(result) : to_json_text(result));
    out.flush();
    if (!out) throw std::runtime_error("emit: write to '" + path + "' failed");
}

}  // namespace backflow
