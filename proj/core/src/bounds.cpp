#include "backflow/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace backflow {

BoundCertificate make_certificate(std::string inequality_id, double lhs,
                                  std::vector<std::pair<std::string, double>> rhs_terms,
                                  const Tolerances& tol) {
    BoundCertificate cert;
    cert.inequality_id = std::move(inequality_id);
    cert.lhs = lhs;
    cert.rhs_terms = std::move(rhs_terms);
    cert.rhs_total = 0.0;
    for (const auto& [label, value] : cert.rhs_terms) cert.rhs_total += value;
    cert.slack = cert.rhs_total - cert.lhs;
    cert.satisfied = cert.slack >= -tol.violation;
    return cert;
}

double kappa_mu(const SkewParam& mu) {
    const double m = mu.mu();
    const double h = binary_entropy(mu);
    return std::pow(8.0 * m * (1.0 - m) / (h * h * h), 0.25);
}

double varsigma_mu(const SkewParam& mu) {
    const double m = mu.mu();
    const double h = binary_entropy(mu);
    const double log_product = std::log(m) * std::log(1.0 - m);  // > 0
    const double inner = m * (1.0 - m) / (2.0 * h * log_product * log_product * log_product);
    return std::log(1.0 / (m * (1.0 - m))) * std::pow(inner, 0.25);
}

double xlog1p_ratio(double x, double c) {
    if (x < 1e-300) return 0.0;
    return x * std::log1p(c / x);
}

namespace {

void require_unit_interval(double x, const char* who) {
    if (!(x >= 0.0 && x <= 1.0)) {
        std::ostringstream msg;
        msg << who << ": argument " << x << " outside [0,1]";
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

double g_mu(double x, const SkewParam& mu) {
    require_unit_interval(x, "g_mu");
    const double m = mu.mu();
    const double h = binary_entropy(mu);
    return m / h * std::log1p((1.0 - m) / m * x) +
           (1.0 - m) / h * xlog1p_ratio(x, m / (1.0 - m));
}

double f_mu(double x, const SkewParam& mu) {
    require_unit_interval(x, "f_mu");
    const double m = mu.mu();
    return m / std::log(1.0 / m) * std::log1p((1.0 - m) / m * x) +
           (1.0 - m) / std::log(1.0 / (1.0 - m)) * xlog1p_ratio(x, m / (1.0 - m));
}

double phi_quartic(double x, double coefficient) {
    return coefficient * std::pow(std::max(x, 0.0), 0.25);
}

namespace {

void require_equal_dims(std::initializer_list<const DensityMatrix*> states, const char* who) {
    const DensityMatrix* first = *states.begin();
    for (const DensityMatrix* s : states)
        if (s->dim() != first->dim()) {
            std::ostringstream msg;
            msg << who << ": dimension mismatch";
            throw std::invalid_argument(msg.str());
        }
}

}  // namespace

std::vector<BoundCertificate> check_triangle_like(const DensityMatrix& rho,
                                                  const DensityMatrix& sigma,
                                                  const DensityMatrix& tau, const SkewParam& mu,
                                                  TriangleFamily family, const Tolerances& tol) {
    require_equal_dims({&rho, &sigma, &tau}, "check_triangle_like");
    std::vector<BoundCertificate> certs;

    switch (family) {
        case TriangleFamily::holevo_skew: {
            const double d_st = trace_distance(sigma, tau, tol);
            const double k_st = holevo_skew(sigma, tau, mu, tol);
            const double quartic = phi_quartic(k_st, kappa_mu(mu));
            const double lhs = holevo_skew(rho, sigma, mu, tol) - holevo_skew(rho, tau, mu, tol);
            const double lhs_swapped =
                holevo_skew(sigma, rho, mu, tol) - holevo_skew(tau, rho, mu, tol);
            certs.push_back(make_certificate("holevo_triangle_log", lhs,
                                             {{"g_mu(D(sigma,tau))", g_mu(d_st, mu)}}, tol));
            certs.push_back(make_certificate("holevo_triangle_quartic", lhs,
                                             {{"kappa_mu K^(1/4)", quartic}}, tol));
            certs.push_back(make_certificate(
                "holevo_triangle_log_swapped", lhs_swapped,
                {{"g_(1-mu)(D(sigma,tau))", g_mu(d_st, mu.complement())}}, tol));
            certs.push_back(make_certificate("holevo_triangle_quartic_swapped", lhs_swapped,
                                             {{"kappa_mu K^(1/4)", quartic}}, tol));
            break;
        }
        case TriangleFamily::quantum_skew: {
            const double d_st = trace_distance(sigma, tau, tol);
            const double s_st = quantum_skew(sigma, tau, mu, tol);
            const double quartic = phi_quartic(s_st, varsigma_mu(mu));
            const double lhs = quantum_skew(rho, sigma, mu, tol) - quantum_skew(rho, tau, mu, tol);
            const double lhs_swapped =
                quantum_skew(sigma, rho, mu, tol) - quantum_skew(tau, rho, mu, tol);
            certs.push_back(make_certificate("skew_triangle_log", lhs,
                                             {{"f_mu(D(sigma,tau))", f_mu(d_st, mu)}}, tol));
            certs.push_back(make_certificate("skew_triangle_quartic", lhs,
                                             {{"varsigma_mu S^(1/4)", quartic}}, tol));
            certs.push_back(make_certificate(
                "skew_triangle_log_swapped", lhs_swapped,
                {{"f_(1-mu)(D(sigma,tau))", f_mu(d_st, mu.complement())}}, tol));
            certs.push_back(make_certificate("skew_triangle_quartic_swapped", lhs_swapped,
                                             {{"varsigma_mu S^(1/4)", quartic}}, tol));
            break;
        }
        case TriangleFamily::helstrom_symmetrized: {
            const double d_st = trace_distance(sigma, tau, tol);
            const double m = mu.mu();
            certs.push_back(make_certificate(
                "helstrom_shift_first",
                helstrom(rho, sigma, mu, tol) - helstrom(rho, tau, mu, tol),
                {{"2(1-mu) D(sigma,tau)", 2.0 * (1.0 - m) * d_st}}, tol));
            certs.push_back(make_certificate(
                "helstrom_shift_second",
                helstrom(sigma, rho, mu, tol) - helstrom(tau, rho, mu, tol),
                {{"2 mu D(sigma,tau)", 2.0 * m * d_st}}, tol));
            certs.push_back(make_certificate(
                "helstrom_triangle",
                helstrom_symmetrized(rho, sigma, mu, tol) -
                    helstrom_symmetrized(rho, tau, mu, tol),
                {{"H_mu(sigma,tau)", helstrom_symmetrized(sigma, tau, mu, tol)}}, tol));
            break;
        }
        case TriangleFamily::sqrt_jensen_shannon: {
            certs.push_back(make_certificate(
                "sqrt_js_triangle",
                sqrt_jensen_shannon(rho, sigma, tol) - sqrt_jensen_shannon(rho, tau, tol),
                {{"sqrt J(sigma,tau)", sqrt_jensen_shannon(sigma, tau, tol)}}, tol));
            break;
        }
    }
    return certs;
}

namespace {

double finite_relative_entropy(const DensityMatrix& a, const DensityMatrix& b,
                               const Tolerances& tol, const char* who) {
    const ExtendedReal s = relative_entropy(a, b, tol);
    if (s.is_infinite()) {
        std::ostringstream msg;
        msg << who << ": relative entropy to a mixture diverged";
        throw std::logic_error(msg.str());
    }
    return s.value();
}

DensityMatrix mix_states(const DensityMatrix& a, const DensityMatrix& b, double weight_a,
                         const Tolerances& tol) {
    return DensityMatrix::validate(weight_a * a.matrix() + (1.0 - weight_a) * b.matrix(), tol);
}

}  // namespace

std::array<BoundCertificate, 2> check_appendix_a(const DensityMatrix& rho1,
                                                 const DensityMatrix& rho2,
                                                 const DensityMatrix& sigma, const SkewParam& mu,
                                                 const Tolerances& tol) {
    require_equal_dims({&rho1, &rho2, &sigma}, "check_appendix_a");
    const double m = mu.mu();
    const double d12 = trace_distance(rho1, rho2, tol);

    const DensityMatrix mix_s1 = mix_states(sigma, rho1, m, tol);
    const DensityMatrix mix_s2 = mix_states(sigma, rho2, m, tol);
    const double lhs_first = finite_relative_entropy(sigma, mix_s1, tol, "check_appendix_a") -
                             finite_relative_entropy(sigma, mix_s2, tol, "check_appendix_a");

    const DensityMatrix mix_1s = mix_states(rho1, sigma, m, tol);
    const DensityMatrix mix_2s = mix_states(rho2, sigma, m, tol);
    const double lhs_second = finite_relative_entropy(rho1, mix_1s, tol, "check_appendix_a") -
                              finite_relative_entropy(rho2, mix_2s, tol, "check_appendix_a");

    return {make_certificate("mixture_shift_first", lhs_first,
                             {{"log(1 + (1-mu)/mu D)", std::log1p((1.0 - m) / m * d12)}}, tol),
            make_certificate("mixture_shift_second", lhs_second,
                             {{"D log(1 + (1-mu)/(mu D))",
                               xlog1p_ratio(d12, (1.0 - m) / m)}},
                             tol)};
}

std::vector<BoundCertificate> check_audenaert(const la::ComplexMatrix& w,
                                              const la::ComplexMatrix& x,
                                              const la::ComplexMatrix& y, const Tolerances& tol) {
    if (w.dim() != x.dim() || w.dim() != y.dim())
        throw std::invalid_argument("check_audenaert: dimension mismatch");
    const double tr_w = w.trace().real();
    const double tr_y = y.trace().real();

    auto rel = [&](const la::ComplexMatrix& a, const la::ComplexMatrix& b) {
        const ExtendedReal s = relative_entropy_general(a, b, tol);
        if (s.is_infinite())
            throw std::logic_error("check_audenaert: relative entropy diverged on nested supports");
        return s.value();
    };

    // First pair: the trace corrections of S(W, W+X) and S(W, W+X+Y) differ by
    // tr Y, so the certified difference carries it back.
    const double diff_first = rel(w, w + x) - rel(w, w + x + y) + tr_y;
    // Second pair: both corrections equal tr W and cancel.
    const double diff_second = rel(x, x + w) - rel(x + y, x + y + w);

    std::vector<BoundCertificate> certs;
    certs.push_back(make_certificate("audenaert_first_lower", 0.0,
                                     {{"S(W,W+X) - S(W,W+X+Y) + tr Y", diff_first}}, tol));
    certs.push_back(make_certificate("audenaert_first_upper", diff_first,
                                     {{"tr W log(1 + trY/trW)", xlog1p_ratio(tr_w, tr_y)}}, tol));
    certs.push_back(make_certificate("audenaert_second_lower", 0.0,
                                     {{"S(X,X+W) - S(X+Y,X+Y+W)", diff_second}}, tol));
    certs.push_back(make_certificate("audenaert_second_upper", diff_second,
                                     {{"tr Y log(1 + trW/trY)", xlog1p_ratio(tr_y, tr_w)}}, tol));
    return certs;
}

SnapshotPair SnapshotPair::from_joint(DensityMatrix rho_se, DensityMatrix sigma_se,
                                      la::Subsystems subs, const Tolerances& tol) {
    if (subs.total() != rho_se.dim() || subs.total() != sigma_se.dim())
        throw std::invalid_argument("SnapshotPair: tensor structure inconsistent with states");
    DensityMatrix rho_s = DensityMatrix::validate(
        la::partial_trace(rho_se.matrix(), subs, la::Factor::system), tol);
    DensityMatrix sigma_s = DensityMatrix::validate(
        la::partial_trace(sigma_se.matrix(), subs, la::Factor::system), tol);
    DensityMatrix rho_e = DensityMatrix::validate(
        la::partial_trace(rho_se.matrix(), subs, la::Factor::environment), tol);
    DensityMatrix sigma_e = DensityMatrix::validate(
        la::partial_trace(sigma_se.matrix(), subs, la::Factor::environment), tol);
    return SnapshotPair{std::move(rho_se), std::move(sigma_se), subs,
                        std::move(rho_s),  std::move(sigma_s),  std::move(rho_e),
                        std::move(sigma_e)};
}

Quantifier backflow_term_quantifier(Quantifier q) {
    // The Helstrom bounds are written in terms of the trace distance of the
    // reservoir pairs; every other bound reuses its own quantifier.
    if (q == Quantifier::helstrom || q == Quantifier::trace_distance)
        return Quantifier::trace_distance;
    return q;
}

std::map<Quantifier, BackflowTerms> backflow_terms(const SnapshotPair& snapshot,
                                                   const SkewParam& mu,
                                                   const std::vector<Quantifier>& needed,
                                                   const Tolerances& tol) {
    std::set<Quantifier> raw;
    for (Quantifier q : needed) raw.insert(backflow_term_quantifier(q));
    const std::vector<Quantifier> raw_list(raw.begin(), raw.end());

    const DensityMatrix product_rho = tensor(snapshot.rho_s, snapshot.rho_e);
    const DensityMatrix product_sigma = tensor(snapshot.sigma_s, snapshot.sigma_e);

    const auto env = evaluate_quantifiers(snapshot.rho_e, snapshot.sigma_e, mu, raw_list, tol);
    const auto corr_rho = evaluate_quantifiers(snapshot.rho_se, product_rho, mu, raw_list, tol);
    const auto corr_sigma =
        evaluate_quantifiers(snapshot.sigma_se, product_sigma, mu, raw_list, tol);

    std::map<Quantifier, BackflowTerms> out;
    for (Quantifier q : needed) {
        const Quantifier r = backflow_term_quantifier(q);
        out[q] = BackflowTerms{env.at(r), corr_rho.at(r), corr_sigma.at(r)};
    }
    return out;
}

BoundCertificate assemble_backflow_certificate(Quantifier q, const SkewParam& mu,
                                               BoundVariant variant, double lhs,
                                               const BackflowTerms& terms,
                                               const Tolerances& tol) {
    const double m = mu.mu();
    const std::string id = std::string(variant == BoundVariant::tight ? "tight_backflow:"
                                                                      : "general_backflow:") +
                           std::string(to_string(q));

    std::vector<std::pair<std::string, double>> rhs;
    switch (q) {
        case Quantifier::trace_distance:
            rhs = {{"environment", terms.environment},
                   {"correlation_rho", terms.correlation_rho},
                   {"correlation_sigma", terms.correlation_sigma}};
            break;
        case Quantifier::helstrom:
            if (variant == BoundVariant::general)
                throw std::invalid_argument(
                    "assemble_backflow_certificate: the Helstrom norm is not a divergence; only "
                    "the weighted trace-distance bound applies");
            rhs = {{"environment", 2.0 * std::min(m, 1.0 - m) * terms.environment},
                   {"correlation_rho", 2.0 * m * terms.correlation_rho},
                   {"correlation_sigma", 2.0 * (1.0 - m) * terms.correlation_sigma}};
            break;
        case Quantifier::helstrom_symmetrized:
        case Quantifier::sqrt_jensen_shannon:
            // phi(x) = x, so the tight and general forms coincide.
            rhs = {{"environment", terms.environment},
                   {"correlation_rho", terms.correlation_rho},
                   {"correlation_sigma", terms.correlation_sigma}};
            break;
        case Quantifier::holevo_skew:
        case Quantifier::quantum_skew:
        case Quantifier::jensen_shannon: {
            double coeff = 0.0;
            if (q == Quantifier::holevo_skew) coeff = kappa_mu(mu);
            else if (q == Quantifier::quantum_skew) coeff = varsigma_mu(mu);
            else coeff = kappa_mu(SkewParam(0.5));  // J = K at mu = 1/2
            const double env_term =
                variant == BoundVariant::tight
                    ? phi_quartic(terms.environment, coeff)
                    : phi_quartic(phi_quartic(terms.environment, coeff), coeff);
            rhs = {{"environment", env_term},
                   {"correlation_rho", phi_quartic(terms.correlation_rho, coeff)},
                   {"correlation_sigma", phi_quartic(terms.correlation_sigma, coeff)}};
            break;
        }
    }
    return make_certificate(id, lhs, std::move(rhs), tol);
}

BoundCertificate backflow_bound(const SnapshotPair& at_s, const SnapshotPair& at_t, Quantifier q,
                                const SkewParam& mu, BoundVariant variant, const Tolerances& tol) {
    if (at_s.subs.system != at_t.subs.system || at_s.subs.environment != at_t.subs.environment)
        throw std::invalid_argument("backflow_bound: snapshots have different tensor structure");
    const std::vector<Quantifier> single{q};
    const double value_s = evaluate_quantifiers(at_s.rho_s, at_s.sigma_s, mu, single, tol).at(q);
    const double value_t = evaluate_quantifiers(at_t.rho_s, at_t.sigma_s, mu, single, tol).at(q);
    const BackflowTerms terms = backflow_terms(at_s, mu, single, tol).at(q);
    return assemble_backflow_certificate(q, mu, variant, value_t - value_s, terms, tol);
}

BoundCertificate general_backflow_bound(const SnapshotPair& at_s, const SnapshotPair& at_t,
                                        Quantifier q, const SkewParam& mu, const Tolerances& tol) {
    return backflow_bound(at_s, at_t, q, mu, BoundVariant::general, tol);
}

BoundCertificate tight_bound(const SnapshotPair& at_s, const SnapshotPair& at_t, Quantifier q,
                             const SkewParam& mu, const Tolerances& tol) {
    return backflow_bound(at_s, at_t, q, mu, BoundVariant::tight, tol);
}

double summed_revivals(const std::vector<double>& series) {
    if (series.size() < 2)
        throw std::invalid_argument("summed_revivals: need at least two samples");
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < series.size(); ++i)
        total += std::max(0.0, series[i + 1] - series[i]);
    return total;
}

}  // namespace backflow
