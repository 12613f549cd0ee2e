// bounds.hpp: both sides of every inequality in the framework, evaluated into
// machine-checkable certificates, plus the scalar envelope functions and
// constants that appear on the right hand sides.

#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "backflow/divergences.hpp"
#include "backflow/states.hpp"

namespace backflow {

// One inequality instance: lhs <= sum(rhs_terms) up to the violation
// tolerance.
struct BoundCertificate {
    std::string inequality_id;
    double lhs = 0.0;
    std::vector<std::pair<std::string, double>> rhs_terms;
    double rhs_total = 0.0;              // sum of rhs_terms
    double slack = 0.0;                  // rhs_total - lhs
    bool satisfied = false;              // slack >= -tol.violation
};

BoundCertificate make_certificate(std::string inequality_id, double lhs,
                                  std::vector<std::pair<std::string, double>> rhs_terms,
                                  const Tolerances& tol = default_tolerances());

// ---------------------------------------------------------------------------
// Scalar right-hand-side machinery.

// (8 mu (1-mu) / h^3(mu))^{1/4}, minimal at mu = 1/2 where it equals
// (2 / ln^3 2)^{1/4} ~ 1.565.
double kappa_mu(const SkewParam& mu);

// log(1/(mu(1-mu))) * (mu(1-mu) / (2 h(mu) ln^3(mu) ln^3(1-mu)))^{1/4};
// coincides with kappa_mu at mu = 1/2.
double varsigma_mu(const SkewParam& mu);

// x log(1 + c/x) extended continuously by 0 at x = 0.
double xlog1p_ratio(double x, double c);

// Envelope of the Holevo-skew triangle defect as a function of the trace
// distance; domain [0, 1], g_mu(0) = 0.
double g_mu(double x, const SkewParam& mu);

// Same for the quantum skew divergence.
double f_mu(double x, const SkewParam& mu);

// coefficient * x^{1/4}; the concave phi of the quartic-root triangle-like
// inequalities.
double phi_quartic(double x, double coefficient);

// ---------------------------------------------------------------------------
// Randomized-harness inequality checks.

enum class TriangleFamily { holevo_skew, quantum_skew, helstrom_symmetrized, sqrt_jensen_shannon };

// Triangle-like inequalities for the selected family on a state triple.
// K family: K(rho,sigma) - K(rho,tau) <= g_mu(D(sigma,tau)) and
//           <= kappa_mu K(sigma,tau)^{1/4}, plus the swapped-argument pair
//           (whose log bound carries g_{1-mu}).
// S family: the same shape with f_mu and varsigma_mu.
// H family: the two Helstrom shift lemmas and the triangle inequality for the
//           symmetrized norm.
// sqrt-JS:  the exact triangle inequality.
std::vector<BoundCertificate> check_triangle_like(const DensityMatrix& rho,
                                                  const DensityMatrix& sigma,
                                                  const DensityMatrix& tau, const SkewParam& mu,
                                                  TriangleFamily family,
                                                  const Tolerances& tol = default_tolerances());

// Relative-entropy difference bounds for mixtures with a common state:
// S(sigma, mu sigma + (1-mu) rho1) - S(sigma, mu sigma + (1-mu) rho2)
//   <= log(1 + (1-mu)/mu D(rho1,rho2))                      [first]
// S(rho1, mu rho1 + (1-mu) sigma) - S(rho2, mu rho2 + (1-mu) sigma)
//   <= D log(1 + (1-mu)/(mu D))                             [second]
std::array<BoundCertificate, 2> check_appendix_a(const DensityMatrix& rho1,
                                                 const DensityMatrix& rho2,
                                                 const DensityMatrix& sigma, const SkewParam& mu,
                                                 const Tolerances& tol = default_tolerances());

// Telescoping relative-entropy inequalities for positive operators W, X, Y.
// The printed two-sided bounds hold for the log part of the relative entropy;
// with the trace-corrected definition used here the correction cancels only
// in the second pair, so the first pair carries the compensating tr Y term.
// Returns {first_lower, first_upper, second_lower, second_upper}.
std::vector<BoundCertificate> check_audenaert(const la::ComplexMatrix& w,
                                              const la::ComplexMatrix& x,
                                              const la::ComplexMatrix& y,
                                              const Tolerances& tol = default_tolerances());

// ---------------------------------------------------------------------------
// Information-backflow bounds along global trajectories.

// Two global states on S (x) E at one instant, with their reductions.
struct SnapshotPair {
    DensityMatrix rho_se;
    DensityMatrix sigma_se;
    la::Subsystems subs;
    DensityMatrix rho_s;
    DensityMatrix sigma_s;
    DensityMatrix rho_e;
    DensityMatrix sigma_e;

    static SnapshotPair from_joint(DensityMatrix rho_se, DensityMatrix sigma_se,
                                   la::Subsystems subs,
                                   const Tolerances& tol = default_tolerances());
};

enum class BoundVariant { tight, general };

// Quantifier values of the three information reservoirs at one snapshot:
// environment pair, and each global state against the product of its own
// reductions.
struct BackflowTerms {
    double environment = 0.0;
    double correlation_rho = 0.0;
    double correlation_sigma = 0.0;
};

// Which raw quantifier feeds the rhs terms of the bound certified for q.
Quantifier backflow_term_quantifier(Quantifier q);

// Batched raw-term evaluation; one shared-spectra pass per reservoir pair.
std::map<Quantifier, BackflowTerms> backflow_terms(const SnapshotPair& snapshot,
                                                   const SkewParam& mu,
                                                   const std::vector<Quantifier>& needed,
                                                   const Tolerances& tol = default_tolerances());

// Certificate for quantifier q given the open-system variation lhs and the
// raw reservoir terms at the earlier time.
BoundCertificate assemble_backflow_certificate(Quantifier q, const SkewParam& mu,
                                               BoundVariant variant, double lhs,
                                               const BackflowTerms& terms,
                                               const Tolerances& tol = default_tolerances());

// One-shot variants. `at_t` must be the same tensor structure evolved to the
// later time; lhs is the quantifier variation between the two snapshots'
// reduced pairs.
BoundCertificate backflow_bound(const SnapshotPair& at_s, const SnapshotPair& at_t, Quantifier q,
                                const SkewParam& mu, BoundVariant variant,
                                const Tolerances& tol = default_tolerances());

// phi-composition bound from the defining properties alone.
BoundCertificate general_backflow_bound(const SnapshotPair& at_s, const SnapshotPair& at_t,
                                        Quantifier q, const SkewParam& mu,
                                        const Tolerances& tol = default_tolerances());

// Family-specific tighter bounds (quartic-root forms for the entropic
// quantifiers, weighted trace distances for the Helstrom norm, plain sums for
// the sqrt Jensen-Shannon distance).
BoundCertificate tight_bound(const SnapshotPair& at_s, const SnapshotPair& at_t, Quantifier q,
                             const SkewParam& mu, const Tolerances& tol = default_tolerances());

// Sum of positive increments over a time-ordered series.
double summed_revivals(const std::vector<double>& series);

}  // namespace backflow
