// divergences.hpp: distinguishability quantifiers between quantum states.
// Trace distance, Helstrom norm, Holevo skew divergence, quantum skew
// divergence, Jensen-Shannon divergence and relatives. Entropic quantities
// are in nats internally; bits are a presentation option whose normalizing
// prefactors must cancel out of every normalized quantifier.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "backflow/states.hpp"
#include "backflow/tolerances.hpp"

namespace backflow {

// Mixing weight mu in the open interval (0,1). The endpoints are excluded:
// they give the null quantifier.
class SkewParam {
public:
    explicit SkewParam(double mu);
    double mu() const { return mu_; }
    SkewParam complement() const { return SkewParam(1.0 - mu_); }

private:
    double mu_;
};

// Nonnegative value or a distinguished +infinity.
class ExtendedReal {
public:
    static ExtendedReal finite(double v);
    static ExtendedReal infinity();

    bool is_infinite() const { return infinite_; }
    // Finite payload; throws for the infinite case.
    double value() const;
    // Finite payload or std::numeric_limits<double>::infinity().
    double value_or_infinity() const;

private:
    ExtendedReal(double v, bool inf) : value_(v), infinite_(inf) {}
    double value_ = 0.0;
    bool infinite_ = false;
};

enum class LogBase { nats, bits };

// -S sum lambda log lambda with 0 log 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho, LogBase base = LogBase::nats);

// Shannon entropy of {mu, 1-mu}.
double binary_entropy(const SkewParam& mu, LogBase base = LogBase::nats);

// tr(A log A) - tr(A log B) + tr(B - A) on the supports; +infinity when the
// support of A is not contained in the support of B. Inputs must be positive
// semidefinite within tol.structural.
ExtendedReal relative_entropy_general(const la::ComplexMatrix& a, const la::ComplexMatrix& b,
                                      const Tolerances& tol = default_tolerances(),
                                      LogBase base = LogBase::nats);

// Specialization to unit-trace states (the trace correction vanishes).
ExtendedReal relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                              const Tolerances& tol = default_tolerances(),
                              LogBase base = LogBase::nats);

// (1/2) || rho - sigma ||_1, in [0, 1].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma,
                      const Tolerances& tol = default_tolerances());

// || mu rho - (1-mu) sigma ||_1, in [|2 mu - 1|, 1].
double helstrom(const DensityMatrix& rho, const DensityMatrix& sigma, const SkewParam& mu,
                const Tolerances& tol = default_tolerances());

// (D_mu(rho, sigma) + D_mu(sigma, rho)) / 2; lower bounded by the trace
// distance.
double helstrom_symmetrized(const DensityMatrix& rho, const DensityMatrix& sigma,
                            const SkewParam& mu, const Tolerances& tol = default_tolerances());

// S(mu rho + (1-mu) sigma) - mu S(rho) - (1-mu) S(sigma), in [0, h(mu)].
double holevo_chi(const DensityMatrix& rho, const DensityMatrix& sigma, const SkewParam& mu,
                  const Tolerances& tol = default_tolerances(), LogBase base = LogBase::nats);

// chi_mu / h(mu), in [0, 1]. In debug builds this cross-checks against the
// weighted relative-entropy route and refuses to disagree with it.
double holevo_skew(const DensityMatrix& rho, const DensityMatrix& sigma, const SkewParam& mu,
                   const Tolerances& tol = default_tolerances(), LogBase base = LogBase::nats);

// Second evaluation route for the Holevo skew divergence:
// mu/h(mu) S(rho, mix) + (1-mu)/h(1-mu) S(sigma, mix). Kept as an
// independently coded path; agreement with holevo_skew is asserted by tests.
double holevo_skew_from_relative_entropies(const DensityMatrix& rho, const DensityMatrix& sigma,
                                           const SkewParam& mu,
                                           const Tolerances& tol = default_tolerances(),
                                           LogBase base = LogBase::nats);

// mu/log(1/mu) S(rho, mix) + (1-mu)/log(1/(1-mu)) S(sigma, mix), in [0, 1].
// Finite for every pair of states.
double quantum_skew(const DensityMatrix& rho, const DensityMatrix& sigma, const SkewParam& mu,
                    const Tolerances& tol = default_tolerances(), LogBase base = LogBase::nats);

// [S(rho, (rho+sigma)/2) + S(sigma, (rho+sigma)/2)] / (2 log 2), in [0, 1].
double jensen_shannon(const DensityMatrix& rho, const DensityMatrix& sigma,
                      const Tolerances& tol = default_tolerances(), LogBase base = LogBase::nats);

// sqrt of the above; a distance on states.
double sqrt_jensen_shannon(const DensityMatrix& rho, const DensityMatrix& sigma,
                           const Tolerances& tol = default_tolerances());

// True iff the support projectors overlap less than tol.support_overlap in
// Frobenius norm (support = eigenvalues above tol.support_eigenvalue).
bool support_orthogonal(const DensityMatrix& rho, const DensityMatrix& sigma,
                        const Tolerances& tol = default_tolerances());

// ---------------------------------------------------------------------------
// Batched evaluation sharing spectra across quantifiers of one state pair.

enum class Quantifier {
    trace_distance,
    helstrom,
    helstrom_symmetrized,
    holevo_skew,
    quantum_skew,
    jensen_shannon,
    sqrt_jensen_shannon,
};

inline constexpr Quantifier kAllQuantifiers[] = {
    Quantifier::trace_distance,       Quantifier::helstrom,
    Quantifier::helstrom_symmetrized, Quantifier::holevo_skew,
    Quantifier::quantum_skew,         Quantifier::jensen_shannon,
    Quantifier::sqrt_jensen_shannon,
};

std::string_view to_string(Quantifier q);
std::optional<Quantifier> quantifier_from_string(std::string_view name);

// Evaluates the selected quantifiers on one pair. The eigendecompositions of
// rho, sigma, the mu-mixture, the half mixture and the Helstrom differences
// are computed at most once each.
std::map<Quantifier, double> evaluate_quantifiers(const DensityMatrix& rho,
                                                  const DensityMatrix& sigma, const SkewParam& mu,
                                                  const std::vector<Quantifier>& which,
                                                  const Tolerances& tol = default_tolerances());

}  // namespace backflow
