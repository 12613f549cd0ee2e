#include "backflow/divergences.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace backflow {

namespace {

double log_scale(LogBase base) { return base == LogBase::nats ? 1.0 : 1.0 / std::log(2.0); }

// -sum lambda ln lambda over positive eigenvalues (0 ln 0 = 0).
double entropy_from_eigenvalues(const std::vector<double>& eigenvalues) {
    double s = 0.0;
    for (double l : eigenvalues)
        if (l > 0.0) s -= l * std::log(l);
    return s;
}

std::vector<std::size_t> support_indices(const la::HermitianSpectrum& s, double threshold) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
        if (s.eigenvalues[i] > threshold) idx.push_back(i);
    return idx;
}

la::cplx column_overlap(const la::ComplexMatrix& u, std::size_t i, const la::ComplexMatrix& v,
                        std::size_t j) {
    la::cplx sum(0.0, 0.0);
    for (std::size_t r = 0; r < u.dim(); ++r) sum += std::conj(u(r, i)) * v(r, j);
    return sum;
}

// Relative entropy in nats from precomputed spectra. a_mat is the matrix whose
// spectrum is spec_a; spec_b belongs to the second argument.
//
// Divergence test: the A-mass on the near-kernel of B, tr(A P), with P the
// projector onto B-eigenvalues at or below tol.support_eigenvalue. An
// unweighted projector overlap would flap on smoothly graded spectra (thermal
// tails crossing the threshold); the mass-weighted defect is what decides
// whether tr(A log B) actually diverges.
ExtendedReal relative_entropy_core(const la::ComplexMatrix& a_mat,
                                   const la::HermitianSpectrum& spec_a,
                                   const la::HermitianSpectrum& spec_b, double trace_b_minus_a,
                                   const Tolerances& tol) {
    const std::size_t n = a_mat.dim();

    // <v_j| A |v_j> for every eigenvector of B.
    std::vector<double> a_diag(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            la::cplx row(0.0, 0.0);
            for (std::size_t c = 0; c < n; ++c) row += a_mat(r, c) * spec_b.eigenvectors(c, j);
            diag += (std::conj(spec_b.eigenvectors(r, j)) * row).real();
        }
        a_diag[j] = std::max(diag, 0.0);
    }

    double kernel_mass = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        if (spec_b.eigenvalues[j] <= tol.support_eigenvalue) kernel_mass += a_diag[j];
    if (kernel_mass > tol.support_overlap) return ExtendedReal::infinity();

    double value = trace_b_minus_a;
    for (double l : spec_a.eigenvalues)
        if (l > 0.0) value += l * std::log(l);
    for (std::size_t j = 0; j < n; ++j)
        if (spec_b.eigenvalues[j] > 0.0) value -= a_diag[j] * std::log(spec_b.eigenvalues[j]);

    if (value < 0.0) {
        if (value < -tol.violation) {
            std::ostringstream msg;
            msg << "relative entropy came out negative (" << value << "), inputs are inconsistent";
            throw std::logic_error(msg.str());
        }
        value = 0.0;
    }
    return ExtendedReal::finite(value);
}

DensityMatrix mixture(const DensityMatrix& rho, const DensityMatrix& sigma, double weight_rho,
                      const Tolerances& tol) {
    la::ComplexMatrix m = weight_rho * rho.matrix() + (1.0 - weight_rho) * sigma.matrix();
    return DensityMatrix::validate(m, tol);
}

// Finite relative entropy to a mixture that contains the first argument.
double relative_entropy_to_mixture(const DensityMatrix& part, const DensityMatrix& mix,
                                   const Tolerances& tol) {
    const ExtendedReal s = relative_entropy(part, mix, tol);
    if (s.is_infinite())
        throw std::logic_error("relative entropy to a mixture diverged; support logic broke");
    return s.value();
}

}  // namespace

SkewParam::SkewParam(double mu) : mu_(mu) {
    if (!(mu > 0.0 && mu < 1.0)) {
        std::ostringstream msg;
        msg << "SkewParam: mu must lie strictly inside (0,1), got " << mu;
        throw std::invalid_argument(msg.str());
    }
}

ExtendedReal ExtendedReal::finite(double v) {
    if (!(v >= 0.0)) throw std::invalid_argument("ExtendedReal: finite values must be >= 0");
    return ExtendedReal(v, false);
}

ExtendedReal ExtendedReal::infinity() { return ExtendedReal(0.0, true); }

double ExtendedReal::value() const {
    if (infinite_) throw std::domain_error("ExtendedReal: value() on infinity");
    return value_;
}

double ExtendedReal::value_or_infinity() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

double von_neumann_entropy(const DensityMatrix& rho, LogBase base) {
    return entropy_from_eigenvalues(rho.spectrum().eigenvalues) * log_scale(base);
}

double binary_entropy(const SkewParam& mu, LogBase base) {
    const double m = mu.mu();
    return (-m * std::log(m) - (1.0 - m) * std::log(1.0 - m)) * log_scale(base);
}

ExtendedReal relative_entropy_general(const la::ComplexMatrix& a, const la::ComplexMatrix& b,
                                      const Tolerances& tol, LogBase base) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("relative_entropy_general: dimension mismatch");
    const la::HermitianSpectrum spec_a = la::eigh(a, tol);
    const la::HermitianSpectrum spec_b = la::eigh(b, tol);
    for (const la::HermitianSpectrum* s : {&spec_a, &spec_b}) {
        if (s->eigenvalues.front() < -tol.structural) {
            std::ostringstream msg;
            msg << "relative_entropy_general: input has negative eigenvalue "
                << s->eigenvalues.front();
            throw std::invalid_argument(msg.str());
        }
    }
    const double trace_diff = (b.trace() - a.trace()).real();
    const ExtendedReal nats = relative_entropy_core(a, spec_a, spec_b, trace_diff, tol);
    if (nats.is_infinite()) return nats;
    return ExtendedReal::finite(nats.value() * log_scale(base));
}

ExtendedReal relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                              const Tolerances& tol, LogBase base) {
    if (rho.dim() != sigma.dim())
        throw std::invalid_argument("relative_entropy: dimension mismatch");
    const double trace_diff = (sigma.matrix().trace() - rho.matrix().trace()).real();
    const ExtendedReal nats =
        relative_entropy_core(rho.matrix(), rho.spectrum(), sigma.spectrum(), trace_diff, tol);
    if (nats.is_infinite()) return nats;
    return ExtendedReal::finite(nats.value() * log_scale(base));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma,
                      const Tolerances& tol) {
    return 0.5 * la::trace_norm(rho.matrix() - sigma.matrix(), tol);
}

double helstrom(const DensityMatrix& rho, const DensityMatrix& sigma, const SkewParam& mu,
                const Tolerances& tol) {
    const double m = mu.mu();
    return la::trace_norm(m * rho.matrix() - (1.0 - m) * sigma.matrix(), tol);
}

double helstrom_symmetrized(const DensityMatrix& rho, const DensityMatrix& sigma,
                            const SkewParam& mu, const Tolerances& tol) {
    return 0.5 * (helstrom(rho, sigma, mu, tol) + helstrom(sigma, rho, mu, tol));
}

double holevo_chi(const DensityMatrix& rho, const DensityMatrix& sigma, const SkewParam& mu,
                  const Tolerances& tol, LogBase base) {
    const double m = mu.mu();
    const DensityMatrix mix = mixture(rho, sigma, m, tol);
    return von_neumann_entropy(mix, base) - m * von_neumann_entropy(rho, base) -
           (1.0 - m) * von_neumann_entropy(sigma, base);
}

double holevo_skew(const DensityMatrix& rho, const DensityMatrix& sigma, const SkewParam& mu,
                   const Tolerances& tol, LogBase base) {
    const double k = holevo_chi(rho, sigma, mu, tol, base) / binary_entropy(mu, base);
#ifndef NDEBUG
    const double second = holevo_skew_from_relative_entropies(rho, sigma, mu, tol, base);
    if (std::abs(second - k) > tol.structural) {
        std::ostringstream msg;
        msg << "holevo_skew: dual-path disagreement " << std::abs(second - k);
        throw std::logic_error(msg.str());
    }
#endif
    return k;
}

double holevo_skew_from_relative_entropies(const DensityMatrix& rho, const DensityMatrix& sigma,
                                           const SkewParam& mu, const Tolerances& tol,
                                           LogBase base) {
    const double m = mu.mu();
    const double scale = log_scale(base);
    const DensityMatrix mix = mixture(rho, sigma, m, tol);
    const double s_rho = relative_entropy_to_mixture(rho, mix, tol) * scale;
    const double s_sigma = relative_entropy_to_mixture(sigma, mix, tol) * scale;
    // The prefactors carry h(mu) and h(1-mu) literally; their equality is a
    // tested property, not an assumption baked in here.
    return m / binary_entropy(mu, base) * s_rho +
           (1.0 - m) / binary_entropy(mu.complement(), base) * s_sigma;
}

double quantum_skew(const DensityMatrix& rho, const DensityMatrix& sigma, const SkewParam& mu,
                    const Tolerances& tol, LogBase base) {
    const double m = mu.mu();
    const double scale = log_scale(base);
    const DensityMatrix mix = mixture(rho, sigma, m, tol);
    const double s_rho = relative_entropy_to_mixture(rho, mix, tol) * scale;
    const double s_sigma = relative_entropy_to_mixture(sigma, mix, tol) * scale;
    return m / (std::log(1.0 / m) * scale) * s_rho +
           (1.0 - m) / (std::log(1.0 / (1.0 - m)) * scale) * s_sigma;
}

double jensen_shannon(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol,
                      LogBase base) {
    const double scale = log_scale(base);
    const DensityMatrix half = mixture(rho, sigma, 0.5, tol);
    const double s_rho = relative_entropy_to_mixture(rho, half, tol) * scale;
    const double s_sigma = relative_entropy_to_mixture(sigma, half, tol) * scale;
    return (s_rho + s_sigma) / (2.0 * std::log(2.0) * scale);
}

double sqrt_jensen_shannon(const DensityMatrix& rho, const DensityMatrix& sigma,
                           const Tolerances& tol) {
    return std::sqrt(std::max(0.0, jensen_shannon(rho, sigma, tol)));
}

bool support_orthogonal(const DensityMatrix& rho, const DensityMatrix& sigma,
                        const Tolerances& tol) {
    if (rho.dim() != sigma.dim())
        throw std::invalid_argument("support_orthogonal: dimension mismatch");
    const std::vector<std::size_t> supp_r =
        support_indices(rho.spectrum(), tol.support_eigenvalue);
    const std::vector<std::size_t> supp_s =
        support_indices(sigma.spectrum(), tol.support_eigenvalue);
    double overlap2 = 0.0;
    for (std::size_t i : supp_r)
        for (std::size_t j : supp_s)
            overlap2 +=
                std::norm(column_overlap(rho.spectrum().eigenvectors, i,
                                         sigma.spectrum().eigenvectors, j));
    return std::sqrt(overlap2) < tol.support_overlap;
}

std::string_view to_string(Quantifier q) {
    switch (q) {
        case Quantifier::trace_distance: return "trace_distance";
        case Quantifier::helstrom: return "helstrom";
        case Quantifier::helstrom_symmetrized: return "helstrom_symmetrized";
        case Quantifier::holevo_skew: return "holevo_skew";
        case Quantifier::quantum_skew: return "quantum_skew";
        case Quantifier::jensen_shannon: return "jensen_shannon";
        case Quantifier::sqrt_jensen_shannon: return "sqrt_jensen_shannon";
    }
    return "unknown";
}

std::optional<Quantifier> quantifier_from_string(std::string_view name) {
    for (Quantifier q : kAllQuantifiers)
        if (to_string(q) == name) return q;
    return std::nullopt;
}

std::map<Quantifier, double> evaluate_quantifiers(const DensityMatrix& rho,
                                                  const DensityMatrix& sigma, const SkewParam& mu,
                                                  const std::vector<Quantifier>& which,
                                                  const Tolerances& tol) {
    if (rho.dim() != sigma.dim())
        throw std::invalid_argument("evaluate_quantifiers: dimension mismatch");
    const double m = mu.mu();
    const bool balanced = m == 0.5;

    std::optional<DensityMatrix> mix;       // mu rho + (1-mu) sigma
    std::optional<DensityMatrix> half;      // (rho + sigma)/2
    std::optional<double> dist;             // trace distance
    std::optional<double> hel_rs, hel_sr;   // Helstrom norms, both orders
    std::optional<double> js;

    auto get_mix = [&]() -> const DensityMatrix& {
        if (!mix) mix = mixture(rho, sigma, m, tol);
        return *mix;
    };
    auto get_half = [&]() -> const DensityMatrix& {
        if (balanced) return get_mix();
        if (!half) half = mixture(rho, sigma, 0.5, tol);
        return *half;
    };
    auto get_dist = [&]() {
        if (!dist) dist = trace_distance(rho, sigma, tol);
        return *dist;
    };
    auto get_helstrom = [&](bool swapped) {
        if (balanced) return get_dist();
        auto& slot = swapped ? hel_sr : hel_rs;
        if (!slot)
            slot = swapped ? helstrom(sigma, rho, mu, tol) : helstrom(rho, sigma, mu, tol);
        return *slot;
    };
    auto get_js = [&]() {
        if (!js) {
            const DensityMatrix& h = get_half();
            const double s_rho = relative_entropy_to_mixture(rho, h, tol);
            const double s_sigma = relative_entropy_to_mixture(sigma, h, tol);
            js = (s_rho + s_sigma) / (2.0 * std::log(2.0));
        }
        return *js;
    };

    std::map<Quantifier, double> out;
    for (Quantifier q : which) {
        double value = 0.0;
        switch (q) {
            case Quantifier::trace_distance:
                value = get_dist();
                break;
            case Quantifier::helstrom:
                value = get_helstrom(false);
                break;
            case Quantifier::helstrom_symmetrized:
                value = 0.5 * (get_helstrom(false) + get_helstrom(true));
                break;
            case Quantifier::holevo_skew: {
                const DensityMatrix& mx = get_mix();
                const double chi = von_neumann_entropy(mx) - m * von_neumann_entropy(rho) -
                                   (1.0 - m) * von_neumann_entropy(sigma);
                value = chi / binary_entropy(mu);
                break;
            }
            case Quantifier::quantum_skew: {
                const DensityMatrix& mx = get_mix();
                const double s_rho = relative_entropy_to_mixture(rho, mx, tol);
                const double s_sigma = relative_entropy_to_mixture(sigma, mx, tol);
                value = m / std::log(1.0 / m) * s_rho +
                        (1.0 - m) / std::log(1.0 / (1.0 - m)) * s_sigma;
                break;
            }
            case Quantifier::jensen_shannon:
                value = get_js();
                break;
            case Quantifier::sqrt_jensen_shannon:
                value = std::sqrt(std::max(0.0, get_js()));
                break;
        }
        out[q] = value;
    }
    return out;
}

}  // namespace backflow
