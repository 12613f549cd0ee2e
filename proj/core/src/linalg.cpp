#include "backflow/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace backflow::la {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* who) {
    if (a.dim() != b.dim()) {
        std::ostringstream msg;
        msg << who << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, cplx(0.0, 0.0)) {
    if (dim == 0) throw std::invalid_argument("ComplexMatrix: dimension must be >= 1");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& entries) {
    ComplexMatrix m(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& entries) {
    ComplexMatrix m(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

cplx ComplexMatrix::trace() const {
    cplx t(0.0, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "ComplexMatrix::operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "ComplexMatrix::operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scale) {
    for (cplx& z : data_) z *= scale;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx scale, ComplexMatrix a) { return a *= scale; }
ComplexMatrix operator*(ComplexMatrix a, cplx scale) { return a *= scale; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "ComplexMatrix::operator*");
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            const double ar = aik.real(), ai = aik.imag();
            for (std::size_t j = 0; j < n; ++j) {
                const cplx bkj = b(k, j);
                const double br = bkj.real(), bi = bkj.imag();
                out(i, j) += cplx(ar * br - ai * bi, ar * bi + ai * br);
            }
        }
    }
    return out;
}

ComplexMatrix reconstruct(const HermitianSpectrum& spectrum) {
    const std::size_t n = spectrum.eigenvalues.size();
    const ComplexMatrix& v = spectrum.eigenvectors;
    ComplexMatrix out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = spectrum.eigenvalues[k];
        if (w == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vik = w * v(i, k);
            for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(v(j, k));
        }
    }
    return out;
}

double hermiticity_defect(const ComplexMatrix& m) {
    double defect = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = i; j < m.dim(); ++j)
            defect = std::max(defect, std::abs(m(i, j) - std::conj(m(j, i))));
    return defect;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
}

// One cyclic Jacobi sweep over all (p, q) pairs in fixed row order. The fixed
// order keeps the solver bit-reproducible.
void jacobi_sweep(ComplexMatrix& a, ComplexMatrix& v, double skip) {
    const std::size_t n = a.dim();
    cplx* ad = a.data();
    cplx* vd = v.data();
    for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            const cplx apq = ad[p * n + q];
            const double m = std::abs(apq);
            if (m <= skip) continue;

            const double app = ad[p * n + p].real();
            const double aqq = ad[q * n + q].real();
            const double theta = app - aqq;
            // Smaller-magnitude root of  m t^2 - theta t - m = 0.
            const double t = -2.0 * m / (theta + std::copysign(std::hypot(theta, 2.0 * m), theta));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double sig = t * c;
            const double sr = sig * apq.real() / m;
            const double si = sig * apq.imag() / m;

            // Rows p, q of V^dagger A.
            for (std::size_t k = 0; k < n; ++k) {
                if (k == p || k == q) continue;
                const cplx ap = ad[p * n + k];
                const cplx aq = ad[q * n + k];
                const double apr = ap.real(), api = ap.imag();
                const double aqr = aq.real(), aqi = aq.imag();
                ad[p * n + k] = cplx(c * apr - (sr * aqr - si * aqi), c * api - (sr * aqi + si * aqr));
                ad[q * n + k] = cplx(sr * apr + si * api + c * aqr, sr * api - si * apr + c * aqi);
            }
            // Columns p, q of (V^dagger A) V.
            for (std::size_t k = 0; k < n; ++k) {
                if (k == p || k == q) continue;
                const cplx bp = ad[k * n + p];
                const cplx bq = ad[k * n + q];
                const double bpr = bp.real(), bpi = bp.imag();
                const double bqr = bq.real(), bqi = bq.imag();
                ad[k * n + p] = cplx(c * bpr - (sr * bqr + si * bqi), c * bpi - (sr * bqi - si * bqr));
                ad[k * n + q] = cplx(sr * bpr - si * bpi + c * bqr, sr * bpi + si * bpr + c * bqi);
            }
            // The 2x2 pivot block itself.
            ad[p * n + p] = c * c * app + sig * sig * aqq - 2.0 * m * c * sig;
            ad[q * n + q] = sig * sig * app + c * c * aqq + 2.0 * m * c * sig;
            ad[p * n + q] = cplx(0.0, 0.0);
            ad[q * n + p] = cplx(0.0, 0.0);

            // Accumulate eigenvectors: V_total <- V_total V.
            for (std::size_t k = 0; k < n; ++k) {
                const cplx ep = vd[k * n + p];
                const cplx eq = vd[k * n + q];
                const double epr = ep.real(), epi = ep.imag();
                const double eqr = eq.real(), eqi = eq.imag();
                vd[k * n + p] = cplx(c * epr - (sr * eqr + si * eqi), c * epi - (sr * eqi - si * eqr));
                vd[k * n + q] = cplx(sr * epr - si * epi + c * eqr, sr * epi + si * epr + c * eqi);
            }
        }
    }
}

}  // namespace

HermitianSpectrum eigh(const ComplexMatrix& hermitian, const Tolerances& tol) {
    const std::size_t n = hermitian.dim();
    if (n == 0) throw std::invalid_argument("eigh: empty matrix");

    const double defect = hermiticity_defect(hermitian);
    if (!(defect <= tol.structural)) {
        std::ostringstream msg;
        msg << "eigh: input is not Hermitian, symmetry defect " << defect << " exceeds "
            << tol.structural;
        throw std::invalid_argument(msg.str());
    }

    // Work on the symmetrized copy so roundoff asymmetry cannot leak in.
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = hermitian(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx z = 0.5 * (hermitian(i, j) + std::conj(hermitian(j, i)));
            a(i, j) = z;
            a(j, i) = std::conj(z);
        }
    }

    const double scale = std::max(1.0, a.frobenius_norm());
    const double threshold = tol.solver * scale;
    const double skip = 0.1 * threshold / static_cast<double>(n);

    ComplexMatrix v = ComplexMatrix::identity(n);
    double off = off_diagonal_norm(a);
    int sweeps = 0;
    while (off > threshold) {
        if (sweeps >= tol.max_sweeps) {
            std::ostringstream msg;
            msg << "eigh: no convergence after " << tol.max_sweeps
                << " sweeps, off-diagonal residual " << off;
            throw std::runtime_error(msg.str());
        }
        jacobi_sweep(a, v, skip);
        ++sweeps;
        off = off_diagonal_norm(a);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    HermitianSpectrum spectrum;
    spectrum.eigenvalues.resize(n);
    spectrum.eigenvectors = ComplexMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        spectrum.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) spectrum.eigenvectors(i, k) = v(i, order[k]);
    }
    return spectrum;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t da = a.dim(), db = b.dim();
    ComplexMatrix out(da * db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
        }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const Subsystems& subs, Factor keep) {
    if (subs.system == 0 || subs.environment == 0 || subs.total() != m.dim()) {
        std::ostringstream msg;
        msg << "partial_trace: subsystem dims (" << subs.system << ", " << subs.environment
            << ") inconsistent with matrix dim " << m.dim();
        throw std::invalid_argument(msg.str());
    }
    const std::size_t ds = subs.system, de = subs.environment;
    if (keep == Factor::system) {
        ComplexMatrix out(ds);
        for (std::size_t i = 0; i < ds; ++i)
            for (std::size_t j = 0; j < ds; ++j) {
                cplx sum(0.0, 0.0);
                for (std::size_t e = 0; e < de; ++e) sum += m(i * de + e, j * de + e);
                out(i, j) = sum;
            }
        return out;
    }
    ComplexMatrix out(de);
    for (std::size_t k = 0; k < de; ++k)
        for (std::size_t l = 0; l < de; ++l) {
            cplx sum(0.0, 0.0);
            for (std::size_t s = 0; s < ds; ++s) sum += m(s * de + k, s * de + l);
            out(k, l) = sum;
        }
    return out;
}

double trace_norm(const ComplexMatrix& hermitian, const Tolerances& tol) {
    const HermitianSpectrum spectrum = eigh(hermitian, tol);
    double sum = 0.0;
    for (double w : spectrum.eigenvalues) sum += std::abs(w);
    return sum;
}

namespace {

ComplexMatrix from_spectrum(const HermitianSpectrum& spectrum, const std::vector<double>& weights) {
    HermitianSpectrum scaled{weights, spectrum.eigenvectors};
    return reconstruct(scaled);
}

}  // namespace

std::pair<ComplexMatrix, ComplexMatrix> jordan_parts(const ComplexMatrix& hermitian,
                                                     const Tolerances& tol) {
    const HermitianSpectrum spectrum = eigh(hermitian, tol);
    std::vector<double> plus(spectrum.eigenvalues.size()), minus(spectrum.eigenvalues.size());
    for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
        plus[i] = std::max(spectrum.eigenvalues[i], 0.0);
        minus[i] = std::max(-spectrum.eigenvalues[i], 0.0);
    }
    return {from_spectrum(spectrum, plus), from_spectrum(spectrum, minus)};
}

ComplexMatrix apply_function_on_spectrum(const ComplexMatrix& hermitian,
                                         const std::function<double(double)>& f,
                                         const Tolerances& tol) {
    const HermitianSpectrum spectrum = eigh(hermitian, tol);
    std::vector<double> mapped(spectrum.eigenvalues.size());
    for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
        mapped[i] = f(spectrum.eigenvalues[i]);
        if (!std::isfinite(mapped[i])) {
            std::ostringstream msg;
            msg << "apply_function_on_spectrum: function undefined at eigenvalue "
                << spectrum.eigenvalues[i];
            throw std::domain_error(msg.str());
        }
    }
    return from_spectrum(spectrum, mapped);
}

}  // namespace backflow::la
