#include "backflow/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace backflow {

DensityMatrix::DensityMatrix(la::ComplexMatrix m, la::HermitianSpectrum s)
    : matrix_(std::move(m)),
      spectrum_(std::make_shared<const la::HermitianSpectrum>(std::move(s))) {}

DensityMatrix DensityMatrix::validate(const la::ComplexMatrix& m, const Tolerances& tol) {
    struct Defect {
        const char* name;
        double magnitude;
        double tolerance;
    };
    std::vector<Defect> defects;

    const double herm = la::hermiticity_defect(m);
    if (!(herm <= tol.structural)) defects.push_back({"Hermiticity defect", herm, tol.structural});

    if (defects.empty()) {
        la::HermitianSpectrum spectrum = la::eigh(m, tol);

        const double trace_defect = std::abs(m.trace() - la::cplx(1.0, 0.0));
        if (!(trace_defect <= tol.structural))
            defects.push_back({"trace defect", trace_defect, tol.structural});

        const double min_eigenvalue = spectrum.eigenvalues.front();
        if (!(min_eigenvalue >= -tol.structural))
            defects.push_back({"negative eigenvalue", -min_eigenvalue, tol.structural});

        if (defects.empty()) return DensityMatrix(m, std::move(spectrum));
    }

    const Defect worst = *std::max_element(
        defects.begin(), defects.end(),
        [](const Defect& a, const Defect& b) { return a.magnitude / a.tolerance < b.magnitude / b.tolerance; });
    std::ostringstream msg;
    msg << "DensityMatrix::validate: " << worst.name << " " << worst.magnitude << " exceeds "
        << worst.tolerance;
    throw std::invalid_argument(msg.str());
}

DensityMatrix pure(const std::vector<la::cplx>& amplitudes, const Tolerances& tol) {
    if (amplitudes.empty()) throw std::invalid_argument("pure: empty amplitude vector");
    double norm2 = 0.0;
    for (const la::cplx& a : amplitudes) norm2 += std::norm(a);
    if (norm2 <= 0.0) throw std::invalid_argument("pure: zero amplitude vector");

    const std::size_t d = amplitudes.size();
    la::ComplexMatrix m(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            m(i, j) = amplitudes[i] * std::conj(amplitudes[j]) / norm2;
    return DensityMatrix::validate(m, tol);
}

DensityMatrix maximally_mixed(std::size_t dim, const Tolerances& tol) {
    if (dim == 0) throw std::invalid_argument("maximally_mixed: dimension must be >= 1");
    la::ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0 / static_cast<double>(dim);
    return DensityMatrix::validate(m, tol);
}

DensityMatrix truncated_thermal(const ThermalSpec& spec, const Tolerances& tol) {
    if (!(spec.beta_omega > 0.0))
        throw std::invalid_argument("truncated_thermal: beta_omega must be > 0");
    if (spec.cutoff < 1) throw std::invalid_argument("truncated_thermal: cutoff must be >= 1");

    const std::size_t d = spec.cutoff + 1;
    std::vector<double> p(d);
    double total = 0.0;
    for (std::size_t n = 0; n < d; ++n) {
        p[n] = std::exp(-spec.beta_omega * static_cast<double>(n));
        total += p[n];
    }
    la::ComplexMatrix m(d);
    for (std::size_t n = 0; n < d; ++n) m(n, n) = p[n] / total;
    return DensityMatrix::validate(m, tol);
}

double thermal_tail_mass(const ThermalSpec& spec) {
    return std::exp(-spec.beta_omega * static_cast<double>(spec.cutoff + 1));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    const std::size_t da = a.dim(), db = b.dim(), d = da * db;
    la::ComplexMatrix m = la::tensor(a.matrix(), b.matrix());

    // Composite spectrum: eigenvalue products, eigenvector tensor products.
    const la::HermitianSpectrum& sa = a.spectrum();
    const la::HermitianSpectrum& sb = b.spectrum();
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> product(d);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t k = 0; k < db; ++k)
            product[i * db + k] = sa.eigenvalues[i] * sb.eigenvalues[k];
    std::stable_sort(order.begin(), order.end(),
                     [&product](std::size_t x, std::size_t y) { return product[x] < product[y]; });

    la::HermitianSpectrum spectrum;
    spectrum.eigenvalues.resize(d);
    spectrum.eigenvectors = la::ComplexMatrix(d);
    for (std::size_t col = 0; col < d; ++col) {
        const std::size_t i = order[col] / db;
        const std::size_t k = order[col] % db;
        spectrum.eigenvalues[col] = product[order[col]];
        for (std::size_t r = 0; r < da; ++r) {
            const la::cplx va = sa.eigenvectors(r, i);
            for (std::size_t s = 0; s < db; ++s)
                spectrum.eigenvectors(r * db + s, col) = va * sb.eigenvectors(s, k);
        }
    }
    return DensityMatrix(std::move(m), std::move(spectrum));
}

DensityMatrix unitary_rotate(const DensityMatrix& rho, const la::ComplexMatrix& u,
                             const Tolerances& tol) {
    if (u.dim() != rho.dim())
        throw std::invalid_argument("unitary_rotate: dimension mismatch");
    const la::ComplexMatrix gram = u.adjoint() * u;
    const double unitarity_defect = (gram - la::ComplexMatrix::identity(u.dim())).max_abs();
    if (!(unitarity_defect <= tol.structural)) {
        std::ostringstream msg;
        msg << "unitary_rotate: matrix is not unitary, defect " << unitarity_defect;
        throw std::invalid_argument(msg.str());
    }

    la::ComplexMatrix rotated = u * rho.matrix() * u.adjoint();
    la::HermitianSpectrum spectrum;
    spectrum.eigenvalues = rho.spectrum().eigenvalues;
    spectrum.eigenvectors = u * rho.spectrum().eigenvectors;
    return DensityMatrix(std::move(rotated), std::move(spectrum));
}

}  // namespace backflow
