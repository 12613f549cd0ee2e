// states.hpp: construction and validation of density matrices.

#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "backflow/linalg.hpp"
#include "backflow/tolerances.hpp"

namespace backflow {

// Validated quantum state: Hermitian, unit trace, positive semidefinite
// (eigenvalues above -tol.structural; nothing is clipped). Carries the
// spectrum obtained during validation so downstream spectral functions do not
// re-diagonalize.
class DensityMatrix {
public:
    static DensityMatrix validate(const la::ComplexMatrix& m,
                                  const Tolerances& tol = default_tolerances());

    std::size_t dim() const { return matrix_.dim(); }
    const la::ComplexMatrix& matrix() const { return matrix_; }
    const la::HermitianSpectrum& spectrum() const { return *spectrum_; }

private:
    DensityMatrix(la::ComplexMatrix m, la::HermitianSpectrum s);

    la::ComplexMatrix matrix_;
    std::shared_ptr<const la::HermitianSpectrum> spectrum_;

    friend DensityMatrix tensor(const DensityMatrix&, const DensityMatrix&);
    friend DensityMatrix unitary_rotate(const DensityMatrix&, const la::ComplexMatrix&,
                                        const Tolerances&);
};

// Normalized projector onto a nonzero amplitude vector.
DensityMatrix pure(const std::vector<la::cplx>& amplitudes,
                   const Tolerances& tol = default_tolerances());

// identity(d) / d
DensityMatrix maximally_mixed(std::size_t dim, const Tolerances& tol = default_tolerances());

// Truncated bosonic thermal state parameters.
struct ThermalSpec {
    double beta_omega = 1.0;  // dimensionless beta * omega_E > 0
    std::size_t cutoff = 40;  // max Fock number >= 1
};

// Diagonal Fock state with p_n proportional to exp(-n beta_omega),
// renormalized after truncation at n = cutoff.
DensityMatrix truncated_thermal(const ThermalSpec& spec,
                                const Tolerances& tol = default_tolerances());

// Probability mass the untruncated distribution carries beyond the cutoff.
double thermal_tail_mass(const ThermalSpec& spec);

// Product state a (x) b. The composite spectrum is assembled from the factor
// spectra instead of re-diagonalizing.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// u rho u^dagger for unitary u. Eigenvalues are carried over, eigenvectors
// rotated. Rejects non-unitary u.
DensityMatrix unitary_rotate(const DensityMatrix& rho, const la::ComplexMatrix& u,
                             const Tolerances& tol = default_tolerances());

}  // namespace backflow
