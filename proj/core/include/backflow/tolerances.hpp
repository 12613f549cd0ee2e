// tolerances.hpp: the single knob record for every numerical threshold in the library.

#pragma once

namespace backflow {

// All thresholds used by the linear algebra kernel, the state validators and
// the inequality certificates. Operations take this record as an optional
// trailing argument, so a caller (typically the experiment runner) can tighten
// or relax everything in one place.
struct Tolerances {
    // Structural checks: Hermiticity defect, trace defect, positivity floor,
    // and exact-identity assertions (symmetries, dual-path agreement).
    double structural = 1e-10;

    // Eigensolver convergence: target for the off-diagonal Frobenius norm,
    // relative to max(1, ||A||_F) of the input.
    double solver = 1e-13;

    // Cyclic Jacobi sweep cap before the solver reports non-convergence.
    int max_sweeps = 100;

    // Inequality certificates: slack >= -violation counts as satisfied.
    // Looser than `structural` because bound evaluation chains several
    // spectral computations.
    double violation = 1e-9;

    // Support of a positive operator: eigenvalues above this belong to it.
    double support_eigenvalue = 1e-12;

    // Two support projectors count as orthogonal (or one as contained in the
    // other) when the relevant overlap norm stays below this.
    double support_overlap = 1e-9;
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

}  // namespace backflow
