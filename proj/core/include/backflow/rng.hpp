// rng.hpp: seeded random matrices, states and channels for the property
// harness. All mappings from raw engine output to doubles are written out
// here, so a seed fixes every draw exactly.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "backflow/linalg.hpp"
#include "backflow/states.hpp"

namespace backflow {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // [0, 1)
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via Box-Muller.
    double gaussian() {
        const double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    la::cplx complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

    std::uint64_t integer(std::uint64_t bound);  // uniform on [0, bound)

private:
    std::mt19937_64 engine_;
};

// dim x dim matrix of iid complex Gaussians.
la::ComplexMatrix random_ginibre(Rng& rng, std::size_t dim);

// Full-rank mixed state G G^dagger / tr (rank columns of Gaussians; rank = 0
// means full rank).
DensityMatrix random_state(Rng& rng, std::size_t dim, std::size_t rank = 0,
                           const Tolerances& tol = default_tolerances());

DensityMatrix random_pure_state(Rng& rng, std::size_t dim,
                                const Tolerances& tol = default_tolerances());

// Haar-ish unitary from Gram-Schmidt on a Ginibre matrix.
la::ComplexMatrix random_unitary(Rng& rng, std::size_t dim);

// Unnormalized positive semidefinite operator G G^dagger.
la::ComplexMatrix random_positive(Rng& rng, std::size_t dim);

// CPTP map as `count` Kraus operators sliced from an orthonormalized
// (count*dim) x dim Gaussian block matrix, so sum K_i^dagger K_i = 1.
std::vector<la::ComplexMatrix> random_kraus_set(Rng& rng, std::size_t dim, std::size_t count);

DensityMatrix apply_channel(const std::vector<la::ComplexMatrix>& kraus, const DensityMatrix& rho,
                            const Tolerances& tol = default_tolerances());

// Pair of states with exactly orthogonal supports, in a random common basis.
std::pair<DensityMatrix, DensityMatrix> random_orthogonal_pair(
    Rng& rng, std::size_t dim, const Tolerances& tol = default_tolerances());

}  // namespace backflow
