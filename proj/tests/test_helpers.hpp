// Shared helpers for the unit suites.

#pragma once

#include <cmath>
#include <complex>

#include "backflow/linalg.hpp"
#include "backflow/rng.hpp"
#include "backflow/states.hpp"

namespace testutil {

using backflow::Rng;
namespace la = backflow::la;

inline la::ComplexMatrix random_hermitian(Rng& rng, std::size_t dim) {
    la::ComplexMatrix h(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        h(i, i) = rng.gaussian();
        for (std::size_t j = i + 1; j < dim; ++j) {
            const la::cplx z = rng.complex_gaussian();
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    return h;
}

inline la::ComplexMatrix random_traceless_hermitian(Rng& rng, std::size_t dim) {
    la::ComplexMatrix h = random_hermitian(rng, dim);
    const double shift = h.trace().real() / static_cast<double>(dim);
    for (std::size_t i = 0; i < dim; ++i) h(i, i) -= shift;
    return h;
}

inline double max_abs_diff(const la::ComplexMatrix& a, const la::ComplexMatrix& b) {
    return (a - b).max_abs();
}

}  // namespace testutil
