#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "backflow/linalg.hpp"
#include "backflow/rng.hpp"
#include "test_helpers.hpp"

using namespace backflow;
using namespace testutil;

TEST_CASE("eigh: identity and diagonal inputs") {
    const auto id = la::eigh(la::ComplexMatrix::identity(2));
    CHECK(id.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(id.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));

    const auto diag = la::eigh(la::ComplexMatrix::diagonal(std::vector<double>{3.0, 1.0}));
    CHECK(diag.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(diag.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-14));
    // Eigenvectors are the permuted standard basis.
    CHECK(std::abs(diag.eigenvectors(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(diag.eigenvectors(0, 1)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eigh: reconstruction and orthonormality on random Hermitian matrices") {
    Rng rng(11);
    for (std::size_t dim : {2, 3, 8, 33, 128}) {
        const la::ComplexMatrix h = random_hermitian(rng, dim);
        const auto spectrum = la::eigh(h);

        CHECK(max_abs_diff(la::reconstruct(spectrum), h) < 1e-10);

        const la::ComplexMatrix gram =
            spectrum.eigenvectors.adjoint() * spectrum.eigenvectors;
        CHECK(max_abs_diff(gram, la::ComplexMatrix::identity(dim)) < 1e-10);

        for (std::size_t i = 0; i + 1 < dim; ++i)
            CHECK(spectrum.eigenvalues[i] <= spectrum.eigenvalues[i + 1]);
    }
}

TEST_CASE("eigh: rejects non-Hermitian input with the symmetry defect") {
    la::ComplexMatrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 0.5;
    CHECK_THROWS_WITH_AS(la::eigh(m), doctest::Contains("symmetry defect"),
                         std::invalid_argument);
}

TEST_CASE("tensor: identities, rank-1 diagonals, trace factorization") {
    CHECK(max_abs_diff(la::tensor(la::ComplexMatrix::identity(2), la::ComplexMatrix::identity(3)),
                       la::ComplexMatrix::identity(6)) == 0.0);

    const auto a = la::ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0});
    const auto b = la::ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0});
    CHECK(max_abs_diff(la::tensor(a, b),
                       la::ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0, 0.0, 0.0})) ==
          0.0);

    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const la::ComplexMatrix x = random_ginibre(rng, 3);
        const la::ComplexMatrix y = random_ginibre(rng, 4);
        const la::cplx expected = x.trace() * y.trace();
        CHECK(std::abs(la::tensor(x, y).trace() - expected) < 1e-12 * (1.0 + std::abs(expected)));
    }
}

TEST_CASE("partial_trace: product states, Bell projector, trace preservation") {
    Rng rng(7);
    const DensityMatrix rho = random_state(rng, 3);
    const DensityMatrix tau = random_state(rng, 4);
    const la::Subsystems subs{3, 4};

    const la::ComplexMatrix joint = la::tensor(rho.matrix(), tau.matrix());
    CHECK(max_abs_diff(la::partial_trace(joint, subs, la::Factor::system), rho.matrix()) < 1e-13);
    CHECK(max_abs_diff(la::partial_trace(joint, subs, la::Factor::environment), tau.matrix()) <
          1e-13);

    // Bell projector reduces to the maximally mixed qubit on either side.
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const DensityMatrix bell = pure({inv_sqrt2, 0.0, 0.0, inv_sqrt2});
    const la::ComplexMatrix reduced =
        la::partial_trace(bell.matrix(), la::Subsystems{2, 2}, la::Factor::environment);
    CHECK(max_abs_diff(reduced, la::cplx(0.5, 0.0) * la::ComplexMatrix::identity(2)) < 1e-14);

    // Random global state: reduced trace is 1 and positivity survives.
    const DensityMatrix global = random_state(rng, 12);
    const la::ComplexMatrix part =
        la::partial_trace(global.matrix(), la::Subsystems{3, 4}, la::Factor::system);
    CHECK(std::abs(part.trace().real() - 1.0) < 1e-12);
    CHECK(la::eigh(part).eigenvalues.front() >= -1e-10);

    CHECK_THROWS_AS(la::partial_trace(global.matrix(), la::Subsystems{5, 2}, la::Factor::system),
                    std::invalid_argument);
}

TEST_CASE("trace_norm: examples and norm axioms") {
    CHECK(la::trace_norm(la::ComplexMatrix(3)) == 0.0);
    CHECK(la::trace_norm(la::ComplexMatrix::diagonal(std::vector<double>{0.5, -0.5})) ==
          doctest::Approx(1.0).epsilon(1e-14));

    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const la::ComplexMatrix t = random_traceless_hermitian(rng, 4);
        const auto [plus, minus] = la::jordan_parts(t);
        // Jordan-decomposition route for the same quantity.
        CHECK(la::trace_norm(t) ==
              doctest::Approx(plus.trace().real() + minus.trace().real()).epsilon(1e-12));

        const la::ComplexMatrix u = random_hermitian(rng, 4);
        const la::ComplexMatrix v = random_hermitian(rng, 4);
        CHECK(la::trace_norm(u + v) <= la::trace_norm(u) + la::trace_norm(v) + 1e-10);
        const double scale = rng.uniform(-2.0, 2.0);
        CHECK(la::trace_norm(la::cplx(scale, 0.0) * u) ==
              doctest::Approx(std::abs(scale) * la::trace_norm(u)).epsilon(1e-10));
    }
}

TEST_CASE("jordan_parts: positive inputs, diagonal case, half-norm traces") {
    Rng rng(17);
    const la::ComplexMatrix p = random_positive(rng, 3);
    const auto [p_plus, p_minus] = la::jordan_parts(p);
    CHECK(max_abs_diff(p_plus, p) < 1e-10);
    CHECK(p_minus.max_abs() < 1e-10);

    const auto [d_plus, d_minus] =
        la::jordan_parts(la::ComplexMatrix::diagonal(std::vector<double>{2.0, -3.0}));
    CHECK(max_abs_diff(d_plus, la::ComplexMatrix::diagonal(std::vector<double>{2.0, 0.0})) <
          1e-14);
    CHECK(max_abs_diff(d_minus, la::ComplexMatrix::diagonal(std::vector<double>{0.0, 3.0})) <
          1e-14);

    for (int trial = 0; trial < 20; ++trial) {
        const la::ComplexMatrix t = random_traceless_hermitian(rng, 5);
        const auto [plus, minus] = la::jordan_parts(t);
        CHECK(max_abs_diff(plus - minus, t) < 1e-10);
        CHECK(la::eigh(plus).eigenvalues.front() >= -1e-10);
        CHECK(la::eigh(minus).eigenvalues.front() >= -1e-10);
        // Mutually orthogonal parts.
        CHECK((plus * minus).max_abs() < 1e-10);
        // tr T_+ = tr T_- = ||T||_1 / 2 for traceless T.
        const double half_norm = 0.5 * la::trace_norm(t);
        CHECK(plus.trace().real() == doctest::Approx(half_norm).epsilon(1e-11));
        CHECK(minus.trace().real() == doctest::Approx(half_norm).epsilon(1e-11));
    }
}

TEST_CASE("apply_function_on_spectrum: identity, exponential, square, domain error") {
    Rng rng(19);
    const la::ComplexMatrix h = random_hermitian(rng, 4);
    CHECK(max_abs_diff(la::apply_function_on_spectrum(h, [](double x) { return x; }), h) < 1e-10);

    la::ComplexMatrix zero(1);
    CHECK(max_abs_diff(la::apply_function_on_spectrum(zero, [](double x) { return std::exp(x); }),
                       la::ComplexMatrix::identity(1)) < 1e-14);

    CHECK(max_abs_diff(la::apply_function_on_spectrum(h, [](double x) { return x * x; }), h * h) <
          1e-10);

    const la::ComplexMatrix indefinite =
        la::ComplexMatrix::diagonal(std::vector<double>{1.0, -2.0});
    CHECK_THROWS_WITH_AS(
        la::apply_function_on_spectrum(indefinite, [](double x) { return std::log(x); }),
        doctest::Contains("eigenvalue"), std::domain_error);
}
