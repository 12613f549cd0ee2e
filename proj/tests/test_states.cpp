#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "backflow/divergences.hpp"
#include "backflow/rng.hpp"
#include "backflow/states.hpp"
#include "test_helpers.hpp"

using namespace backflow;
using namespace testutil;

TEST_CASE("validate: accepts proper states, names the worst defect") {
    la::ComplexMatrix half = la::ComplexMatrix::identity(2);
    half *= la::cplx(0.5, 0.0);
    CHECK_NOTHROW(DensityMatrix::validate(half));

    CHECK_THROWS_WITH_AS(
        DensityMatrix::validate(la::ComplexMatrix::diagonal(std::vector<double>{1.2, -0.2})),
        doctest::Contains("negative eigenvalue"), std::invalid_argument);

    CHECK_THROWS_WITH_AS(
        DensityMatrix::validate(la::ComplexMatrix::diagonal(std::vector<double>{0.7, 0.7})),
        doctest::Contains("trace defect"), std::invalid_argument);

    la::ComplexMatrix skew(2);
    skew(0, 0) = 0.5;
    skew(1, 1) = 0.5;
    skew(0, 1) = la::cplx(0.0, 0.3);
    skew(1, 0) = la::cplx(0.0, 0.3);
    CHECK_THROWS_WITH_AS(DensityMatrix::validate(skew), doctest::Contains("Hermiticity"),
                         std::invalid_argument);

    // Kraus-generated states are valid by construction.
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto kraus = random_kraus_set(rng, 3, 2);
        CHECK_NOTHROW(apply_channel(kraus, random_state(rng, 3)));
    }
}

TEST_CASE("pure: projectors and the zero-vector error") {
    const DensityMatrix ground = pure({1.0, 0.0});
    CHECK(max_abs_diff(ground.matrix(),
                       la::ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0})) < 1e-14);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const DensityMatrix plus = pure({inv_sqrt2, inv_sqrt2});
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(plus.matrix()(i, j).real() == doctest::Approx(0.5).epsilon(1e-14));

    const DensityMatrix minus = pure({inv_sqrt2, -inv_sqrt2});
    CHECK(minus.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(minus.matrix()(0, 1).real() == doctest::Approx(-0.5).epsilon(1e-14));

    // Unnormalized input is normalized; purity is exactly one.
    Rng rng(4);
    std::vector<la::cplx> v(5);
    for (auto& a : v) a = rng.complex_gaussian();
    const DensityMatrix psi = pure(v);
    CHECK((psi.matrix() * psi.matrix()).trace().real() == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(pure({0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("maximally_mixed: spectrum and entropy") {
    const DensityMatrix two = maximally_mixed(2);
    CHECK(max_abs_diff(two.matrix(),
                       la::ComplexMatrix::diagonal(std::vector<double>{0.5, 0.5})) == 0.0);

    const DensityMatrix five_qubits = maximally_mixed(32);
    CHECK(five_qubits.matrix()(0, 0).real() == doctest::Approx(1.0 / 32.0).epsilon(1e-15));
    CHECK(von_neumann_entropy(five_qubits) == doctest::Approx(std::log(32.0)).epsilon(1e-12));

    CHECK(von_neumann_entropy(maximally_mixed(4)) ==
          doctest::Approx(std::log(4.0)).epsilon(1e-12));
}

TEST_CASE("truncated_thermal: limits, geometric weights, mean occupation") {
    // Zero-temperature limit collapses onto the vacuum.
    const DensityMatrix cold = truncated_thermal({1e6, 10});
    CHECK(cold.matrix()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(cold.matrix()(1, 1)) < 1e-10);

    const DensityMatrix thermal = truncated_thermal({1.0, 40});
    const double p0_expected = (1.0 - std::exp(-1.0)) / (1.0 - std::exp(-41.0));
    CHECK(thermal.matrix()(0, 0).real() == doctest::Approx(p0_expected).epsilon(1e-14));

    // Bose-Einstein mean occupation at beta omega = 1.
    double mean = 0.0;
    for (std::size_t n = 0; n <= 40; ++n)
        mean += static_cast<double>(n) * thermal.matrix()(n, n).real();
    CHECK(std::abs(mean - 1.0 / (std::exp(1.0) - 1.0)) < 1e-6);

    // Diagonal, strictly decreasing weights.
    double off = 0.0;
    for (std::size_t i = 0; i <= 40; ++i)
        for (std::size_t j = 0; j <= 40; ++j)
            if (i != j) off = std::max(off, std::abs(thermal.matrix()(i, j)));
    CHECK(off < 1e-15);
    for (std::size_t n = 0; n < 40; ++n)
        CHECK(thermal.matrix()(n, n).real() > thermal.matrix()(n + 1, n + 1).real());

    CHECK(thermal_tail_mass({1.0, 40}) == doctest::Approx(std::exp(-41.0)).epsilon(1e-12));
    CHECK_THROWS_AS(truncated_thermal({-1.0, 10}), std::invalid_argument);
    CHECK_THROWS_AS(truncated_thermal({1.0, 0}), std::invalid_argument);
}

TEST_CASE("tensor and unitary_rotate carry exact spectra") {
    Rng rng(9);
    const DensityMatrix a = random_state(rng, 3);
    const DensityMatrix b = random_state(rng, 4);

    const DensityMatrix prod = tensor(a, b);
    CHECK(max_abs_diff(prod.matrix(), la::tensor(a.matrix(), b.matrix())) == 0.0);
    // Carried spectrum reconstructs the matrix.
    CHECK(max_abs_diff(la::reconstruct(prod.spectrum()), prod.matrix()) < 1e-12);
    CHECK_NOTHROW(DensityMatrix::validate(prod.matrix()));

    const la::ComplexMatrix u = random_unitary(rng, 12);
    const DensityMatrix rotated = unitary_rotate(prod, u);
    CHECK(max_abs_diff(la::reconstruct(rotated.spectrum()), rotated.matrix()) < 1e-12);
    for (std::size_t i = 0; i < 12; ++i)
        CHECK(rotated.spectrum().eigenvalues[i] == prod.spectrum().eigenvalues[i]);

    CHECK_THROWS_WITH_AS(unitary_rotate(prod, la::cplx(2.0, 0.0) * u),
                         doctest::Contains("not unitary"), std::invalid_argument);
}

TEST_CASE("random generators produce valid objects") {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const la::ComplexMatrix u = random_unitary(rng, 5);
        CHECK(max_abs_diff(u.adjoint() * u, la::ComplexMatrix::identity(5)) < 1e-12);

        const auto kraus = random_kraus_set(rng, 4, 3);
        la::ComplexMatrix sum(4);
        for (const auto& k : kraus) sum += k.adjoint() * k;
        CHECK(max_abs_diff(sum, la::ComplexMatrix::identity(4)) < 1e-12);

        const auto [left, right] = random_orthogonal_pair(rng, 4);
        CHECK(support_orthogonal(left, right));
    }
}
