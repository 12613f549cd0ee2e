#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "backflow/bounds.hpp"
#include "backflow/models.hpp"
#include "backflow/rng.hpp"
#include "test_helpers.hpp"

using namespace backflow;
using namespace testutil;

TEST_CASE("kappa and varsigma constants") {
    const SkewParam half(0.5);
    const double ln2 = std::log(2.0);
    const double reference = std::pow(2.0 / (ln2 * ln2 * ln2), 0.25);
    CHECK(kappa_mu(half) == doctest::Approx(reference).epsilon(1e-14));
    CHECK(varsigma_mu(half) == doctest::Approx(reference).epsilon(1e-12));
    CHECK(kappa_mu(half) == doctest::Approx(1.565).epsilon(1e-3));

    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const double m = rng.uniform(0.02, 0.98);
        CHECK(kappa_mu(SkewParam(m)) ==
              doctest::Approx(kappa_mu(SkewParam(1.0 - m))).epsilon(1e-13));
        CHECK(varsigma_mu(SkewParam(m)) ==
              doctest::Approx(varsigma_mu(SkewParam(1.0 - m))).epsilon(1e-13));
    }

    // Closed-form check away from the symmetric point.
    const double m = 0.25;
    const double h = -m * std::log(m) - (1.0 - m) * std::log(1.0 - m);
    CHECK(kappa_mu(SkewParam(m)) ==
          doctest::Approx(std::pow(8.0 * m * (1.0 - m) / (h * h * h), 0.25)).epsilon(1e-14));

    // Both constants reach their minimum at mu = 1/2.
    for (double probe : {0.1, 0.25, 0.4, 0.75}) {
        CHECK(kappa_mu(SkewParam(probe)) >= kappa_mu(half) - 1e-12);
        CHECK(varsigma_mu(SkewParam(probe)) >= varsigma_mu(half) - 1e-12);
    }
}

TEST_CASE("g_mu and f_mu envelopes") {
    const SkewParam half(0.5);
    CHECK(g_mu(0.0, half) == 0.0);
    CHECK(f_mu(0.0, half) == 0.0);
    CHECK(g_mu(1.0, half) == doctest::Approx(1.0).epsilon(1e-13));

    CHECK_THROWS_AS(g_mu(-0.1, half), std::invalid_argument);
    CHECK_THROWS_AS(g_mu(1.1, half), std::invalid_argument);
    CHECK_THROWS_AS(f_mu(2.0, half), std::invalid_argument);

    Rng rng(5);
    for (double m : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        const SkewParam mu(m);
        const double h = binary_entropy(mu);
        double previous_f = 0.0;
        for (int i = 1; i <= 10; ++i) {
            const double x = 0.1 * i;
            // f is nonnegative and increasing on the grid.
            const double f = f_mu(x, mu);
            CHECK(f >= previous_f - 1e-12);
            previous_f = f;
            // sqrt envelope of g.
            CHECK(g_mu(x, mu) <= std::sqrt(4.0 * m * (1.0 - m)) / h * std::sqrt(x) + 1e-12);
        }
        // phi_quartic is subadditive.
        for (int trial = 0; trial < 10; ++trial) {
            const double x = rng.uniform01();
            const double y = rng.uniform01();
            CHECK(phi_quartic(x + y, kappa_mu(mu)) <=
                  phi_quartic(x, kappa_mu(mu)) + phi_quartic(y, kappa_mu(mu)) + 1e-12);
        }
    }
}

TEST_CASE("certificate bookkeeping") {
    const BoundCertificate cert =
        make_certificate("demo", 0.25, {{"a", 0.2}, {"b", 0.1}});
    CHECK(cert.rhs_total == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(cert.slack == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(cert.satisfied);

    const BoundCertificate bad = make_certificate("demo", 0.5, {{"a", 0.2}});
    CHECK_FALSE(bad.satisfied);
    CHECK(bad.slack == doctest::Approx(-0.3).epsilon(1e-12));
}

TEST_CASE("triangle-like certificates hold on random triples") {
    Rng rng(7);
    const SkewParam half(0.5);
    const SkewParam quarter(0.25);

    // tau = sigma collapses the lhs to <= 0 with rhs = 0.
    {
        const DensityMatrix rho = random_state(rng, 3);
        const DensityMatrix sigma = random_state(rng, 3);
        for (TriangleFamily family :
             {TriangleFamily::holevo_skew, TriangleFamily::quantum_skew,
              TriangleFamily::helstrom_symmetrized, TriangleFamily::sqrt_jensen_shannon}) {
            for (const BoundCertificate& cert :
                 check_triangle_like(rho, sigma, sigma, half, family)) {
                CHECK(cert.satisfied);
                CHECK(cert.rhs_total <= 1e-6);
            }
        }
    }

    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t dim = 2 + trial % 2;
        const SkewParam& mu = trial % 2 == 0 ? half : quarter;
        const DensityMatrix rho = random_state(rng, dim);
        const DensityMatrix sigma = random_state(rng, dim);
        const DensityMatrix tau = random_state(rng, dim);
        for (TriangleFamily family :
             {TriangleFamily::holevo_skew, TriangleFamily::quantum_skew,
              TriangleFamily::helstrom_symmetrized, TriangleFamily::sqrt_jensen_shannon})
            for (const BoundCertificate& cert : check_triangle_like(rho, sigma, tau, mu, family))
                CHECK(cert.satisfied);

        // The log bound composed with Pinsker is never looser than the quartic
        // bound.
        const double d_st = trace_distance(sigma, tau);
        const double k_st = holevo_skew(sigma, tau, mu);
        CHECK(g_mu(d_st, mu) <= phi_quartic(k_st, kappa_mu(mu)) + 1e-9);
    }

    CHECK_THROWS_AS(check_triangle_like(random_state(rng, 2), random_state(rng, 3),
                                        random_state(rng, 3), half,
                                        TriangleFamily::holevo_skew),
                    std::invalid_argument);
}

TEST_CASE("mixture-shift certificates (appendix pair)") {
    Rng rng(11);
    const SkewParam half(0.5);

    // rho1 = rho2 makes both sides vanish.
    {
        const DensityMatrix rho = random_state(rng, 3);
        const DensityMatrix sigma = random_state(rng, 3);
        const auto pair = check_appendix_a(rho, rho, sigma, half);
        for (const BoundCertificate& cert : pair) {
            CHECK(std::abs(cert.lhs) < 1e-10);
            CHECK(std::abs(cert.rhs_total) < 1e-10);
            CHECK(cert.satisfied);
        }
    }

    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = trial % 2 == 0 ? 2 : 3;
        const SkewParam mu(trial % 2 == 0 ? 0.5 : 0.1);
        const auto pair = check_appendix_a(random_state(rng, dim), random_state(rng, dim),
                                           random_state(rng, dim), mu);
        CHECK(pair[0].satisfied);
        CHECK(pair[1].satisfied);
    }
}

TEST_CASE("telescoping relative-entropy certificates") {
    Rng rng(13);

    // Y = 0: both differences and both bounds vanish.
    {
        const la::ComplexMatrix w = random_positive(rng, 3);
        const la::ComplexMatrix x = random_positive(rng, 3);
        const la::ComplexMatrix zero(3);
        for (const BoundCertificate& cert : check_audenaert(w, x, zero)) {
            CHECK(cert.satisfied);
            CHECK(std::abs(cert.lhs) < 1e-9);
            CHECK(std::abs(cert.rhs_total) < 1e-9);
        }
    }

    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t dim = 2 + trial % 3;
        la::ComplexMatrix w(dim), x(dim), y(dim);
        if (trial % 2 == 0) {
            for (std::size_t i = 0; i < dim; ++i) {
                w(i, i) = rng.uniform(0.0, 2.0);
                x(i, i) = rng.uniform(0.0, 2.0);
                y(i, i) = rng.uniform(0.0, 2.0);
            }
        } else {
            w = random_positive(rng, dim);
            x = random_positive(rng, dim);
            y = random_positive(rng, dim);
        }
        for (const BoundCertificate& cert : check_audenaert(w, x, y)) CHECK(cert.satisfied);
    }
}

namespace {

SnapshotPair product_snapshot(Rng& rng, const DensityMatrix& env) {
    const DensityMatrix rho_s = random_state(rng, 2);
    const DensityMatrix sigma_s = random_state(rng, 2);
    return SnapshotPair::from_joint(tensor(rho_s, env), tensor(sigma_s, env),
                                    la::Subsystems{2, env.dim()});
}

}  // namespace

TEST_CASE("backflow bounds: product snapshots with equal environments give zero rhs") {
    Rng rng(17);
    const SkewParam half(0.5);
    const DensityMatrix env = random_state(rng, 3);
    const SnapshotPair at_s = product_snapshot(rng, env);

    // Evolve both globals with the same random unitary.
    const la::ComplexMatrix u = random_unitary(rng, 6);
    const SnapshotPair at_t = SnapshotPair::from_joint(
        unitary_rotate(at_s.rho_se, u), unitary_rotate(at_s.sigma_se, u), at_s.subs);

    const std::vector<Quantifier> divergences{
        Quantifier::trace_distance, Quantifier::helstrom_symmetrized, Quantifier::holevo_skew,
        Quantifier::quantum_skew,   Quantifier::jensen_shannon,       Quantifier::sqrt_jensen_shannon};

    // The reservoir quantifier values themselves vanish; the quartic-root phi
    // of the entropic families turns that roundoff into ~1e-4, so the sharp
    // statement lives on the raw terms.
    const auto terms = backflow_terms(at_s, half, divergences);
    for (Quantifier q : divergences) {
        // sqrt-JS reservoir values are square roots of roundoff-level J.
        const double term_floor = q == Quantifier::sqrt_jensen_shannon ? 1e-7 : 1e-12;
        CHECK(terms.at(q).environment < term_floor);
        CHECK(terms.at(q).correlation_rho < term_floor);
        CHECK(terms.at(q).correlation_sigma < term_floor);
        const BoundCertificate cert = general_backflow_bound(at_s, at_t, q, half);
        CHECK(cert.satisfied);  // hence lhs <= 0 up to tolerance
        if (q == Quantifier::trace_distance || q == Quantifier::helstrom_symmetrized)
            CHECK(cert.rhs_total < 1e-9);
    }
}

TEST_CASE("backflow bounds: s = t has zero lhs; tight never exceeds general") {
    Rng rng(19);
    const SkewParam quarter(0.25);
    const DensityMatrix env = random_state(rng, 3);
    const SnapshotPair at_s = product_snapshot(rng, env);
    const la::ComplexMatrix u = random_unitary(rng, 6);
    const SnapshotPair at_t = SnapshotPair::from_joint(
        unitary_rotate(at_s.rho_se, u), unitary_rotate(at_s.sigma_se, u), at_s.subs);

    for (Quantifier q : {Quantifier::holevo_skew, Quantifier::quantum_skew}) {
        const BoundCertificate same = tight_bound(at_s, at_s, q, quarter);
        CHECK(same.lhs == 0.0);
        CHECK(same.satisfied);

        const BoundCertificate tight = tight_bound(at_s, at_t, q, quarter);
        const BoundCertificate general = general_backflow_bound(at_s, at_t, q, quarter);
        CHECK(tight.rhs_total <= general.rhs_total + 1e-9);
        CHECK(tight.satisfied);
        CHECK(general.satisfied);
    }

    // Helstrom norm bound evaluates against weighted trace distances.
    const BoundCertificate hel = tight_bound(at_s, at_t, Quantifier::helstrom, quarter);
    CHECK(hel.satisfied);
    CHECK_THROWS_AS(general_backflow_bound(at_s, at_t, Quantifier::helstrom, quarter),
                    std::invalid_argument);

    // Mismatched tensor structure is rejected.
    const SnapshotPair other = product_snapshot(rng, random_state(rng, 2));
    CHECK_THROWS_AS(tight_bound(at_s, other, Quantifier::holevo_skew, quarter),
                    std::invalid_argument);
}

TEST_CASE("backflow bounds hold along random unitary evolutions") {
    Rng rng(23);
    const std::vector<Quantifier> all(kAllQuantifiers,
                                      kAllQuantifiers + std::size(kAllQuantifiers));
    for (int trial = 0; trial < 25; ++trial) {
        const SkewParam mu(trial % 2 == 0 ? 0.5 : 0.25);
        const DensityMatrix env = random_state(rng, 2 + trial % 2);
        const SnapshotPair at_s = product_snapshot(rng, env);
        const la::ComplexMatrix u = random_unitary(rng, at_s.rho_se.dim());
        const SnapshotPair at_t = SnapshotPair::from_joint(
            unitary_rotate(at_s.rho_se, u), unitary_rotate(at_s.sigma_se, u), at_s.subs);
        for (Quantifier q : all) CHECK(tight_bound(at_s, at_t, q, mu).satisfied);
    }
}

TEST_CASE("summed_revivals") {
    CHECK(summed_revivals({3.0, 2.0, 1.0, 0.5}) == 0.0);
    CHECK(summed_revivals({0.0, 1.0, 0.5, 0.8}) == doctest::Approx(1.3).epsilon(1e-15));
    CHECK_THROWS_AS(summed_revivals({1.0}), std::invalid_argument);
}
