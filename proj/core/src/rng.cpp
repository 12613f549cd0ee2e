#include "backflow/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace backflow {

std::uint64_t Rng::integer(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::integer: bound must be > 0");
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

la::ComplexMatrix random_ginibre(Rng& rng, std::size_t dim) {
    la::ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.complex_gaussian();
    return g;
}

DensityMatrix random_state(Rng& rng, std::size_t dim, std::size_t rank, const Tolerances& tol) {
    if (dim == 0) throw std::invalid_argument("random_state: dimension must be >= 1");
    if (rank == 0) rank = dim;

    std::vector<std::vector<la::cplx>> cols(rank, std::vector<la::cplx>(dim));
    for (auto& col : cols)
        for (auto& entry : col) entry = rng.complex_gaussian();

    la::ComplexMatrix m(dim);
    double trace = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            la::cplx sum(0.0, 0.0);
            for (std::size_t k = 0; k < rank; ++k) sum += cols[k][i] * std::conj(cols[k][j]);
            m(i, j) = sum;
        }
        trace += m(i, i).real();
    }
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) /= trace;
    return DensityMatrix::validate(m, tol);
}

DensityMatrix random_pure_state(Rng& rng, std::size_t dim, const Tolerances& tol) {
    std::vector<la::cplx> v(dim);
    for (auto& a : v) a = rng.complex_gaussian();
    return pure(v, tol);
}

namespace {

// Modified Gram-Schmidt on the columns of a rows x cols block of vectors.
void orthonormalize_columns(std::vector<std::vector<la::cplx>>& cols) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            la::cplx proj(0.0, 0.0);
            for (std::size_t r = 0; r < cols[j].size(); ++r)
                proj += std::conj(cols[k][r]) * cols[j][r];
            for (std::size_t r = 0; r < cols[j].size(); ++r) cols[j][r] -= proj * cols[k][r];
        }
        double norm2 = 0.0;
        for (const la::cplx& z : cols[j]) norm2 += std::norm(z);
        if (norm2 <= 0.0)
            throw std::runtime_error("orthonormalize_columns: rank-deficient Gaussian draw");
        const double inv = 1.0 / std::sqrt(norm2);
        for (la::cplx& z : cols[j]) z *= inv;
    }
}

}  // namespace

la::ComplexMatrix random_unitary(Rng& rng, std::size_t dim) {
    std::vector<std::vector<la::cplx>> cols(dim, std::vector<la::cplx>(dim));
    for (auto& col : cols)
        for (auto& entry : col) entry = rng.complex_gaussian();
    orthonormalize_columns(cols);
    la::ComplexMatrix u(dim);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i) u(i, j) = cols[j][i];
    return u;
}

la::ComplexMatrix random_positive(Rng& rng, std::size_t dim) {
    const la::ComplexMatrix g = random_ginibre(rng, dim);
    return g * g.adjoint();
}

std::vector<la::ComplexMatrix> random_kraus_set(Rng& rng, std::size_t dim, std::size_t count) {
    if (dim == 0 || count == 0)
        throw std::invalid_argument("random_kraus_set: dim and count must be > 0");
    const std::size_t rows = count * dim;
    std::vector<std::vector<la::cplx>> cols(dim, std::vector<la::cplx>(rows));
    for (auto& col : cols)
        for (auto& entry : col) entry = rng.complex_gaussian();
    orthonormalize_columns(cols);

    // Column j of the isometry holds K_b(:, j) stacked over blocks b.
    std::vector<la::ComplexMatrix> kraus(count, la::ComplexMatrix(dim));
    for (std::size_t b = 0; b < count; ++b)
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) kraus[b](i, j) = cols[j][b * dim + i];
    return kraus;
}

DensityMatrix apply_channel(const std::vector<la::ComplexMatrix>& kraus, const DensityMatrix& rho,
                            const Tolerances& tol) {
    if (kraus.empty()) throw std::invalid_argument("apply_channel: empty Kraus set");
    la::ComplexMatrix out(rho.dim());
    for (const la::ComplexMatrix& k : kraus) out += k * rho.matrix() * k.adjoint();
    return DensityMatrix::validate(out, tol);
}

std::pair<DensityMatrix, DensityMatrix> random_orthogonal_pair(Rng& rng, std::size_t dim,
                                                               const Tolerances& tol) {
    if (dim < 2)
        throw std::invalid_argument("random_orthogonal_pair: dimension must be >= 2");
    const std::size_t split = 1 + rng.integer(dim - 1);
    const DensityMatrix a = random_state(rng, split, 0, tol);
    const DensityMatrix b = random_state(rng, dim - split, 0, tol);

    la::ComplexMatrix ma(dim), mb(dim);
    for (std::size_t i = 0; i < split; ++i)
        for (std::size_t j = 0; j < split; ++j) ma(i, j) = a.matrix()(i, j);
    for (std::size_t i = 0; i < dim - split; ++i)
        for (std::size_t j = 0; j < dim - split; ++j) mb(split + i, split + j) = b.matrix()(i, j);

    const la::ComplexMatrix u = random_unitary(rng, dim);
    return {unitary_rotate(DensityMatrix::validate(ma, tol), u, tol),
            unitary_rotate(DensityMatrix::validate(mb, tol), u, tol)};
}

}  // namespace backflow
