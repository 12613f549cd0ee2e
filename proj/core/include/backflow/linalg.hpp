// linalg.hpp: dense complex linear algebra for Hermitian operators on small
// Hilbert spaces. Eigendecomposition (cyclic Jacobi), tensor structure,
// partial trace, trace norm, Jordan decomposition, matrix functions.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "backflow/tolerances.hpp"

namespace backflow::la {

using cplx = std::complex<double>;

// Square complex matrix, row-major. Indices are (row, column).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(const std::vector<double>& entries);
    static ComplexMatrix diagonal(const std::vector<cplx>& entries);

    std::size_t dim() const { return dim_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }

    ComplexMatrix adjoint() const;
    cplx trace() const;

    double max_abs() const;
    double frobenius_norm() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx scale);

private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx scale, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx scale);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigensystem of a Hermitian matrix.
struct HermitianSpectrum {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // orthonormal columns, paired with eigenvalues
};

// V diag(lambda) V^dagger
ComplexMatrix reconstruct(const HermitianSpectrum& spectrum);

// Bipartite tensor factorization, system factor first.
struct Subsystems {
    std::size_t system = 0;
    std::size_t environment = 0;

    std::size_t total() const { return system * environment; }
};

enum class Factor { system, environment };

// max_ij |H_ij - conj(H_ji)|
double hermiticity_defect(const ComplexMatrix& m);

// Full eigendecomposition by cyclic Jacobi rotations. Rejects inputs whose
// Hermiticity defect exceeds tol.structural; throws after tol.max_sweeps
// sweeps if the off-diagonal Frobenius norm has not dropped below
// tol.solver * max(1, ||H||_F).
HermitianSpectrum eigh(const ComplexMatrix& hermitian, const Tolerances& tol = default_tolerances());

// (A tensor B)[(i,k),(j,l)] = A[i,j] * B[k,l]
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Reduce a bipartite operator to one factor; preserves the trace.
ComplexMatrix partial_trace(const ComplexMatrix& m, const Subsystems& subs, Factor keep);

// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const ComplexMatrix& hermitian, const Tolerances& tol = default_tolerances());

// T = T_plus - T_minus with both parts positive semidefinite and mutually
// orthogonal.
std::pair<ComplexMatrix, ComplexMatrix> jordan_parts(const ComplexMatrix& hermitian,
                                                     const Tolerances& tol = default_tolerances());

// V f(diag lambda) V^dagger. Throws, naming the eigenvalue, if f produces a
// non-finite value there.
ComplexMatrix apply_function_on_spectrum(const ComplexMatrix& hermitian,
                                         const std::function<double(double)>& f,
                                         const Tolerances& tol = default_tolerances());

}  // namespace backflow::la
