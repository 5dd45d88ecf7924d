#pragma once

#include <Eigen/Dense>
#include <complex>

#include "entkit/errors.hpp"

// Dense complex linear algebra shared by every other module: Kronecker
// products, Hermitian eigendecompositions, operator square roots, trace
// norms, and the base-2 matrix logarithm restricted to the support.

namespace entkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Shared tolerances. Hermiticity and unit normalization are checked at
// 1e-10; eigenvalues above -1e-9 count as nonnegative and are clamped to
// zero; eigenvalues below 1e-12 relative to the largest one are treated
// as outside the support.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kSupportRelTol = 1e-12;

struct EigenDecomposition {
    RealVector eigenvalues;  // sorted descending
    Matrix eigenvectors;     // column k pairs with eigenvalues[k]
};

// Kronecker product, with the left factor indexing the coarse blocks:
// block (i, j) of the result equals a(i, j) * b.
Matrix kron(const Matrix& a, const Matrix& b);

bool is_hermitian(const Matrix& a, double tol = kHermitianTol);

// Eigendecomposition of a Hermitian matrix with eigenvalues sorted
// descending and orthonormal eigenvector columns.
EigenDecomposition hermitian_eig(const Matrix& a);

// Principal square root of a positive semidefinite matrix. Eigenvalues in
// [-kPsdTol, 0) are clamped to zero; anything lower throws NotPsdError.
Matrix psd_sqrt(const Matrix& a);

// Sum of singular values.
double trace_norm(const Matrix& a);

// log2 of a positive semidefinite matrix on its support; the kernel maps
// to zero. Used for entropy-like quantities where 0 log 0 = 0.
Matrix matrix_log2_on_support(const Matrix& a);

}  // namespace entkit
