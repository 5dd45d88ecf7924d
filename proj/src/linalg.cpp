#include "entkit/linalg.hpp"

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>

namespace entkit {

Matrix kron(const Matrix& a, const Matrix& b) {
    if (a.size() == 0 || b.size() == 0)
        throw DimensionError("kron: factors must be non-empty");
    return Eigen::kroneckerProduct(a, b);
}

bool is_hermitian(const Matrix& a, double tol) {
    if (a.rows() != a.cols() || a.size() == 0) return false;
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

EigenDecomposition hermitian_eig(const Matrix& a) {
    if (a.rows() != a.cols() || a.size() == 0)
        throw DimensionError("hermitian_eig: matrix must be square and non-empty");
    if (!is_hermitian(a))
        throw NotHermitianError("hermitian_eig: matrix is not Hermitian within 1e-10");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
    if (solver.info() != Eigen::Success)
        throw Error("hermitian_eig: eigensolver did not converge");
    const Eigen::Index n = a.rows();
    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    // Eigen sorts ascending; flip to descending.
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues[k] = solver.eigenvalues()[n - 1 - k];
        out.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return out;
}

Matrix psd_sqrt(const Matrix& a) {
    EigenDecomposition eig = hermitian_eig(a);
    const Eigen::Index n = eig.eigenvalues.size();
    Vector roots(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double lam = eig.eigenvalues[k];
        if (lam < -kPsdTol)
            throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(lam) +
                              " below -1e-9");
        roots[k] = lam > 0.0 ? std::sqrt(lam) : 0.0;
    }
    return eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
}

double trace_norm(const Matrix& a) {
    if (a.size() == 0)
        throw DimensionError("trace_norm: matrix must be non-empty");
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues().sum();
}

Matrix matrix_log2_on_support(const Matrix& a) {
    EigenDecomposition eig = hermitian_eig(a);
    const Eigen::Index n = eig.eigenvalues.size();
    const double cutoff = eig.eigenvalues[0] * kSupportRelTol;
    Vector logs(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double lam = eig.eigenvalues[k];
        if (lam < -kPsdTol)
            throw NotPsdError("matrix_log2_on_support: eigenvalue " +
                              std::to_string(lam) + " below -1e-9");
        logs[k] = (lam > cutoff && lam > 0.0) ? std::log2(lam) : 0.0;
    }
    return eig.eigenvectors * logs.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace entkit
