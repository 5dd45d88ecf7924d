#include "entkit/mixed_measures.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

#include "entkit/linalg.hpp"

namespace entkit {

double concurrence(const DensityOperator& rho) {
    if (rho.layout().dims() != std::vector<std::size_t>{2, 2})
        throw LayoutError("concurrence: state is not on a 2x2 layout");

    // The four lambdas are conventionally the root eigenvalues of
    // rho (Y (x) Y) rho* (Y (x) Y); Y (x) Y is the anti-diagonal
    // {-1, 1, 1, -1}. Equivalently they are the singular values of
    // B = sqrt(rho) (Y (x) Y) sqrt(rho)*, since B B^dag = sqrt(rho)
    // flip(rho) sqrt(rho). The SVD form resolves near-zero lambdas at
    // full precision where the root of a computed eigenvalue keeps
    // only half the digits.
    Matrix yy = Matrix::Zero(4, 4);
    yy(0, 3) = -1.0; yy(1, 2) = 1.0; yy(2, 1) = 1.0; yy(3, 0) = -1.0;
    const Matrix root = psd_sqrt(rho.matrix());
    const Eigen::JacobiSVD<Matrix> svd(root * yy * root.conjugate());
    const auto& lambdas = svd.singularValues();  // descending
    return std::max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]);
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw RangeError("binary_entropy: argument " + std::to_string(x) +
                         " outside [0, 1]");
    double h = 0.0;
    if (x > 0.0) h -= x * std::log2(x);
    if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
    return h;
}

double eof_two_qubit(const DensityOperator& rho) {
    const double c = concurrence(rho);
    return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

namespace {

// Both negativity routes need the partial transpose across the cut.
Matrix cut_partial_transpose(const DensityOperator& rho,
                             const std::vector<std::size_t>& side_a) {
    std::vector<bool> in_a(rho.layout().count(), false);
    for (std::size_t s : side_a) {
        if (s >= in_a.size())
            throw IndexError("negativity: subsystem index out of range");
        in_a[s] = true;
    }
    std::vector<std::size_t> side_b;
    for (std::size_t i = 0; i < in_a.size(); ++i)
        if (!in_a[i]) side_b.push_back(i);
    if (side_b.empty())
        throw IndexError("negativity: the cut must leave both sides non-empty");
    return partial_transpose(rho, side_b);
}

}  // namespace

double negativity(const DensityOperator& rho,
                  const std::vector<std::size_t>& side_a) {
    const Matrix pt = cut_partial_transpose(rho, side_a);

    // Route one: (||rho^T_B||_1 - 1) / 2 from the singular values.
    const double from_trace_norm = 0.5 * (trace_norm(pt) - 1.0);

    // Route two: magnitude of the summed negative eigenvalues.
    const auto eig = hermitian_eig(pt);
    double negative_sum = 0.0;
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k)
        if (eig.eigenvalues[k] < 0.0) negative_sum -= eig.eigenvalues[k];

    if (std::abs(from_trace_norm - negative_sum) > 1e-10)
        throw Error("negativity: trace-norm and eigenvalue routes disagree (" +
                    std::to_string(from_trace_norm) + " vs " +
                    std::to_string(negative_sum) + ")");
    return from_trace_norm;
}

double log_negativity(const DensityOperator& rho,
                      const std::vector<std::size_t>& side_a) {
    return std::log2(trace_norm(cut_partial_transpose(rho, side_a)));
}

double relative_entropy(const DensityOperator& rho,
                        const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim())
        throw DimensionError("relative_entropy: states differ in dimension");

    const auto r = hermitian_eig(rho.matrix());
    const auto s = hermitian_eig(sigma.matrix());
    const double r_cut = r.eigenvalues[0] * kSupportRelTol;
    const double s_cut = s.eigenvalues[0] * kSupportRelTol;

    // sum_i r_i log2 r_i over the support of rho.
    double result = 0.0;
    for (Eigen::Index i = 0; i < r.eigenvalues.size(); ++i) {
        const double ri = r.eigenvalues[i];
        if (ri > r_cut && ri > 0.0) result += ri * std::log2(ri);
    }

    // -sum_ij r_i |<r_i|s_j>|^2 log2 s_j, with any weight falling on the
    // kernel of sigma pushing the result to +infinity.
    const Matrix overlap = r.eigenvectors.adjoint() * s.eigenvectors;
    double kernel_weight = 0.0;
    for (Eigen::Index i = 0; i < r.eigenvalues.size(); ++i) {
        const double ri = r.eigenvalues[i];
        if (!(ri > r_cut && ri > 0.0)) continue;
        for (Eigen::Index j = 0; j < s.eigenvalues.size(); ++j) {
            const double w = std::norm(overlap(i, j));
            const double sj = s.eigenvalues[j];
            if (sj > s_cut && sj > 0.0)
                result -= ri * w * std::log2(sj);
            else
                kernel_weight += ri * w;
        }
    }
    if (kernel_weight > 1e-12)
        return std::numeric_limits<double>::infinity();
    return std::max(result, 0.0);
}

double uhlmann_fidelity(const DensityOperator& rho,
                        const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim())
        throw DimensionError("uhlmann_fidelity: states differ in dimension");
    const Matrix root = psd_sqrt(sigma.matrix());
    // tr sqrt(sqrt(sigma) rho sqrt(sigma)) = sum of the square roots of
    // the eigenvalues of the sandwiched product.
    const auto eig = hermitian_eig(root * rho.matrix() * root);
    double trace_of_root = 0.0;
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k)
        trace_of_root += std::sqrt(std::max(eig.eigenvalues[k], 0.0));
    return std::clamp(trace_of_root * trace_of_root, 0.0, 1.0);
}

}  // namespace entkit
