#include "entkit/pure_measures.hpp"

#include <Eigen/SVD>

#include <cmath>

#include "indexing.hpp"

namespace entkit {

namespace {

// Coefficients at or below this are treated as zero Schmidt weight.
constexpr double kSchmidtTol = 1e-10;

}  // namespace

SchmidtDecomposition schmidt_decompose(const PureState& psi,
                                       const std::vector<std::size_t>& side_a) {
    const auto& layout = psi.layout();
    detail::check_subsystems(layout, side_a, "schmidt_decompose");
    const auto side_b = detail::complement_of(layout, side_a);
    if (side_b.empty())
        throw IndexError("schmidt_decompose: the cut must leave both sides non-empty");

    const auto& dims = layout.dims();
    const auto strides = detail::strides_of(dims);
    const auto offs_a = detail::group_offsets(side_a, dims, strides);
    const auto offs_b = detail::group_offsets(side_b, dims, strides);

    // Reshape the amplitudes into a (side A) x (side B) coefficient matrix
    // and decompose it; the singular values are the Schmidt coefficients.
    Matrix coeff(offs_a.size(), offs_b.size());
    for (std::size_t a = 0; a < offs_a.size(); ++a)
        for (std::size_t b = 0; b < offs_b.size(); ++b)
            coeff(a, b) = psi.amplitudes()[offs_a[a] + offs_b[b]];

    Eigen::JacobiSVD<Matrix> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);

    SchmidtDecomposition out;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
        const double c = svd.singularValues()[k];
        if (c <= kSchmidtTol) break;  // singular values come out descending
        Vector a = svd.matrixU().col(k);
        // coeff = U S V†, so the side-B vector is the conjugated V column.
        Vector b = svd.matrixV().col(k).conjugate();

        // Fix the free phase pair: rotate so the largest-magnitude entry
        // of the side-A vector is real positive.
        Eigen::Index pivot = 0;
        a.cwiseAbs().maxCoeff(&pivot);
        const Complex phase = a[pivot] / std::abs(a[pivot]);
        a /= phase;
        b *= phase;

        out.coefficients.push_back(c);
        out.basis_a.push_back(std::move(a));
        out.basis_b.push_back(std::move(b));
    }
    return out;
}

std::size_t schmidt_number(const PureState& psi,
                           const std::vector<std::size_t>& side_a) {
    return schmidt_decompose(psi, side_a).coefficients.size();
}

double von_neumann_entropy(const DensityOperator& rho) {
    const auto eig = hermitian_eig(rho.matrix());
    const double cutoff = eig.eigenvalues[0] * kSupportRelTol;
    double entropy = 0.0;
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
        const double lam = eig.eigenvalues[k];
        if (lam > cutoff && lam > 0.0) entropy -= lam * std::log2(lam);
    }
    return entropy;
}

double entropy_of_entanglement(const PureState& psi,
                               const std::vector<std::size_t>& side_a) {
    double entropy = 0.0;
    for (double c : schmidt_decompose(psi, side_a).coefficients) {
        const double p = c * c;
        entropy -= p * std::log2(p);
    }
    return entropy;
}

}  // namespace entkit
