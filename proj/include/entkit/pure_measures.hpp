#pragma once

#include <vector>

#include "entkit/states.hpp"

// Entanglement quantities with exact expressions on pure states: Schmidt
// decomposition across an arbitrary cut, von Neumann entropy, and the
// entropy of entanglement.

namespace entkit {

struct SchmidtDecomposition {
    // Strictly positive coefficients sorted descending; squares sum to 1.
    std::vector<double> coefficients;
    // Orthonormal vectors on the side-A and side-B factor spaces; the
    // state equals sum_k coefficients[k] * basis_a[k] (x) basis_b[k] once
    // the factors are regrouped into the original subsystem order.
    std::vector<Vector> basis_a;
    std::vector<Vector> basis_b;
};

// Cuts name the subsystems on side A (0-based); the complement forms side
// B. Coefficients below 1e-10 are dropped. The phase convention makes the
// largest-magnitude component of each side-A vector real positive.
SchmidtDecomposition schmidt_decompose(const PureState& psi,
                                       const std::vector<std::size_t>& side_a);

// Number of nonzero Schmidt coefficients; 1 exactly when the state is a
// product across the cut.
std::size_t schmidt_number(const PureState& psi,
                           const std::vector<std::size_t>& side_a);

// -tr(rho log2 rho), in bits.
double von_neumann_entropy(const DensityOperator& rho);

// Entropy of either reduced state of a pure state across the cut; equals
// -sum_k c_k^2 log2 c_k^2 over the Schmidt coefficients.
double entropy_of_entanglement(const PureState& psi,
                               const std::vector<std::size_t>& side_a);

}  // namespace entkit
