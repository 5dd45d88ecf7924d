#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entkit/states.hpp"

// Entanglement measures for mixed states: the two-qubit closed forms
// (concurrence, entanglement of formation), negativity and its logarithmic
// variant, quantum relative entropy and Uhlmann fidelity, and the
// optimization-based distances to the separable set.

namespace entkit {

// Wootters spin-flip construction. Requires a 2x2 layout.
double concurrence(const DensityOperator& rho);

// h(x) = -x log2 x - (1-x) log2 (1-x) for x in [0, 1], with h(0) = h(1) = 0.
double binary_entropy(double x);

// Entanglement of formation of a two-qubit state via the concurrence:
// h((1 + sqrt(1 - C^2)) / 2).
double eof_two_qubit(const DensityOperator& rho);

// (||rho^T_B||_1 - 1) / 2 across the given cut. The implementation also
// cross-checks the trace-norm route against the sum of negative
// partial-transpose eigenvalues and refuses to answer if they disagree.
double negativity(const DensityOperator& rho,
                  const std::vector<std::size_t>& side_a);

// log2 ||rho^T_B||_1 across the given cut.
double log_negativity(const DensityOperator& rho,
                      const std::vector<std::size_t>& side_a);

// S(rho || sigma) in bits. Returns +infinity when the support of rho is
// not contained in the support of sigma.
double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

// Uhlmann fidelity (tr sqrt(sqrt(sigma) rho sqrt(sigma)))^2, clamped to
// [0, 1]. Symmetric in its arguments.
double uhlmann_fidelity(const DensityOperator& rho, const DensityOperator& sigma);

// Which distance the separable-set search minimizes.
enum class DistanceKind { RelativeEntropy, Bures, Trace };

struct SeparableSearchOptions {
    // Number of product terms in the candidate ensemble; 0 means the
    // dimension-squared default, which is always sufficient.
    std::size_t ensemble_size = 0;
    int restarts = 8;
    int max_iterations = 3000;
    // The search stops once the best value improves by less than
    // `tolerance` over `patience` consecutive iterations.
    double tolerance = 1e-6;
    int patience = 200;
    std::uint64_t seed = 42;
};

// The separable state found by the search, as an explicit product
// ensemble. Weights are positive and sum to 1; the local vectors are unit
// normalized on the side-A and side-B group spaces.
struct SeparableApproximation {
    std::vector<double> weights;
    std::vector<std::pair<Vector, Vector>> product_states;

    // Assembles the ensemble into a density operator on the given layout,
    // with the product factors routed back to the side-A subsystems.
    DensityOperator assemble(const SubsystemLayout& layout,
                             const std::vector<std::size_t>& side_a) const;
};

struct SeparableDistanceResult {
    double value = 0.0;
    DistanceKind kind = DistanceKind::RelativeEntropy;
    // Search diagnostics: total iterations across restarts, the final
    // improvement seen, and whether the stopping rule was met before the
    // iteration cap in at least the best restart.
    int iterations = 0;
    double achieved_tolerance = 0.0;
    bool converged = false;
    std::uint64_t seed = 0;
    SeparableApproximation closest;
};

// Minimizes the chosen distance from rho to the separable set across the
// given cut over explicit product ensembles. For RelativeEntropy this is
// the relative entropy of entanglement; it is zero (up to the search
// tolerance) exactly on separable states.
SeparableDistanceResult distance_to_separable(
    const DensityOperator& rho, const std::vector<std::size_t>& side_a,
    DistanceKind kind, const SeparableSearchOptions& options = {});

// Bures distance to the separable set, 2 - 2 sqrt(F_max).
SeparableDistanceResult bures_measure(
    const DensityOperator& rho, const std::vector<std::size_t>& side_a,
    const SeparableSearchOptions& options = {});

inline SeparableDistanceResult relative_entropy_of_entanglement(
    const DensityOperator& rho, const std::vector<std::size_t>& side_a,
    const SeparableSearchOptions& options = {}) {
    return distance_to_separable(rho, side_a, DistanceKind::RelativeEntropy,
                                 options);
}

}  // namespace entkit
