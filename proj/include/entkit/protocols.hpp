#pragma once

#include <optional>
#include <vector>

#include "entkit/measurements.hpp"
#include "entkit/states.hpp"

// Local-measurement protocols on entangled pairs: the Bell-to-partial
// transformation, probabilistic concentration back to a Bell pair, and the
// recursive two-pair distillation scheme with its yield curve.

namespace entkit {

// Starting from the singlet, Alice measures {diag(cos t, sin t),
// diag(sin t, cos t)} and applies X (x) X on the second outcome; both
// branches land on the same state, so the output is pure:
// cos t |01> - sin t |10>. Requires theta in [0, pi/2].
DensityOperator transform_bell(double theta);

struct ConcentrationResult {
    double p_success = 0.0;
    double p_failure = 0.0;
    DensityOperator success_state;                 // the Bell pair phi+
    std::optional<DensityOperator> failure_state;  // absent when p < 1e-12
};

// Concentrates cos t |00> + sin t |11> into phi+ with probability
// 2 sin^2 t using the local filter {diag(tan t, 1), diag(sqrt(1-tan^2 t), 0)};
// the failure branch leaves the product state |00>. Requires theta in
// (0, pi/4] so the filter is well defined.
ConcentrationResult concentrate(double theta);

// One round of two-pair distillation applied to rho = (1-p) |01><01| +
// p phi+, using local CNOTs and a measurement of the second pair. Pair
// one is qubits (0, 1) = (Alice, Bob), pair two is qubits (2, 3).
struct DistillationStep {
    double p_in = 0.0;
    double p_success = 0.0;  // outcome 11: pair one becomes phi+
    double p_01 = 0.0;       // mixed outcomes: discarded
    double p_10 = 0.0;
    double p_00 = 0.0;       // retry outcome: pair one re-enters with p_next
    double p_next = 0.0;
    // Four-qubit post-state of the 11 outcome; absent when p_success is
    // below 1e-12 (only at p = 0).
    std::optional<DensityOperator> success_state;
    // Pair-one reduced state of the 00 outcome.
    std::optional<DensityOperator> retry_state;
};

// Closed-form step quantities: p_success = p^2/2, p_00 = 3p^2/2 - 2p + 1,
// p_next = p^2 / (3p^2 - 4p + 2). Requires p in [0, 1].
DistillationStep distill_step(double p);

// The same step obtained by explicit simulation: build rho (x) rho, apply
// the two local CNOTs, measure both target qubits, and reduce. Matches
// distill_step to numerical precision.
DistillationStep simulate_distill_step(double p);

struct YieldCurve {
    double p = 0.0;
    // yields[k-1] is the cumulative phi+ yield per input pair when the
    // retry branch is followed for k rounds.
    std::vector<double> yields;
    double converged_yield = 0.0;
    int levels_used = 0;
    bool converged = false;
};

// Cumulative distillation yield for the first `iterations` rounds plus
// the fixed-point value, iterated until increments drop below tol.
YieldCurve total_yield(double p, int iterations, double tol = 1e-9);

}  // namespace entkit
