#include "entkit/protocols.hpp"

#include <cmath>
#include <numbers>

#include "indexing.hpp"

namespace entkit {

namespace {

constexpr double kProbFloor = 1e-12;

Matrix pauli_x() {
    Matrix x = Matrix::Zero(2, 2);
    x(0, 1) = x(1, 0) = 1.0;
    return x;
}

// Embeds a single-qubit operator at the given position of an n-qubit
// register.
Matrix embed_one(const Matrix& op, std::size_t position, std::size_t qubits) {
    Matrix out = Matrix::Identity(1, 1);
    for (std::size_t q = 0; q < qubits; ++q)
        out = kron(out, q == position ? op : Matrix::Identity(2, 2));
    return out;
}

// CNOT with the given control and target qubit positions:
// |0><0| on the control leaves the target alone, |1><1| flips it.
Matrix cnot(std::size_t control, std::size_t target, std::size_t qubits) {
    Matrix p0 = Matrix::Zero(2, 2);
    Matrix p1 = Matrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    return embed_one(p0, control, qubits) +
           embed_one(p1, control, qubits) * embed_one(pauli_x(), target, qubits);
}

// The noisy pair (1-p) |01><01| + p phi+ that distillation acts on.
DensityOperator noisy_pair(double p) {
    Matrix m = p * density_from_pure(bell_state(Bell::PhiPlus)).matrix();
    m(1, 1) += 1.0 - p;
    return DensityOperator(SubsystemLayout({2, 2}), std::move(m));
}

}  // namespace

DensityOperator transform_bell(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2))
        throw RangeError("transform_bell: theta must lie in [0, pi/2]");
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    Matrix m1 = Matrix::Zero(2, 2);
    Matrix m2 = Matrix::Zero(2, 2);
    m1(0, 0) = c; m1(1, 1) = s;
    m2(0, 0) = s; m2(1, 1) = c;
    const Matrix eye = Matrix::Identity(2, 2);
    const MeasurementSet alice({kron(m1, eye), kron(m2, eye)});

    // Outcome two is corrected by X (x) X, after which both branches
    // coincide and the mixture over outcomes is pure again.
    const MeasurementSet corrected = with_conditional_unitaries(
        alice, {Matrix::Identity(4, 4), kron(pauli_x(), pauli_x())});

    const auto singlet = density_from_pure(bell_state(Bell::PsiMinus));
    const auto outcomes = measure(singlet, corrected);
    Matrix mixed = Matrix::Zero(4, 4);
    for (const auto& outcome : outcomes)
        if (outcome.post_state)
            mixed += outcome.probability * outcome.post_state->matrix();
    return DensityOperator(SubsystemLayout({2, 2}), std::move(mixed));
}

ConcentrationResult concentrate(double theta) {
    if (!(theta > 0.0 && theta <= std::numbers::pi / 4))
        throw RangeError("concentrate: theta must lie in (0, pi/4]");
    const double t = std::tan(theta);
    const double s = std::sin(theta);

    Matrix m1 = Matrix::Zero(2, 2);
    Matrix m2 = Matrix::Zero(2, 2);
    m1(0, 0) = t; m1(1, 1) = 1.0;
    m2(0, 0) = std::sqrt(std::max(0.0, 1.0 - t * t));
    const Matrix eye = Matrix::Identity(2, 2);
    const MeasurementSet filter({kron(m1, eye), kron(m2, eye)},
                                {"success", "failure"});

    const auto input = density_from_pure(partially_entangled_state(theta));
    auto outcomes = measure(input, filter);
    if (!outcomes[0].post_state)
        throw RangeError("concentrate: theta is too small to resolve the "
                         "success branch");

    // Report the closed-form probability; the measurement route must agree
    // with it, but carries a rounding wobble of a few ulps.
    ConcentrationResult out{std::min(1.0, 2.0 * s * s), 0.0,
                            std::move(*outcomes[0].post_state), std::nullopt};
    out.p_failure = 1.0 - out.p_success;
    if (std::abs(outcomes[0].probability - out.p_success) > 1e-12)
        throw Error("concentrate: measured success probability differs from "
                    "the closed form");
    if (outcomes[1].post_state)
        out.failure_state = std::move(outcomes[1].post_state);
    return out;
}

DistillationStep distill_step(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw RangeError("distill_step: p must lie in [0, 1]");
    DistillationStep step;
    step.p_in = p;
    step.p_success = p * p / 2.0;
    step.p_01 = step.p_10 = p * (1.0 - p);
    step.p_00 = 1.5 * p * p - 2.0 * p + 1.0;
    step.p_next = p * p / (3.0 * p * p - 4.0 * p + 2.0);

    if (step.p_success >= kProbFloor) {
        // phi+ on the kept pair, |11> on the measured pair.
        const auto phi = density_from_pure(bell_state(Bell::PhiPlus));
        Matrix eleven = Matrix::Zero(4, 4);
        eleven(3, 3) = 1.0;
        step.success_state =
            tensor(phi, DensityOperator(SubsystemLayout({2, 2}), eleven));
    }
    step.retry_state = noisy_pair(step.p_next);
    return step;
}

DistillationStep simulate_distill_step(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw RangeError("simulate_distill_step: p must lie in [0, 1]");

    // Two copies side by side: qubits 0,1 are the kept pair, 2,3 the
    // sacrificed one; Alice holds 0,2 and Bob holds 1,3.
    const auto pair = noisy_pair(p);
    const auto two_pairs = tensor(pair, pair);

    const Matrix circuit = cnot(0, 2, 4) * cnot(1, 3, 4);
    DensityOperator evolved(two_pairs.layout(),
                            circuit * two_pairs.matrix() * circuit.adjoint());

    // Measure the second pair in the computational basis.
    std::vector<Matrix> ops;
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            Matrix pa = Matrix::Zero(2, 2);
            Matrix pb = Matrix::Zero(2, 2);
            pa(a, a) = 1.0;
            pb(b, b) = 1.0;
            ops.push_back(embed_one(pa, 2, 4) * embed_one(pb, 3, 4));
            labels.push_back(std::to_string(a) + std::to_string(b));
        }
    }
    const auto outcomes = measure(evolved, MeasurementSet(ops, labels));

    DistillationStep step;
    step.p_in = p;
    step.p_00 = outcomes[0].probability;
    step.p_01 = outcomes[1].probability;
    step.p_10 = outcomes[2].probability;
    step.p_success = outcomes[3].probability;
    if (outcomes[3].post_state)
        step.success_state = outcomes[3].post_state;
    if (outcomes[0].post_state) {
        auto retry = partial_trace(*outcomes[0].post_state, {0, 1});
        step.p_next = fidelity_phi_plus(retry);
        step.retry_state = std::move(retry);
    }
    return step;
}

YieldCurve total_yield(double p, int iterations, double tol) {
    if (!(p >= 0.0 && p <= 1.0))
        throw RangeError("total_yield: p must lie in [0, 1]");
    if (iterations < 1)
        throw RangeError("total_yield: iterations must be at least 1");
    // tol <= 0 disables early convergence; the level cap still applies.

    YieldCurve curve;
    curve.p = p;

    // Each round converts two pairs at the current fidelity parameter
    // p_k: with probability p_k^2/2 one phi+ comes out (yield 1/2 per
    // consumed pair), and with probability p_00 one pair survives into
    // the next round, scaling everything after it by p_00/2.
    const int cap = 200;
    double survivors = 1.0;  // expected surviving pairs per input pair
    double current = p;
    double yield = 0.0;
    double previous_increment = -1.0;
    for (int k = 1; k <= cap; ++k) {
        const DistillationStep step = distill_step(current);
        const double increment = survivors * current * current / 4.0;
        yield += increment;
        if (k <= iterations) curve.yields.push_back(yield);
        survivors *= step.p_00 / 2.0;
        current = step.p_next;
        curve.levels_used = k;
        const bool settled =
            tol > 0.0 && (increment < tol * yield || yield < 1e-15);
        if (k >= iterations && settled) {
            curve.converged = true;
            // The increments approach a geometric sequence (ratio p_00/2),
            // so project the remaining tail onto the converged value.
            if (previous_increment > 0.0 && increment > 0.0) {
                const double ratio = increment / previous_increment;
                if (ratio < 0.9) yield += increment * ratio / (1.0 - ratio);
            }
            break;
        }
        previous_increment = increment;
    }
    curve.converged_yield = yield;
    while (static_cast<int>(curve.yields.size()) < iterations)
        curve.yields.push_back(yield);
    return curve;
}

}  // namespace entkit
