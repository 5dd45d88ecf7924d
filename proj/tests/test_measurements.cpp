#include <cmath>
#include <numbers>

#include <catch_amalgamated.hpp>

#include <entkit/errors.hpp>
#include <entkit/measurements.hpp>
#include <entkit/pure_measures.hpp>
#include <entkit/states.hpp>

#include "test_support.hpp"

using namespace entkit;
using Catch::Approx;

namespace {

MeasurementSet computational_qubit() {
    Matrix p0 = Matrix::Zero(2, 2);
    Matrix p1 = Matrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    return MeasurementSet({p0, p1});
}

}  // namespace

TEST_CASE("measurement sets get default labels and validate shapes") {
    const auto ms = computational_qubit();
    REQUIRE(ms.operators().size() == 2);
    REQUIRE(ms.labels()[0] == "0");
    REQUIRE(ms.labels()[1] == "1");
    REQUIRE(ms.is_complete());

    REQUIRE_THROWS_AS(MeasurementSet({}), ValidationError);
    REQUIRE_THROWS_AS(MeasurementSet({Matrix::Identity(2, 2)}, {"a", "b"}), CountError);
    REQUIRE_THROWS_AS(MeasurementSet({Matrix::Identity(2, 2), Matrix::Identity(3, 3)}),
                      DimensionError);
}

TEST_CASE("is_complete detects incomplete sets") {
    const Matrix half = Matrix::Identity(2, 2) / 2.0;
    REQUIRE_FALSE(MeasurementSet({half}).is_complete());
    // sum M^dag M = I/4 + I/4 != I
    REQUIRE_FALSE(MeasurementSet({half, half}).is_complete());
    // but {I/sqrt2, I/sqrt2} is complete
    const Matrix r = Matrix::Identity(2, 2) / std::numbers::sqrt2;
    REQUIRE(MeasurementSet({r, r}).is_complete());
}

TEST_CASE("measuring |+> in the computational basis gives equal outcomes") {
    Vector plus(2);
    plus << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
    const auto rho = density_from_pure(PureState(SubsystemLayout({2}), plus));
    const auto outcomes = measure(rho, computational_qubit());
    REQUIRE(outcomes.size() == 2);
    REQUIRE(outcomes[0].probability == Approx(0.5).margin(1e-12));
    REQUIRE(outcomes[1].probability == Approx(0.5).margin(1e-12));
    REQUIRE(outcomes[0].post_state.has_value());
    Matrix ground = Matrix::Zero(2, 2);
    ground(0, 0) = 1.0;
    REQUIRE(test::max_abs_diff(outcomes[0].post_state->matrix(), ground) < 1e-12);
}

TEST_CASE("outcome probabilities always sum to one") {
    auto rng = test::make_rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const auto rho = test::random_density(SubsystemLayout({2, 2}), rng);
        // random complete set from unitary columns: M_m = |m><v_m|
        const Matrix u = test::random_unitary(4, rng);
        std::vector<Matrix> ops;
        for (int m = 0; m < 4; ++m) {
            Matrix op = Matrix::Zero(4, 4);
            op.row(m) = u.col(m).adjoint();
            ops.push_back(op);
        }
        const MeasurementSet ms(ops);
        REQUIRE(ms.is_complete());
        const auto outcomes = measure(rho, ms);
        double total = 0.0;
        for (const auto& o : outcomes) total += o.probability;
        REQUIRE(total == Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("measure rejects incomplete sets and dimension mismatches") {
    const auto rho = max_mixed_state(2);
    const Matrix half = Matrix::Identity(4, 4) / 2.0;
    REQUIRE_THROWS_AS(measure(rho, MeasurementSet({half})), ValidationError);
    REQUIRE_THROWS_AS(measure(rho, computational_qubit()), DimensionError);
}

TEST_CASE("a filtering measurement turns the maximally entangled pair into a tilted one") {
    const double theta = std::numbers::pi / 6.0;
    const double c = std::cos(theta), s = std::sin(theta);
    Matrix m1 = Matrix::Zero(2, 2);
    Matrix m2 = Matrix::Zero(2, 2);
    m1(0, 0) = c;
    m1(1, 1) = s;
    m2(0, 0) = s;
    m2(1, 1) = c;
    const Matrix id = Matrix::Identity(2, 2);
    const MeasurementSet ms({kron(m1, id), kron(m2, id)});
    REQUIRE(ms.is_complete());

    const auto rho = density_from_pure(bell_state(Bell::PhiPlus));
    const auto outcomes = measure(rho, ms);
    REQUIRE(outcomes[0].probability == Approx(0.5).margin(1e-12));
    REQUIRE(outcomes[1].probability == Approx(0.5).margin(1e-12));

    const auto tilted = density_from_pure(partially_entangled_state(theta));
    REQUIRE(test::max_abs_diff(outcomes[0].post_state->matrix(), tilted.matrix()) < 1e-12);
}

TEST_CASE("post states below the probability floor are omitted") {
    Matrix zero = Matrix::Zero(2, 2);
    Matrix full = Matrix::Identity(2, 2);
    const MeasurementSet ms({full, zero});
    Vector up(2);
    up << 1, 0;
    const auto outcomes = measure(density_from_pure(PureState(SubsystemLayout({2}), up)), ms);
    REQUIRE(outcomes[1].probability == Approx(0.0).margin(1e-12));
    REQUIRE_FALSE(outcomes[1].post_state.has_value());
}

TEST_CASE("conditional unitaries rotate post states without changing probabilities") {
    const auto ms = computational_qubit();
    Matrix x = Matrix::Zero(2, 2);
    x(0, 1) = x(1, 0) = 1.0;
    const auto corrected = with_conditional_unitaries(ms, {Matrix::Identity(2, 2), x});
    REQUIRE(corrected.is_complete());

    Vector plus(2);
    plus << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
    const auto rho = density_from_pure(PureState(SubsystemLayout({2}), plus));
    const auto outcomes = measure(rho, corrected);
    REQUIRE(outcomes[0].probability == Approx(0.5).margin(1e-12));
    REQUIRE(outcomes[1].probability == Approx(0.5).margin(1e-12));
    // both posts are now |0><0|
    Matrix ground = Matrix::Zero(2, 2);
    ground(0, 0) = 1.0;
    REQUIRE(test::max_abs_diff(outcomes[0].post_state->matrix(), ground) < 1e-12);
    REQUIRE(test::max_abs_diff(outcomes[1].post_state->matrix(), ground) < 1e-12);
}

TEST_CASE("conditional unitaries validate their input") {
    const auto ms = computational_qubit();
    REQUIRE_THROWS_AS(with_conditional_unitaries(ms, {Matrix::Identity(2, 2)}), CountError);
    Matrix not_unitary = Matrix::Identity(2, 2) * 2.0;
    REQUIRE_THROWS_AS(
        with_conditional_unitaries(ms, {Matrix::Identity(2, 2), not_unitary}),
        NotUnitaryError);
}

TEST_CASE("composed measurements match sequential measurement") {
    auto rng = test::make_rng(32);
    const auto rho = test::random_density(SubsystemLayout({2}), rng);

    Vector plus(2), minus(2);
    plus << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
    minus << 1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2;
    const MeasurementSet first = computational_qubit();
    const MeasurementSet second({plus * plus.adjoint(), minus * minus.adjoint()}, {"p", "m"});

    const auto composed = compose(first, {second, second});
    REQUIRE(composed.operators().size() == 4);
    REQUIRE(composed.labels()[0] == "0,p");
    REQUIRE(composed.labels()[3] == "1,m");
    REQUIRE(composed.is_complete());

    const auto joint = measure(rho, composed);
    const auto stage1 = measure(rho, first);
    std::size_t idx = 0;
    for (const auto& o1 : stage1) {
        const auto stage2 = measure(*o1.post_state, second);
        for (const auto& o2 : stage2) {
            REQUIRE(joint[idx].probability ==
                    Approx(o1.probability * o2.probability).margin(1e-10));
            if (joint[idx].post_state && o2.post_state) {
                REQUIRE(test::max_abs_diff(joint[idx].post_state->matrix(),
                                           o2.post_state->matrix()) < 1e-9);
            }
            ++idx;
        }
    }
}

TEST_CASE("compose validates the continuation count") {
    const auto first = computational_qubit();
    REQUIRE_THROWS_AS(compose(first, {first}), CountError);
}
