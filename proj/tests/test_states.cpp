#include <cmath>
#include <numbers>

#include <catch_amalgamated.hpp>

#include <entkit/errors.hpp>
#include <entkit/states.hpp>

#include "test_support.hpp"

using namespace entkit;
using Catch::Approx;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Matrix phi_plus_matrix() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    return m;
}

}  // namespace

TEST_CASE("layout validates subsystem dimensions") {
    REQUIRE(SubsystemLayout({2, 3}).total_dim() == 6);
    REQUIRE(SubsystemLayout({2, 2, 2}).total_dim() == 8);
    REQUIRE_THROWS_AS(SubsystemLayout({}), LayoutError);
    REQUIRE_THROWS_AS(SubsystemLayout({2, 1}), LayoutError);
    REQUIRE_THROWS_AS(SubsystemLayout({0}), LayoutError);
}

TEST_CASE("pure states must be normalized") {
    Vector v(4);
    v << 1.0, 0.0, 0.0, 0.0;
    REQUIRE_NOTHROW(PureState(SubsystemLayout({2, 2}), v));
    v[0] = 1.1;
    REQUIRE_THROWS_AS(PureState(SubsystemLayout({2, 2}), v), ValidationError);
    Vector wrong(3);
    wrong << 1.0, 0.0, 0.0;
    REQUIRE_THROWS_AS(PureState(SubsystemLayout({2, 2}), wrong), DimensionError);
}

TEST_CASE("density operators are checked for shape, hermiticity, trace, and positivity") {
    const SubsystemLayout layout({2, 2});
    REQUIRE_NOTHROW(DensityOperator(layout, Matrix::Identity(4, 4) / 4.0));

    Matrix bad_trace = Matrix::Identity(4, 4) / 2.0;
    REQUIRE_THROWS_AS(DensityOperator(layout, bad_trace), ValidationError);

    Matrix non_herm = Matrix::Identity(4, 4) / 4.0;
    non_herm(0, 1) = 0.1;
    REQUIRE_THROWS_AS(DensityOperator(layout, non_herm), NotHermitianError);

    Matrix neg = Matrix::Zero(4, 4);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    REQUIRE_THROWS_AS(DensityOperator(layout, neg), NotPsdError);

    REQUIRE_THROWS_AS(DensityOperator(layout, Matrix::Identity(3, 3) / 3.0), DimensionError);
}

TEST_CASE("density_from_pure builds the projector") {
    const auto rho = density_from_pure(bell_state(Bell::PhiPlus));
    REQUIRE(test::max_abs_diff(rho.matrix(), phi_plus_matrix()) < 1e-12);
}

TEST_CASE("mix averages ensemble members") {
    const SubsystemLayout layout({2, 2});
    Vector up(4), down(4);
    up << 1, 0, 0, 0;
    down << 0, 0, 0, 1;
    const Ensemble ens({{0.25, PureState(layout, up)}, {0.75, PureState(layout, down)}});
    const auto rho = mix(ens);
    REQUIRE(std::abs(rho.matrix()(0, 0) - Complex(0.25)) < 1e-12);
    REQUIRE(std::abs(rho.matrix()(3, 3) - Complex(0.75)) < 1e-12);
    REQUIRE(std::abs(rho.matrix()(0, 3)) < 1e-12);
}

TEST_CASE("mix validates probabilities") {
    const SubsystemLayout layout({2, 2});
    Vector up(4);
    up << 1, 0, 0, 0;
    REQUIRE_THROWS_AS(Ensemble({{0.6, PureState(layout, up)}}), ValidationError);
    REQUIRE_THROWS_AS(Ensemble({{1.4, PureState(layout, up)}, {-0.4, PureState(layout, up)}}),
                      ValidationError);
}

TEST_CASE("partial trace of a maximally entangled pair is maximally mixed") {
    const auto rho = density_from_pure(bell_state(Bell::PhiPlus));
    const auto reduced = partial_trace(rho, {0});
    REQUIRE(test::max_abs_diff(reduced.matrix(), Matrix::Identity(2, 2) / 2.0) < 1e-12);
    const auto reduced_b = partial_trace(rho, {1});
    REQUIRE(test::max_abs_diff(reduced_b.matrix(), Matrix::Identity(2, 2) / 2.0) < 1e-12);
}

TEST_CASE("partial trace of a product state recovers the factors") {
    auto rng = test::make_rng(21);
    const auto a = test::random_density(SubsystemLayout({3}), rng);
    const auto b = test::random_density(SubsystemLayout({2}), rng);
    const auto joint = tensor(a, b);
    REQUIRE(joint.layout().dims() == std::vector<std::size_t>{3, 2});
    REQUIRE(test::max_abs_diff(partial_trace(joint, {0}).matrix(), a.matrix()) < 1e-12);
    REQUIRE(test::max_abs_diff(partial_trace(joint, {1}).matrix(), b.matrix()) < 1e-12);
}

TEST_CASE("partial trace keeps subsystems in the listed order") {
    auto rng = test::make_rng(22);
    const auto a = test::random_density(SubsystemLayout({2}), rng);
    const auto b = test::random_density(SubsystemLayout({3}), rng);
    const auto joint = tensor(a, b);
    const auto swapped = partial_trace(joint, {1, 0});
    REQUIRE(swapped.layout().dims() == std::vector<std::size_t>{3, 2});
    REQUIRE(test::max_abs_diff(swapped.matrix(), kron(b.matrix(), a.matrix())) < 1e-12);
}

TEST_CASE("partial trace of a three-party state") {
    const auto ghz = density_from_pure(ghz_state(3));
    const auto pair = partial_trace(ghz, {0, 1});
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = expected(3, 3) = 0.5;
    REQUIRE(test::max_abs_diff(pair.matrix(), expected) < 1e-12);

    const auto w = density_from_pure(w_state());
    const auto w_pair = partial_trace(w, {0, 1});
    REQUIRE(test::max_abs_diff(w_pair.matrix(), w_reduced_state().matrix()) < 1e-12);
}

TEST_CASE("partial trace validates subsystem indices") {
    const auto rho = density_from_pure(ghz_state(3));
    REQUIRE_THROWS_AS(partial_trace(rho, {}), IndexError);
    REQUIRE_THROWS_AS(partial_trace(rho, {3}), IndexError);
    REQUIRE_THROWS_AS(partial_trace(rho, {0, 0}), IndexError);
}

TEST_CASE("partial transpose of the maximally entangled pair") {
    const auto rho = density_from_pure(bell_state(Bell::PhiPlus));
    const Matrix pt = partial_transpose(rho, {1});
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = expected(3, 3) = 0.5;
    expected(1, 2) = expected(2, 1) = 0.5;
    REQUIRE(test::max_abs_diff(pt, expected) < 1e-12);
}

TEST_CASE("partial transpose is an involution and matches product transposes") {
    auto rng = test::make_rng(23);
    // Transposing twice returns the original; use a separable state so the
    // intermediate matrix is itself a valid density operator.
    const auto rho = test::random_separable(2, 3, 4, rng);
    const Matrix once = partial_transpose(rho, {1});
    const Matrix twice = partial_transpose(DensityOperator(rho.layout(), once), {1});
    REQUIRE(test::max_abs_diff(twice, rho.matrix()) < 1e-12);

    const auto a = test::random_density(SubsystemLayout({2}), rng);
    const auto b = test::random_density(SubsystemLayout({3}), rng);
    const auto joint = tensor(a, b);
    const Matrix pt = partial_transpose(joint, {1});
    REQUIRE(test::max_abs_diff(pt, kron(a.matrix(), b.matrix().transpose())) < 1e-12);
}

TEST_CASE("transposing either side of a cut gives the same spectrum") {
    auto rng = test::make_rng(24);
    const auto rho = test::random_density(SubsystemLayout({2, 2}), rng);
    const auto ea = hermitian_eig(partial_transpose(rho, {0})).eigenvalues;
    const auto eb = hermitian_eig(partial_transpose(rho, {1})).eigenvalues;
    REQUIRE((ea - eb).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("min_pt_eigenvalue and the positivity test agree with known states") {
    const auto phi = density_from_pure(bell_state(Bell::PhiPlus));
    REQUIRE(min_pt_eigenvalue(phi, {0}) == Approx(-0.5).margin(1e-10));
    REQUIRE_FALSE(is_ppt(phi, {0}));

    const auto ghz = density_from_pure(ghz_state(3));
    REQUIRE(min_pt_eigenvalue(ghz, {0}) == Approx(-0.5).margin(1e-10));
    REQUIRE_FALSE(is_ppt(ghz, {0}));

    REQUIRE(is_ppt(max_mixed_state(2), {0}));
    REQUIRE_FALSE(is_ppt(w_reduced_state(), {0}));
}

TEST_CASE("the correlated separable example is PPT with known spectrum") {
    const auto rho = separable_example_state();
    const auto eigs = hermitian_eig(rho.matrix()).eigenvalues;
    REQUIRE(eigs[3] == Approx(0.062401986343963489).margin(1e-12));
    REQUIRE(eigs[0] == Approx(0.47038877870530582).margin(1e-12));
    REQUIRE(is_ppt(rho, {0}));
    REQUIRE(min_pt_eigenvalue(rho, {0}) == Approx(0.062401986343963475).margin(1e-10));
}

TEST_CASE("the correlated separable example is a mixture of two product terms") {
    // rho = 1/2 (|1><1| + |-><-|)/2 (x) |psi+><psi+|
    //     + 1/2 (I/2 + |+><+|)/2    (x) |psi-><psi-|
    // with psi+- = |0>/sqrt(3) +- i sqrt(2/3) |1>, which makes it separable
    // by construction.
    const Complex i(0.0, 1.0);
    Vector e1(2), plus(2), minus(2), psi_p(2), psi_m(2);
    e1 << 0, 1;
    plus << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
    minus << 1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2;
    psi_p << std::sqrt(1.0 / 3.0), i * std::sqrt(2.0 / 3.0);
    psi_m << std::sqrt(1.0 / 3.0), -i * std::sqrt(2.0 / 3.0);

    const auto proj = [](const Vector& v) -> Matrix { return v * v.adjoint(); };
    const Matrix side_a1 = 0.5 * proj(e1) + 0.5 * proj(minus);
    const Matrix side_a2 = 0.5 * Matrix::Identity(2, 2) / 2.0 + 0.5 * proj(plus);
    const Matrix mixture = 0.5 * kron(side_a1, proj(psi_p)) + 0.5 * kron(side_a2, proj(psi_m));
    REQUIRE(test::max_abs_diff(mixture, separable_example_state().matrix()) < 1e-12);
}

TEST_CASE("fidelity with the reference maximally entangled pair") {
    REQUIRE(fidelity_phi_plus(density_from_pure(bell_state(Bell::PhiPlus))) ==
            Approx(1.0).margin(1e-12));
    REQUIRE(fidelity_phi_plus(density_from_pure(bell_state(Bell::PsiMinus))) ==
            Approx(0.0).margin(1e-12));
    REQUIRE(fidelity_phi_plus(max_mixed_state(2)) == Approx(0.25).margin(1e-12));
    REQUIRE_THROWS_AS(fidelity_phi_plus(max_mixed_state(3)), LayoutError);
}

TEST_CASE("tensor concatenates layouts and composes amplitudes") {
    const auto left = bell_state(Bell::PhiPlus);
    const auto right = bell_state(Bell::PhiPlus);
    const auto joint = tensor(left, right);
    REQUIRE(joint.layout().dims() == std::vector<std::size_t>{2, 2, 2, 2});
    REQUIRE(std::abs(joint.amplitudes()[0] - Complex(0.5)) < 1e-12);
    REQUIRE(std::abs(joint.amplitudes()[3] - Complex(0.5)) < 1e-12);
    REQUIRE(std::abs(joint.amplitudes()[12] - Complex(0.5)) < 1e-12);
    REQUIRE(std::abs(joint.amplitudes()[15] - Complex(0.5)) < 1e-12);
    REQUIRE(std::abs(joint.amplitudes()[5]) < 1e-12);
}

TEST_CASE("bell states have the expected amplitudes") {
    const auto psi_minus = bell_state(Bell::PsiMinus);
    REQUIRE(std::abs(psi_minus.amplitudes()[1] - Complex(kInvSqrt2)) < 1e-12);
    REQUIRE(std::abs(psi_minus.amplitudes()[2] - Complex(-kInvSqrt2)) < 1e-12);
    const auto phi_minus = bell_state(Bell::PhiMinus);
    REQUIRE(std::abs(phi_minus.amplitudes()[0] - Complex(kInvSqrt2)) < 1e-12);
    REQUIRE(std::abs(phi_minus.amplitudes()[3] - Complex(-kInvSqrt2)) < 1e-12);
    const auto psi_plus = bell_state(Bell::PsiPlus);
    REQUIRE(std::abs(psi_plus.amplitudes()[1] - Complex(kInvSqrt2)) < 1e-12);
    REQUIRE(std::abs(psi_plus.amplitudes()[2] - Complex(kInvSqrt2)) < 1e-12);
}

TEST_CASE("ghz and w states") {
    const auto ghz = ghz_state(4);
    REQUIRE(ghz.layout().dims().size() == 4);
    REQUIRE(std::abs(ghz.amplitudes()[0] - Complex(kInvSqrt2)) < 1e-12);
    REQUIRE(std::abs(ghz.amplitudes()[15] - Complex(kInvSqrt2)) < 1e-12);
    REQUIRE_THROWS_AS(ghz_state(1), RangeError);

    const auto w = w_state();
    const double r = 1.0 / std::sqrt(3.0);
    REQUIRE(std::abs(w.amplitudes()[1] - Complex(r)) < 1e-12);
    REQUIRE(std::abs(w.amplitudes()[2] - Complex(r)) < 1e-12);
    REQUIRE(std::abs(w.amplitudes()[4] - Complex(r)) < 1e-12);
    REQUIRE(std::abs(w.amplitudes()[0]) < 1e-12);
}

TEST_CASE("maximally entangled qudit pairs") {
    const auto phi3 = max_entangled_state(3);
    REQUIRE(phi3.layout().dims() == std::vector<std::size_t>{3, 3});
    const double r = 1.0 / std::sqrt(3.0);
    REQUIRE(std::abs(phi3.amplitudes()[0] - Complex(r)) < 1e-12);
    REQUIRE(std::abs(phi3.amplitudes()[4] - Complex(r)) < 1e-12);
    REQUIRE(std::abs(phi3.amplitudes()[8] - Complex(r)) < 1e-12);
    REQUIRE_THROWS_AS(max_entangled_state(1), RangeError);
}

TEST_CASE("partially entangled pairs interpolate between product and maximally entangled") {
    const double theta = std::numbers::pi / 6.0;
    const auto st = partially_entangled_state(theta);
    REQUIRE(std::abs(st.amplitudes()[0] - Complex(std::cos(theta))) < 1e-12);
    REQUIRE(std::abs(st.amplitudes()[3] - Complex(std::sin(theta))) < 1e-12);
    REQUIRE_THROWS_AS(partially_entangled_state(-0.1), RangeError);
    REQUIRE_THROWS_AS(partially_entangled_state(2.0), RangeError);
}

TEST_CASE("the reduced pair of the three-qubit symmetric state") {
    const auto rho = w_reduced_state();
    REQUIRE(std::abs(rho.matrix()(0, 0) - Complex(1.0 / 3.0)) < 1e-12);
    REQUIRE(std::abs(rho.matrix()(1, 1) - Complex(1.0 / 3.0)) < 1e-12);
    REQUIRE(std::abs(rho.matrix()(1, 2) - Complex(1.0 / 3.0)) < 1e-12);
    REQUIRE(std::abs(rho.matrix()(3, 3)) < 1e-12);
}

TEST_CASE("standard_state resolves every builtin family") {
    REQUIRE(std::get<PureState>(standard_state("bell:phi+")).layout().total_dim() == 4);
    REQUIRE(std::get<PureState>(standard_state("bell:psi-")).layout().total_dim() == 4);
    REQUIRE(std::get<PureState>(standard_state("ghz:3")).layout().total_dim() == 8);
    REQUIRE(std::get<PureState>(standard_state("w")).layout().total_dim() == 8);
    REQUIRE(std::get<PureState>(standard_state("phid:3")).layout().total_dim() == 9);
    REQUIRE(std::get<PureState>(standard_state("partial:0.5")).layout().total_dim() == 4);
    REQUIRE(std::get<DensityOperator>(standard_state("maxmixed:3")).layout().total_dim() == 9);
    REQUIRE(std::get<DensityOperator>(standard_state("wreduced")).layout().total_dim() == 4);
    REQUIRE(std::get<DensityOperator>(standard_state("sepexample")).layout().total_dim() == 4);
}

TEST_CASE("standard_state rejects unknown names and malformed arguments") {
    REQUIRE_THROWS_AS(standard_state("bloch"), UnknownNameError);
    REQUIRE_THROWS_AS(standard_state("bell:zz"), UnknownNameError);
    REQUIRE_THROWS_AS(standard_state("ghz:x"), ParseError);
    REQUIRE_THROWS_AS(standard_state("ghz:"), ParseError);
    REQUIRE_THROWS_AS(standard_state("partial:abc"), ParseError);
    REQUIRE_THROWS_AS(standard_state("maxmixed:0"), RangeError);
    REQUIRE(is_standard_state_name("ghz:3"));
    REQUIRE(is_standard_state_name("w"));
    REQUIRE_FALSE(is_standard_state_name("states/foo.json"));
}
