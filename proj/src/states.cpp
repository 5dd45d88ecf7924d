#include "entkit/states.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "indexing.hpp"

namespace entkit {

using detail::check_subsystems;
using detail::complement_of;
using detail::digit_of;
using detail::group_offsets;
using detail::strides_of;

namespace {

PureState make_pure(std::vector<std::size_t> dims, Vector amps) {
    return PureState(SubsystemLayout(std::move(dims)), std::move(amps));
}

}  // namespace

SubsystemLayout::SubsystemLayout(std::vector<std::size_t> dims)
    : dims_(std::move(dims)) {
    if (dims_.empty())
        throw LayoutError("SubsystemLayout: no factors given");
    for (std::size_t d : dims_) {
        if (d < 2)
            throw LayoutError("SubsystemLayout: factor dimension " +
                              std::to_string(d) + " is below 2");
        total_ *= d;
    }
}

std::size_t SubsystemLayout::dim(std::size_t i) const {
    if (i >= dims_.size())
        throw IndexError("SubsystemLayout: subsystem index " +
                         std::to_string(i) + " out of range");
    return dims_[i];
}

PureState::PureState(SubsystemLayout layout, Vector amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dim())
        throw DimensionError("PureState: " + std::to_string(amplitudes_.size()) +
                             " amplitudes for a layout of total dimension " +
                             std::to_string(layout_.total_dim()));
    if (std::abs(amplitudes_.norm() - 1.0) > kHermitianTol)
        throw ValidationError("PureState: amplitudes are not normalized within 1e-10");
}

DensityOperator::DensityOperator(SubsystemLayout layout, Matrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
    const auto n = static_cast<Eigen::Index>(layout_.total_dim());
    if (matrix_.rows() != n || matrix_.cols() != n)
        throw DimensionError("DensityOperator: matrix is " +
                             std::to_string(matrix_.rows()) + "x" +
                             std::to_string(matrix_.cols()) +
                             " but the layout has total dimension " +
                             std::to_string(n));
    if (!is_hermitian(matrix_))
        throw NotHermitianError("DensityOperator: matrix is not Hermitian within 1e-10");
    if (std::abs(matrix_.trace().real() - 1.0) > kHermitianTol)
        throw ValidationError("DensityOperator: trace differs from 1 by more than 1e-10");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues()[0] < -kPsdTol)
        throw NotPsdError("DensityOperator: eigenvalue " +
                          std::to_string(solver.eigenvalues()[0]) + " below -1e-9");
}

Ensemble::Ensemble(std::vector<EnsembleItem> items) : items_(std::move(items)) {
    if (items_.empty())
        throw ValidationError("Ensemble: no members");
    double total = 0.0;
    for (const auto& item : items_) {
        if (!(item.probability >= 0.0))
            throw ValidationError("Ensemble: negative probability");
        if (!(item.state.layout() == items_.front().state.layout()))
            throw LayoutError("Ensemble: members live on different layouts");
        total += item.probability;
    }
    if (std::abs(total - 1.0) > kHermitianTol)
        throw ValidationError("Ensemble: probabilities sum to " +
                              std::to_string(total) + ", not 1");
}

DensityOperator density_from_pure(const PureState& psi) {
    return DensityOperator(psi.layout(),
                           psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityOperator mix(const Ensemble& ensemble) {
    const auto& items = ensemble.items();
    const auto n = static_cast<Eigen::Index>(items.front().state.dim());
    Matrix out = Matrix::Zero(n, n);
    for (const auto& item : items)
        out += item.probability * item.state.amplitudes() *
               item.state.amplitudes().adjoint();
    return DensityOperator(items.front().state.layout(), std::move(out));
}

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::size_t>& keep) {
    const auto& dims = rho.layout().dims();
    check_subsystems(rho.layout(), keep, "partial_trace");
    const auto strides = strides_of(dims);
    const auto traced = complement_of(rho.layout(), keep);

    const auto keep_offsets = group_offsets(keep, dims, strides);
    std::vector<std::size_t> traced_offsets{0};
    if (!traced.empty()) traced_offsets = group_offsets(traced, dims, strides);

    const auto dk = static_cast<Eigen::Index>(keep_offsets.size());
    Matrix out = Matrix::Zero(dk, dk);
    for (Eigen::Index i = 0; i < dk; ++i)
        for (Eigen::Index j = 0; j < dk; ++j)
            for (std::size_t t : traced_offsets)
                out(i, j) += rho.matrix()(keep_offsets[i] + t, keep_offsets[j] + t);

    std::vector<std::size_t> kept_dims;
    for (std::size_t s : keep) kept_dims.push_back(dims[s]);
    return DensityOperator(SubsystemLayout(std::move(kept_dims)), std::move(out));
}

Matrix partial_transpose(const DensityOperator& rho,
                         const std::vector<std::size_t>& subsystems) {
    const auto& dims = rho.layout().dims();
    check_subsystems(rho.layout(), subsystems, "partial_transpose");
    const auto strides = strides_of(dims);
    const auto n = static_cast<Eigen::Index>(rho.dim());
    Matrix out(n, n);
    for (Eigen::Index row = 0; row < n; ++row) {
        for (Eigen::Index col = 0; col < n; ++col) {
            // Swap the row and column digits of each transposed factor.
            std::ptrdiff_t shift = 0;
            for (std::size_t s : subsystems) {
                const auto rd = static_cast<std::ptrdiff_t>(
                    digit_of(row, s, dims, strides));
                const auto cd = static_cast<std::ptrdiff_t>(
                    digit_of(col, s, dims, strides));
                shift += (cd - rd) * static_cast<std::ptrdiff_t>(strides[s]);
            }
            out(row + shift, col - shift) = rho.matrix()(row, col);
        }
    }
    return out;
}

double min_pt_eigenvalue(const DensityOperator& rho,
                         const std::vector<std::size_t>& side_a) {
    check_subsystems(rho.layout(), side_a, "min_pt_eigenvalue");
    const auto side_b = complement_of(rho.layout(), side_a);
    if (side_b.empty())
        throw IndexError("min_pt_eigenvalue: the cut must leave both sides non-empty");
    const auto eig = hermitian_eig(partial_transpose(rho, side_b));
    return eig.eigenvalues[eig.eigenvalues.size() - 1];
}

bool is_ppt(const DensityOperator& rho, const std::vector<std::size_t>& side_a) {
    return min_pt_eigenvalue(rho, side_a) >= -kPsdTol;
}

double fidelity_phi_plus(const DensityOperator& rho) {
    if (rho.layout().dims() != std::vector<std::size_t>{2, 2})
        throw LayoutError("fidelity_phi_plus: state is not on a 2x2 layout");
    const auto& m = rho.matrix();
    const double f = 0.5 * (m(0, 0) + m(0, 3) + m(3, 0) + m(3, 3)).real();
    return std::clamp(f, 0.0, 1.0);
}

PureState tensor(const PureState& a, const PureState& b) {
    std::vector<std::size_t> dims = a.layout().dims();
    dims.insert(dims.end(), b.layout().dims().begin(), b.layout().dims().end());
    const auto na = a.amplitudes().size();
    const auto nb = b.amplitudes().size();
    Vector amps(na * nb);
    for (Eigen::Index i = 0; i < na; ++i)
        amps.segment(i * nb, nb) = a.amplitudes()[i] * b.amplitudes();
    return make_pure(std::move(dims), std::move(amps));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
    std::vector<std::size_t> dims = a.layout().dims();
    dims.insert(dims.end(), b.layout().dims().begin(), b.layout().dims().end());
    return DensityOperator(SubsystemLayout(std::move(dims)),
                           kron(a.matrix(), b.matrix()));
}

PureState bell_state(Bell which) {
    const double r = 1.0 / std::numbers::sqrt2;
    Vector amps = Vector::Zero(4);
    switch (which) {
        case Bell::PsiMinus: amps[1] = r; amps[2] = -r; break;
        case Bell::PsiPlus:  amps[1] = r; amps[2] = r;  break;
        case Bell::PhiMinus: amps[0] = r; amps[3] = -r; break;
        case Bell::PhiPlus:  amps[0] = r; amps[3] = r;  break;
    }
    return make_pure({2, 2}, std::move(amps));
}

PureState ghz_state(std::size_t parties) {
    if (parties < 2)
        throw RangeError("ghz_state: needs at least 2 parties");
    if (parties > 20)
        throw RangeError("ghz_state: refusing more than 20 qubits");
    Vector amps = Vector::Zero(std::size_t{1} << parties);
    amps[0] = amps[amps.size() - 1] = 1.0 / std::numbers::sqrt2;
    return make_pure(std::vector<std::size_t>(parties, 2), std::move(amps));
}

PureState w_state() {
    const double r = 1.0 / std::sqrt(3.0);
    Vector amps = Vector::Zero(8);
    amps[4] = amps[2] = amps[1] = r;  // |100>, |010>, |001>
    return make_pure({2, 2, 2}, std::move(amps));
}

PureState max_entangled_state(std::size_t d) {
    if (d < 2)
        throw RangeError("max_entangled_state: local dimension must be at least 2");
    const double r = 1.0 / std::sqrt(static_cast<double>(d));
    Vector amps = Vector::Zero(d * d);
    for (std::size_t i = 0; i < d; ++i) amps[i * d + i] = r;
    return make_pure({d, d}, std::move(amps));
}

PureState partially_entangled_state(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2))
        throw RangeError("partially_entangled_state: theta must lie in [0, pi/2]");
    Vector amps = Vector::Zero(4);
    amps[0] = std::cos(theta);
    amps[3] = std::sin(theta);
    return make_pure({2, 2}, std::move(amps));
}

DensityOperator w_reduced_state() {
    const auto psi_plus = density_from_pure(bell_state(Bell::PsiPlus)).matrix();
    Matrix m = (2.0 / 3.0) * psi_plus;
    m(0, 0) += 1.0 / 3.0;
    return DensityOperator(SubsystemLayout({2, 2}), std::move(m));
}

DensityOperator max_mixed_state(std::size_t d) {
    if (d < 2)
        throw RangeError("max_mixed_state: local dimension must be at least 2");
    const auto n = static_cast<Eigen::Index>(d * d);
    return DensityOperator(SubsystemLayout({d, d}),
                           Matrix::Identity(n, n) / static_cast<double>(n));
}

DensityOperator separable_example_state() {
    // Mixture of two product states whose matrix has no real off-diagonal
    // entries; PPT and genuinely separable despite not looking like it.
    const double s = std::numbers::sqrt2;
    const Complex i{0.0, 1.0};
    Matrix m(4, 4);
    m << 3.0 / 24.0, s / 24.0 * i, 0.0, s / 12.0 * i,
        -s / 24.0 * i, 6.0 / 24.0, -s / 12.0 * i, 0.0,
        0.0, s / 12.0 * i, 5.0 / 24.0, -s / 24.0 * i,
        -s / 12.0 * i, 0.0, s / 24.0 * i, 10.0 / 24.0;
    return DensityOperator(SubsystemLayout({2, 2}), std::move(m));
}

namespace {

std::size_t parse_count(const std::string& head, const std::string& arg) {
    if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(head + ": expected a positive integer after ':', got '" +
                         arg + "'");
    return static_cast<std::size_t>(std::stoull(arg));
}

double parse_real(const std::string& head, const std::string& arg) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(arg, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != arg.size() || arg.empty())
        throw ParseError(head + ": expected a real number after ':', got '" +
                         arg + "'");
    return value;
}

}  // namespace

std::variant<PureState, DensityOperator> standard_state(const std::string& name) {
    const auto colon = name.find(':');
    const std::string head = name.substr(0, colon);
    const std::string arg =
        colon == std::string::npos ? "" : name.substr(colon + 1);

    if (head == "bell") {
        if (arg == "psi-") return bell_state(Bell::PsiMinus);
        if (arg == "psi+") return bell_state(Bell::PsiPlus);
        if (arg == "phi-") return bell_state(Bell::PhiMinus);
        if (arg == "phi+") return bell_state(Bell::PhiPlus);
        throw UnknownNameError("standard_state: unknown Bell label '" + arg +
                               "' (expected psi-, psi+, phi-, phi+)");
    }
    if (head == "ghz") return ghz_state(parse_count(head, arg));
    if (head == "maxmixed") return max_mixed_state(parse_count(head, arg));
    if (head == "phid") return max_entangled_state(parse_count(head, arg));
    if (head == "partial") return partially_entangled_state(parse_real(head, arg));
    if (colon == std::string::npos) {
        if (name == "w") return w_state();
        if (name == "wreduced") return w_reduced_state();
        if (name == "sepexample") return separable_example_state();
    }
    throw UnknownNameError("standard_state: unknown state name '" + name + "'");
}

bool is_standard_state_name(const std::string& name) {
    const std::string head = name.substr(0, name.find(':'));
    for (const char* known :
         {"bell", "ghz", "w", "wreduced", "maxmixed", "partial", "phid",
          "sepexample"})
        if (head == known) return true;
    return false;
}

}  // namespace entkit
