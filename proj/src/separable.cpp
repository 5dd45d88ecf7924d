#include "entkit/mixed_measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "indexing.hpp"

// Distance from a state to the separable set, minimized over explicit
// product ensembles sigma = sum_k w_k |a_k><a_k| (x) |b_k><b_k|. The
// ensemble is parameterized by weight logits (softmax keeps the mixture on
// the simplex) and unnormalized local vectors, and tuned by Adam. The
// relative-entropy and trace objectives use exact gradients through the
// eigendecomposition of sigma; Bures falls back to central differences.

namespace entkit {

namespace {

constexpr double kMixEps = 1e-9;  // keeps sigma full rank during the search

// rho reindexed so side A forms one contiguous factor and side B the
// other; map[] routes grouped indices back to the original basis.
struct GroupedProblem {
    Eigen::Index dim_a = 0;
    Eigen::Index dim_b = 0;
    Matrix rho;
    std::vector<std::size_t> map;
};

GroupedProblem group_across_cut(const DensityOperator& rho,
                                const std::vector<std::size_t>& side_a) {
    const auto& layout = rho.layout();
    detail::check_subsystems(layout, side_a, "distance_to_separable");
    const auto side_b = detail::complement_of(layout, side_a);
    if (side_b.empty())
        throw IndexError(
            "distance_to_separable: the cut must leave both sides non-empty");
    const auto strides = detail::strides_of(layout.dims());
    const auto offs_a = detail::group_offsets(side_a, layout.dims(), strides);
    const auto offs_b = detail::group_offsets(side_b, layout.dims(), strides);

    GroupedProblem out;
    out.dim_a = static_cast<Eigen::Index>(offs_a.size());
    out.dim_b = static_cast<Eigen::Index>(offs_b.size());
    out.map.reserve(offs_a.size() * offs_b.size());
    for (std::size_t a = 0; a < offs_a.size(); ++a)
        for (std::size_t b = 0; b < offs_b.size(); ++b)
            out.map.push_back(offs_a[a] + offs_b[b]);
    const auto n = static_cast<Eigen::Index>(out.map.size());
    out.rho.resize(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
            out.rho(r, c) = rho.matrix()(out.map[r], out.map[c]);
    return out;
}

// Flat parameter vector layout: K weight logits, then for each term the
// real/imaginary parts of the side-A vector followed by the side-B vector.
struct Parameterization {
    Eigen::Index terms;
    Eigen::Index dim_a;
    Eigen::Index dim_b;

    Eigen::Index per_term() const { return 2 * (dim_a + dim_b); }
    Eigen::Index total() const { return terms * (1 + per_term()); }
    Eigen::Index a_start(Eigen::Index k) const { return terms + k * per_term(); }
    Eigen::Index b_start(Eigen::Index k) const {
        return a_start(k) + 2 * dim_a;
    }
};

Vector decode_vector(const Eigen::VectorXd& params, Eigen::Index start,
                     Eigen::Index dim) {
    Vector v(dim);
    for (Eigen::Index m = 0; m < dim; ++m)
        v[m] = Complex(params[start + 2 * m], params[start + 2 * m + 1]);
    return v;
}

struct EnsembleTerms {
    std::vector<double> weights;            // softmax of the logits
    std::vector<Vector> a, b;               // raw, unnormalized
    std::vector<double> ga, gb;             // squared norms
    std::vector<Matrix> proj_a, proj_b;     // normalized projectors
    Matrix sigma;                           // assembled mixture
};

EnsembleTerms decode(const Parameterization& shape,
                     const Eigen::VectorXd& params) {
    EnsembleTerms t;
    const Eigen::Index k_count = shape.terms;
    const double logit_max = params.head(k_count).maxCoeff();
    double z = 0.0;
    for (Eigen::Index k = 0; k < k_count; ++k) {
        t.weights.push_back(std::exp(params[k] - logit_max));
        z += t.weights.back();
    }
    for (auto& w : t.weights) w /= z;

    const auto n = shape.dim_a * shape.dim_b;
    t.sigma = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < k_count; ++k) {
        Vector a = decode_vector(params, shape.a_start(k), shape.dim_a);
        Vector b = decode_vector(params, shape.b_start(k), shape.dim_b);
        // The tiny ridge keeps a collapsed vector from producing NaNs.
        const double ga = a.squaredNorm() + 1e-30;
        const double gb = b.squaredNorm() + 1e-30;
        t.proj_a.push_back((a * a.adjoint()) / ga);
        t.proj_b.push_back((b * b.adjoint()) / gb);
        t.a.push_back(std::move(a));
        t.b.push_back(std::move(b));
        t.ga.push_back(ga);
        t.gb.push_back(gb);
        t.sigma += t.weights[k] * kron(t.proj_a[k], t.proj_b[k]);
    }
    return t;
}

Matrix mixed_sigma(const Matrix& sigma) {
    const auto n = sigma.rows();
    return (1.0 - kMixEps) * sigma +
           (kMixEps / static_cast<double>(n)) * Matrix::Identity(n, n);
}

// Objective value plus, when available, the adjoint matrix G with
// d cost = Re tr(G d sigma_mixed). Bures reports no gradient and the
// optimizer falls back to finite differences.
struct Objective {
    double value = 0.0;
    bool has_gradient = false;
    Matrix adjoint;
};

class DistanceObjective {
public:
    DistanceObjective(const Matrix& rho, DistanceKind kind)
        : rho_(rho), kind_(kind) {
        if (kind_ == DistanceKind::RelativeEntropy) {
            const auto eig = hermitian_eig(rho_);
            const double cutoff = eig.eigenvalues[0] * kSupportRelTol;
            for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
                const double ri = eig.eigenvalues[i];
                if (ri > cutoff && ri > 0.0) rho_entropy_ += ri * std::log2(ri);
            }
        }
    }

    Objective evaluate(const Matrix& sigma, bool want_gradient) const {
        switch (kind_) {
            case DistanceKind::RelativeEntropy:
                return relative_entropy_objective(sigma, want_gradient);
            case DistanceKind::Trace:
                return trace_objective(sigma, want_gradient);
            case DistanceKind::Bures:
                return bures_objective(sigma);
        }
        throw Error("distance_to_separable: unknown distance kind");
    }

private:
    Objective relative_entropy_objective(const Matrix& sigma,
                                         bool want_gradient) const {
        const auto eig = hermitian_eig(sigma);
        const auto n = eig.eigenvalues.size();
        const Matrix w = eig.eigenvectors.adjoint() * rho_ * eig.eigenvectors;
        Objective out;
        out.value = rho_entropy_;
        for (Eigen::Index i = 0; i < n; ++i)
            out.value -= w(i, i).real() * std::log2(eig.eigenvalues[i]);
        if (!want_gradient) return out;

        // d tr(rho log2 sigma)[H] = tr(G H) with G built from the divided
        // differences of log2 across sigma's eigenbasis.
        Matrix t(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                const double si = eig.eigenvalues[i];
                const double sj = eig.eigenvalues[j];
                double f;
                if (std::abs(si - sj) > 1e-12 * std::max(si, sj))
                    f = (std::log2(si) - std::log2(sj)) / (si - sj);
                else
                    f = 1.0 / (0.5 * (si + sj) * std::numbers::ln2);
                t(i, j) = f * w(i, j);
            }
        }
        out.has_gradient = true;
        out.adjoint = -(eig.eigenvectors * t * eig.eigenvectors.adjoint());
        return out;
    }

    Objective trace_objective(const Matrix& sigma, bool want_gradient) const {
        const auto eig = hermitian_eig(rho_ - sigma);
        Objective out;
        for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
            out.value += std::abs(eig.eigenvalues[i]);
        if (!want_gradient) return out;

        // Subgradient of the trace norm: sign of the difference operator.
        RealVector signs(eig.eigenvalues.size());
        for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
            signs[i] = eig.eigenvalues[i] >= 0.0 ? -1.0 : 1.0;
        out.has_gradient = true;
        out.adjoint = eig.eigenvectors * signs.cast<Complex>().asDiagonal() *
                      eig.eigenvectors.adjoint();
        return out;
    }

    Objective bures_objective(const Matrix& sigma) const {
        const Matrix root = psd_sqrt(sigma);
        const auto eig = hermitian_eig(root * rho_ * root);
        double trace_of_root = 0.0;
        for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
            trace_of_root += std::sqrt(std::max(eig.eigenvalues[i], 0.0));
        Objective out;
        out.value = 2.0 - 2.0 * std::min(trace_of_root, 1.0);
        return out;
    }

    Matrix rho_;
    DistanceKind kind_;
    double rho_entropy_ = 0.0;
};

// Gradient of the objective with respect to the flat parameters, given the
// adjoint matrix G on the composite space.
Eigen::VectorXd chain_gradient(const Parameterization& shape,
                               const EnsembleTerms& t, const Matrix& g) {
    const Eigen::Index da = shape.dim_a;
    const Eigen::Index db = shape.dim_b;
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(shape.total());

    // tr(G sigma) enters every weight derivative.
    const double g_sigma = (g * t.sigma).trace().real();

    for (Eigen::Index k = 0; k < shape.terms; ++k) {
        // Partial contractions: tr(G (A (x) B)) = tr(contract_b A) with
        // contract_b(i, i') = sum_{j j'} G[(i j), (i' j')] B(j', j).
        Matrix ca = Matrix::Zero(da, da);
        Matrix cb = Matrix::Zero(db, db);
        for (Eigen::Index i = 0; i < da; ++i)
            for (Eigen::Index ip = 0; ip < da; ++ip)
                for (Eigen::Index j = 0; j < db; ++j)
                    for (Eigen::Index jp = 0; jp < db; ++jp) {
                        const Complex gij = g(i * db + j, ip * db + jp);
                        ca(i, ip) += gij * t.proj_b[k](jp, j);
                        cb(j, jp) += gij * t.proj_a[k](ip, i);
                    }

        const double g_term = (ca * t.proj_a[k]).trace().real();
        grad[k] = (1.0 - kMixEps) * t.weights[k] * (g_term - g_sigma);

        // Side A components. With f = a a† and g_a = a† a, the projector
        // is f / g_a, and its derivative against Re/Im a_m contracts with
        // ca into row sums, column sums, and one full trace.
        const Vector u = ca.adjoint() * t.a[k];   // conj(u_m) = (a† ca)_m
        const Vector v = ca * t.a[k];
        const Complex ca_proj = (ca * t.proj_a[k]).trace();
        const double scale = (1.0 - kMixEps) * t.weights[k];
        for (Eigen::Index m = 0; m < da; ++m) {
            const Complex re_part =
                (std::conj(u[m]) + v[m] - ca_proj * 2.0 * t.a[k][m].real()) /
                t.ga[k];
            const Complex im_part =
                (Complex(0, 1) * (std::conj(u[m]) - v[m]) -
                 ca_proj * 2.0 * t.a[k][m].imag()) /
                t.ga[k];
            grad[shape.a_start(k) + 2 * m] = scale * re_part.real();
            grad[shape.a_start(k) + 2 * m + 1] = scale * im_part.real();
        }

        const Vector ub = cb.adjoint() * t.b[k];
        const Vector vb = cb * t.b[k];
        const Complex cb_proj = (cb * t.proj_b[k]).trace();
        for (Eigen::Index m = 0; m < db; ++m) {
            const Complex re_part =
                (std::conj(ub[m]) + vb[m] - cb_proj * 2.0 * t.b[k][m].real()) /
                t.gb[k];
            const Complex im_part =
                (Complex(0, 1) * (std::conj(ub[m]) - vb[m]) -
                 cb_proj * 2.0 * t.b[k][m].imag()) /
                t.gb[k];
            grad[shape.b_start(k) + 2 * m] = scale * re_part.real();
            grad[shape.b_start(k) + 2 * m + 1] = scale * im_part.real();
        }
    }
    return grad;
}

struct RestartOutcome {
    double best = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_params;
    int iterations = 0;
    double window_improvement = 0.0;
    bool converged = false;
};

RestartOutcome run_restart(const Parameterization& shape,
                           const DistanceObjective& objective,
                           const SeparableSearchOptions& options,
                           std::mt19937_64& rng) {
    std::normal_distribution<double> unit(0.0, 1.0);
    Eigen::VectorXd params(shape.total());
    for (Eigen::Index i = 0; i < shape.terms; ++i) params[i] = 0.3 * unit(rng);
    for (Eigen::Index i = shape.terms; i < shape.total(); ++i)
        params[i] = unit(rng);

    auto cost_of = [&](const Eigen::VectorXd& p, bool want_gradient) {
        const EnsembleTerms t = decode(shape, p);
        Objective obj = objective.evaluate(mixed_sigma(t.sigma), want_gradient);
        return std::pair<Objective, EnsembleTerms>(std::move(obj), t);
    };

    // Adam state.
    Eigen::VectorXd m = Eigen::VectorXd::Zero(shape.total());
    Eigen::VectorXd v = Eigen::VectorXd::Zero(shape.total());
    const double lr = 0.05, beta1 = 0.9, beta2 = 0.999, adam_eps = 1e-8;
    const double fd_step = 1e-5;

    RestartOutcome out;
    std::vector<double> best_history;
    Eigen::VectorXd grad(shape.total());

    for (int iter = 0; iter < options.max_iterations; ++iter) {
        auto [obj, terms] = cost_of(params, true);
        if (std::isfinite(obj.value) && obj.value < out.best) {
            out.best = obj.value;
            out.best_params = params;
        }
        best_history.push_back(out.best);
        out.iterations = iter + 1;

        if (iter >= options.patience) {
            out.window_improvement =
                best_history[iter - options.patience] - out.best;
            if (out.window_improvement < options.tolerance) {
                out.converged = true;
                break;
            }
        }

        if (obj.has_gradient) {
            grad = chain_gradient(shape, terms, obj.adjoint);
        } else {
            // Central finite differences, for objectives without an
            // analytic adjoint.
            Eigen::VectorXd probe = params;
            for (Eigen::Index p = 0; p < shape.total(); ++p) {
                probe[p] = params[p] + fd_step;
                const double up = cost_of(probe, false).first.value;
                probe[p] = params[p] - fd_step;
                const double down = cost_of(probe, false).first.value;
                probe[p] = params[p];
                grad[p] = (up - down) / (2.0 * fd_step);
            }
        }

        const double bc1 = 1.0 - std::pow(beta1, iter + 1);
        const double bc2 = 1.0 - std::pow(beta2, iter + 1);
        for (Eigen::Index p = 0; p < shape.total(); ++p) {
            m[p] = beta1 * m[p] + (1.0 - beta1) * grad[p];
            v[p] = beta2 * v[p] + (1.0 - beta2) * grad[p] * grad[p];
            params[p] -= lr * (m[p] / bc1) / (std::sqrt(v[p] / bc2) + adam_eps);
        }
    }
    return out;
}

}  // namespace

DensityOperator SeparableApproximation::assemble(
    const SubsystemLayout& layout, const std::vector<std::size_t>& side_a) const {
    detail::check_subsystems(layout, side_a, "SeparableApproximation::assemble");
    const auto side_b = detail::complement_of(layout, side_a);
    if (side_b.empty())
        throw IndexError(
            "SeparableApproximation::assemble: the cut must leave both sides "
            "non-empty");
    const auto strides = detail::strides_of(layout.dims());
    const auto offs_a = detail::group_offsets(side_a, layout.dims(), strides);
    const auto offs_b = detail::group_offsets(side_b, layout.dims(), strides);

    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    Matrix grouped = Matrix::Zero(n, n);
    for (std::size_t k = 0; k < weights.size(); ++k) {
        Vector prod(n);
        const auto& [a, b] = product_states[k];
        for (Eigen::Index i = 0; i < a.size(); ++i)
            prod.segment(i * b.size(), b.size()) = a[i] * b;
        grouped += weights[k] * (prod * prod.adjoint());
    }

    std::vector<std::size_t> map;
    map.reserve(layout.total_dim());
    for (std::size_t a = 0; a < offs_a.size(); ++a)
        for (std::size_t b = 0; b < offs_b.size(); ++b)
            map.push_back(offs_a[a] + offs_b[b]);
    Matrix out = Matrix::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
            out(map[r], map[c]) = grouped(r, c);
    return DensityOperator(layout, std::move(out));
}

SeparableDistanceResult distance_to_separable(
    const DensityOperator& rho, const std::vector<std::size_t>& side_a,
    DistanceKind kind, const SeparableSearchOptions& options) {
    if (options.restarts < 1)
        throw RangeError("distance_to_separable: restarts must be at least 1");
    if (options.max_iterations < 1)
        throw RangeError("distance_to_separable: max_iterations must be at least 1");

    const GroupedProblem problem = group_across_cut(rho, side_a);
    Parameterization shape;
    shape.dim_a = problem.dim_a;
    shape.dim_b = problem.dim_b;
    shape.terms = options.ensemble_size
                      ? static_cast<Eigen::Index>(options.ensemble_size)
                      : problem.dim_a * problem.dim_a * problem.dim_b *
                            problem.dim_b;
    const DistanceObjective objective(problem.rho, kind);

    SeparableDistanceResult result;
    result.kind = kind;
    result.seed = options.seed;
    double best = std::numeric_limits<double>::infinity();
    RestartOutcome winner;
    for (int r = 0; r < options.restarts; ++r) {
        std::mt19937_64 rng(options.seed + 0x9E3779B9ULL * r);
        RestartOutcome outcome = run_restart(shape, objective, options, rng);
        result.iterations += outcome.iterations;
        if (outcome.best < best) {
            best = outcome.best;
            winner = std::move(outcome);
        }
    }

    if (winner.best_params.size() == 0)
        throw Error("distance_to_separable: every restart diverged");
    // All three distances are nonnegative; rounding inside the objective can
    // leave the optimum a few ulps below zero, so clamp.
    result.value = std::max(winner.best, 0.0);
    result.converged = winner.converged;
    result.achieved_tolerance = winner.window_improvement;

    const EnsembleTerms t = decode(shape, winner.best_params);
    result.closest.weights = t.weights;
    for (Eigen::Index k = 0; k < shape.terms; ++k)
        result.closest.product_states.emplace_back(
            t.a[k] / std::sqrt(t.ga[k]), t.b[k] / std::sqrt(t.gb[k]));
    return result;
}

SeparableDistanceResult bures_measure(const DensityOperator& rho,
                                      const std::vector<std::size_t>& side_a,
                                      const SeparableSearchOptions& options) {
    return distance_to_separable(rho, side_a, DistanceKind::Bures, options);
}

}  // namespace entkit
