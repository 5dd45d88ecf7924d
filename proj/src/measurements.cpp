#include "entkit/measurements.hpp"

#include <cmath>

namespace entkit {

namespace {
constexpr double kOutcomeFloor = 1e-12;
}

MeasurementSet::MeasurementSet(std::vector<Matrix> operators,
                               std::vector<std::string> labels)
    : operators_(std::move(operators)), labels_(std::move(labels)) {
    if (operators_.empty())
        throw ValidationError("MeasurementSet: no operators");
    const auto n = operators_.front().rows();
    for (const auto& op : operators_)
        if (op.rows() != n || op.cols() != n)
            throw DimensionError("MeasurementSet: operators differ in dimension");
    if (labels_.empty()) {
        labels_.reserve(operators_.size());
        for (std::size_t m = 0; m < operators_.size(); ++m)
            labels_.push_back(std::to_string(m));
    } else if (labels_.size() != operators_.size()) {
        throw CountError("MeasurementSet: " + std::to_string(labels_.size()) +
                         " labels for " + std::to_string(operators_.size()) +
                         " operators");
    }
}

bool MeasurementSet::is_complete(double tol) const {
    const auto n = operators_.front().rows();
    Matrix sum = Matrix::Zero(n, n);
    for (const auto& op : operators_) sum += op.adjoint() * op;
    return (sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= tol;
}

std::vector<MeasurementOutcome> measure(const DensityOperator& rho,
                                        const MeasurementSet& ms) {
    if (ms.dim() != rho.dim())
        throw DimensionError("measure: operators are " + std::to_string(ms.dim()) +
                             "-dimensional but the state is " +
                             std::to_string(rho.dim()));
    if (!ms.is_complete())
        throw ValidationError("measure: operators do not sum to the identity");
    std::vector<MeasurementOutcome> outcomes;
    outcomes.reserve(ms.size());
    for (std::size_t m = 0; m < ms.size(); ++m) {
        Matrix updated = ms.operators()[m] * rho.matrix() *
                         ms.operators()[m].adjoint();
        const double p = std::max(updated.trace().real(), 0.0);
        MeasurementOutcome outcome{ms.labels()[m], p, std::nullopt};
        if (p >= kOutcomeFloor)
            outcome.post_state = DensityOperator(rho.layout(), updated / p);
        outcomes.push_back(std::move(outcome));
    }
    return outcomes;
}

MeasurementSet with_conditional_unitaries(const MeasurementSet& ms,
                                          const std::vector<Matrix>& unitaries) {
    if (unitaries.size() != ms.size())
        throw CountError("with_conditional_unitaries: " +
                         std::to_string(unitaries.size()) + " unitaries for " +
                         std::to_string(ms.size()) + " outcomes");
    const auto n = static_cast<Eigen::Index>(ms.dim());
    std::vector<Matrix> corrected;
    corrected.reserve(ms.size());
    for (std::size_t m = 0; m < ms.size(); ++m) {
        const Matrix& u = unitaries[m];
        if (u.rows() != n || u.cols() != n)
            throw DimensionError("with_conditional_unitaries: unitary " +
                                 std::to_string(m) + " has the wrong dimension");
        if (((u.adjoint() * u) - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() >
            kHermitianTol)
            throw NotUnitaryError("with_conditional_unitaries: operator " +
                                  std::to_string(m) +
                                  " is not unitary within 1e-10");
        corrected.push_back(u * ms.operators()[m]);
    }
    return MeasurementSet(std::move(corrected), ms.labels());
}

MeasurementSet compose(const MeasurementSet& first,
                       const std::vector<MeasurementSet>& followups) {
    if (followups.size() != first.size())
        throw CountError("compose: " + std::to_string(followups.size()) +
                         " follow-up sets for " + std::to_string(first.size()) +
                         " outcomes");
    std::vector<Matrix> ops;
    std::vector<std::string> labels;
    for (std::size_t m = 0; m < first.size(); ++m) {
        const auto& follow = followups[m];
        if (follow.dim() != first.dim())
            throw DimensionError("compose: follow-up set " + std::to_string(m) +
                                 " has the wrong dimension");
        for (std::size_t k = 0; k < follow.size(); ++k) {
            ops.push_back(follow.operators()[k] * first.operators()[m]);
            labels.push_back(first.labels()[m] + "," + follow.labels()[k]);
        }
    }
    return MeasurementSet(std::move(ops), std::move(labels));
}

}  // namespace entkit
