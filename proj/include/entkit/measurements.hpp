#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entkit/states.hpp"

// Generalized measurements {M_m}: validation, application to density
// operators, conditional unitary corrections, and sequential composition.

namespace entkit {

struct MeasurementOutcome {
    std::string label;
    double probability;
    // Absent when the outcome probability is below 1e-12 (the
    // post-measurement state is undefined there).
    std::optional<DensityOperator> post_state;
};

// An indexed family of measurement operators on one space. Construction
// checks shape only; completeness (sum of M†M equal to the identity) is a
// separate query so that partially built sets can be inspected.
class MeasurementSet {
public:
    // Labels default to "0", "1", ... when omitted.
    explicit MeasurementSet(std::vector<Matrix> operators,
                            std::vector<std::string> labels = {});

    std::size_t size() const { return operators_.size(); }
    std::size_t dim() const { return operators_.front().rows(); }
    const std::vector<Matrix>& operators() const { return operators_; }
    const std::vector<std::string>& labels() const { return labels_; }

    // True iff sum_m M_m† M_m = identity within 1e-9 (max entry error).
    bool is_complete(double tol = 1e-9) const;

private:
    std::vector<Matrix> operators_;
    std::vector<std::string> labels_;
};

// Applies the measurement: outcome m occurs with probability
// tr(M_m rho M_m†) and leaves M_m rho M_m† / p(m). The set must be
// complete and match the state's dimension.
std::vector<MeasurementOutcome> measure(const DensityOperator& rho,
                                        const MeasurementSet& ms);

// Replaces each M_m by U_m M_m, modelling a correction applied after
// learning the outcome. Completeness is preserved. Each U_m must be
// unitary within 1e-10.
MeasurementSet with_conditional_unitaries(const MeasurementSet& ms,
                                          const std::vector<Matrix>& unitaries);

// Sequential composition: outcome m of the first set is followed by the
// m-th follow-up set, giving operators N_k M_m with labels "m,k".
MeasurementSet compose(const MeasurementSet& first,
                       const std::vector<MeasurementSet>& followups);

}  // namespace entkit
