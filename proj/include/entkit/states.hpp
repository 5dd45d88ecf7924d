#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "entkit/linalg.hpp"

// Multipartite state types and the structural operations on them: partial
// trace, partial transpose, the PPT test, tensor products, and a set of
// named built-in states (Bell pairs, GHZ, W, and friends).

namespace entkit {

// Tensor factor dimensions, leftmost factor first. Basis index i of the
// composite space decomposes into mixed-radix digits with the leftmost
// factor most significant, so |a b c> sits at index (a d1 + b) d2 + c.
class SubsystemLayout {
public:
    explicit SubsystemLayout(std::vector<std::size_t> dims);

    std::size_t count() const { return dims_.size(); }
    std::size_t dim(std::size_t i) const;
    std::size_t total_dim() const { return total_; }
    const std::vector<std::size_t>& dims() const { return dims_; }

    bool operator==(const SubsystemLayout& other) const = default;

private:
    std::vector<std::size_t> dims_;
    std::size_t total_ = 1;
};

class PureState {
public:
    // Amplitudes must have length layout.total_dim() and unit norm within
    // 1e-10; throws ValidationError otherwise.
    PureState(SubsystemLayout layout, Vector amplitudes);

    const SubsystemLayout& layout() const { return layout_; }
    const Vector& amplitudes() const { return amplitudes_; }
    std::size_t dim() const { return layout_.total_dim(); }

private:
    SubsystemLayout layout_;
    Vector amplitudes_;
};

class DensityOperator {
public:
    // The matrix must be layout.total_dim() square, Hermitian within
    // 1e-10, unit trace within 1e-10, and have eigenvalues >= -1e-9.
    DensityOperator(SubsystemLayout layout, Matrix matrix);

    const SubsystemLayout& layout() const { return layout_; }
    const Matrix& matrix() const { return matrix_; }
    std::size_t dim() const { return layout_.total_dim(); }

private:
    SubsystemLayout layout_;
    Matrix matrix_;
};

struct EnsembleItem {
    double probability;
    PureState state;
};

// A probabilistic mixture of pure states on a common layout. Probabilities
// must be >= 0 and sum to 1 within 1e-10.
class Ensemble {
public:
    explicit Ensemble(std::vector<EnsembleItem> items);

    const std::vector<EnsembleItem>& items() const { return items_; }

private:
    std::vector<EnsembleItem> items_;
};

DensityOperator density_from_pure(const PureState& psi);
DensityOperator mix(const Ensemble& ensemble);

// Reduced density operator on the listed subsystems; the complement is
// traced out. The result's factors follow the order given in keep.
DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::size_t>& keep);

// Transpose the listed tensor factors only. The result is Hermitian but
// generally not positive, so it is returned as a plain matrix.
Matrix partial_transpose(const DensityOperator& rho,
                         const std::vector<std::size_t>& subsystems);

// Smallest eigenvalue of the partial transpose across the cut side_a vs
// the rest (the complement's factors are the ones transposed; the
// spectrum is the same either way).
double min_pt_eigenvalue(const DensityOperator& rho,
                         const std::vector<std::size_t>& side_a);

// Peres criterion: true iff the partial transpose across the cut has no
// eigenvalue below -1e-9. Necessary for separability in general and also
// sufficient in 2x2 and 2x3.
bool is_ppt(const DensityOperator& rho, const std::vector<std::size_t>& side_a);

// Overlap <phi+|rho|phi+> with the Bell state (|00> + |11>)/sqrt(2).
// Requires a two-qubit layout.
double fidelity_phi_plus(const DensityOperator& rho);

PureState tensor(const PureState& a, const PureState& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

// Built-in named states.
enum class Bell { PsiMinus, PsiPlus, PhiMinus, PhiPlus };

PureState bell_state(Bell which);
PureState ghz_state(std::size_t parties);       // (|0...0> + |1...1>)/sqrt(2)
PureState w_state();                            // (|100> + |010> + |001>)/sqrt(3)
PureState max_entangled_state(std::size_t d);   // sum_i |ii>/sqrt(d) on d x d
PureState partially_entangled_state(double theta);  // cos t |00> + sin t |11>
DensityOperator w_reduced_state();              // W with the last qubit traced out
DensityOperator max_mixed_state(std::size_t d); // identity/d^2 on d x d
DensityOperator separable_example_state();      // a separable 2x2 state that is
                                                // not obviously so by inspection

// Parses built-in state names: bell:{psi-,psi+,phi-,phi+}, ghz:n, w,
// wreduced, maxmixed:d, partial:theta, phid:d, sepexample. Throws
// UnknownNameError for anything else.
std::variant<PureState, DensityOperator> standard_state(const std::string& name);

// True if the string has the shape of a built-in name (used by the CLI to
// decide between name lookup and file loading).
bool is_standard_state_name(const std::string& name);

}  // namespace entkit
