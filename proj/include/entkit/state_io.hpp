#pragma once

#include <string>
#include <variant>

#include "entkit/states.hpp"

// Reading and writing states as JSON documents, plus resolution of the
// CLI's state arguments (built-in name or file path). The format:
//
//   {"kind": "pure",  "dims": [2, 2], "data": [[re, im], ...]}
//   {"kind": "mixed", "dims": [2, 2], "data": [[[re, im], ...], ...]}
//
// Pure data lists one [re, im] pair per amplitude; mixed data lists the
// full matrix row by row. Normalization and Hermiticity are accepted
// within 1e-8 on load and repaired exactly; violations beyond that are
// errors. Writing uses 17 significant digits, enough to round-trip
// doubles losslessly.

namespace entkit {

using LoadedState = std::variant<PureState, DensityOperator>;

LoadedState parse_state_text(const std::string& text);
LoadedState load_state_file(const std::string& path);

std::string format_state(const LoadedState& state);
void save_state_file(const LoadedState& state, const std::string& path);

// Built-in name if it looks like one, otherwise a file path. Name lookup
// failures surface as ParseError so the CLI can report them uniformly.
LoadedState resolve_state(const std::string& spec);

// View any loaded state as a density operator.
DensityOperator as_density(const LoadedState& state);

// Printf-style %.*g formatting used for all numeric output.
std::string format_real(double value, int significant_digits);

}  // namespace entkit
