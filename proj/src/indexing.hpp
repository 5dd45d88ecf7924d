#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "entkit/states.hpp"

// Internal mixed-radix index helpers shared by the modules that reshape
// composite-space indices (partial trace, Schmidt grouping, protocol
// embeddings). Not part of the public surface.

namespace entkit::detail {

// strides[i] = product of all dims to the right of factor i, so a basis
// index decomposes as sum_i digit_i * strides[i].
inline std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> s(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
    return s;
}

inline std::size_t digit_of(std::size_t index, std::size_t subsystem,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& strides) {
    return (index / strides[subsystem]) % dims[subsystem];
}

inline void check_subsystems(const SubsystemLayout& layout,
                             const std::vector<std::size_t>& subs,
                             const char* what) {
    if (subs.empty())
        throw IndexError(std::string(what) + ": subsystem list is empty");
    std::vector<bool> seen(layout.count(), false);
    for (std::size_t s : subs) {
        if (s >= layout.count())
            throw IndexError(std::string(what) + ": subsystem index " +
                             std::to_string(s) + " out of range for " +
                             std::to_string(layout.count()) + " factors");
        if (seen[s])
            throw IndexError(std::string(what) + ": subsystem index " +
                             std::to_string(s) + " listed twice");
        seen[s] = true;
    }
}

inline std::vector<std::size_t> complement_of(
    const SubsystemLayout& layout, const std::vector<std::size_t>& subs) {
    std::vector<bool> in(layout.count(), false);
    for (std::size_t s : subs) in[s] = true;
    std::vector<std::size_t> comp;
    for (std::size_t i = 0; i < layout.count(); ++i)
        if (!in[i]) comp.push_back(i);
    return comp;
}

// Offsets into the full index space contributed by the listed subsystems,
// one entry per joint basis state of the group. Enumeration order is
// mixed-radix over the group with its first listed factor most significant.
inline std::vector<std::size_t> group_offsets(
    const std::vector<std::size_t>& group,
    const std::vector<std::size_t>& dims,
    const std::vector<std::size_t>& strides) {
    std::size_t total = 1;
    for (std::size_t s : group) total *= dims[s];
    std::vector<std::size_t> offsets(total, 0);
    std::size_t repeat = total;
    for (std::size_t s : group) {
        repeat /= dims[s];
        for (std::size_t i = 0; i < total; ++i)
            offsets[i] += ((i / repeat) % dims[s]) * strides[s];
    }
    return offsets;
}

}  // namespace entkit::detail
