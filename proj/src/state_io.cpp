#include "entkit/state_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace entkit {

namespace {

using nlohmann::json;

constexpr double kLoadTol = 1e-8;
constexpr double kRepairTrigger = 1e-12;

Complex parse_entry(const json& value, const char* where) {
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() ||
        !value[1].is_number())
        throw ParseError(std::string("state file: ") + where +
                         " must be [re, im] number pairs");
    return {value[0].get<double>(), value[1].get<double>()};
}

SubsystemLayout parse_layout(const json& doc) {
    if (!doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].empty())
        throw ParseError("state file: missing or malformed 'dims' list");
    std::vector<std::size_t> dims;
    for (const auto& d : doc["dims"]) {
        if (!d.is_number_unsigned() || d.get<std::uint64_t>() < 2)
            throw ParseError("state file: every dim must be an integer >= 2");
        dims.push_back(d.get<std::size_t>());
    }
    return SubsystemLayout(std::move(dims));
}

PureState parse_pure(const json& data, SubsystemLayout layout) {
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != n)
        throw ParseError("state file: pure data must list " +
                         std::to_string(n) + " amplitude pairs");
    Vector amps(n);
    for (Eigen::Index i = 0; i < n; ++i)
        amps[i] = parse_entry(data[i], "amplitudes");
    const double norm = amps.norm();
    if (std::abs(norm - 1.0) > kLoadTol)
        throw ValidationError("state file: amplitude norm " +
                              std::to_string(norm) +
                              " differs from 1 by more than 1e-8");
    // Repair drift only when present, so exact data round-trips bit-for-bit.
    if (std::abs(norm - 1.0) > kRepairTrigger) amps /= norm;
    return PureState(std::move(layout), std::move(amps));
}

DensityOperator parse_mixed(const json& data, SubsystemLayout layout) {
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != n)
        throw ParseError("state file: mixed data must list " +
                         std::to_string(n) + " matrix rows");
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& row = data[r];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            throw ParseError("state file: matrix row " + std::to_string(r) +
                             " must hold " + std::to_string(n) + " entries");
        for (Eigen::Index c = 0; c < n; ++c)
            m(r, c) = parse_entry(row[c], "matrix entries");
    }
    const double asymmetry = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asymmetry > kLoadTol)
        throw ValidationError(
            "state file: matrix is not Hermitian within 1e-8");
    if (asymmetry > 0.0) m = 0.5 * (m + m.adjoint().eval());
    const double trace = m.trace().real();
    if (std::abs(trace - 1.0) > kLoadTol)
        throw ValidationError("state file: trace " + std::to_string(trace) +
                              " differs from 1 by more than 1e-8");
    if (std::abs(trace - 1.0) > kRepairTrigger) m /= trace;
    return DensityOperator(std::move(layout), std::move(m));
}

}  // namespace

std::string format_real(double value, int significant_digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*g", significant_digits, value);
    return buffer;
}

LoadedState parse_state_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("state file: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
        throw ParseError("state file: top level must be an object with a "
                         "'kind' field");
    if (!doc.contains("data"))
        throw ParseError("state file: missing 'data' field");
    auto layout = parse_layout(doc);
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "pure") return parse_pure(doc["data"], std::move(layout));
    if (kind == "mixed") return parse_mixed(doc["data"], std::move(layout));
    throw ParseError("state file: kind must be 'pure' or 'mixed', got '" +
                     kind + "'");
}

LoadedState load_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open state file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_state_text(text.str());
}

namespace {

void append_pair(std::string& out, const Complex& z) {
    out += '[';
    out += format_real(z.real(), 17);
    out += ", ";
    out += format_real(z.imag(), 17);
    out += ']';
}

}  // namespace

std::string format_state(const LoadedState& state) {
    std::string out = "{\n  \"kind\": \"";
    out += std::holds_alternative<PureState>(state) ? "pure" : "mixed";
    out += "\",\n  \"dims\": [";
    const auto& layout = std::holds_alternative<PureState>(state)
                             ? std::get<PureState>(state).layout()
                             : std::get<DensityOperator>(state).layout();
    for (std::size_t i = 0; i < layout.count(); ++i) {
        if (i) out += ", ";
        out += std::to_string(layout.dim(i));
    }
    out += "],\n  \"data\": [";
    if (const auto* pure = std::get_if<PureState>(&state)) {
        for (Eigen::Index i = 0; i < pure->amplitudes().size(); ++i) {
            if (i) out += ", ";
            append_pair(out, pure->amplitudes()[i]);
        }
    } else {
        const auto& m = std::get<DensityOperator>(state).matrix();
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r) out += ",";
            out += "\n    [";
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                if (c) out += ", ";
                append_pair(out, m(r, c));
            }
            out += ']';
        }
        out += "\n  ";
    }
    out += "]\n}\n";
    return out;
}

void save_state_file(const LoadedState& state, const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
    if (!out)
        throw Error("cannot write state file '" + path + "'");
    out << format_state(state);
    if (!out)
        throw Error("failed while writing state file '" + path + "'");
}

LoadedState resolve_state(const std::string& spec) {
    if (is_standard_state_name(spec)) {
        try {
            return standard_state(spec);
        } catch (const UnknownNameError& e) {
            throw ParseError(e.what());
        }
    }
    return load_state_file(spec);
}

DensityOperator as_density(const LoadedState& state) {
    if (const auto* pure = std::get_if<PureState>(&state))
        return density_from_pure(*pure);
    return std::get<DensityOperator>(state);
}

}  // namespace entkit
