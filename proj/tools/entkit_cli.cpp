// Command-line front end. Subcommands: measure, check, distill, schmidt,
// dump. Output is a single JSON record on stdout (CSV for distill), with
// numbers printed deterministically so identical invocations produce
// byte-identical output. Exit codes: 0 ok, 2 parse error, 3 precondition
// violation, 4 optimizer did not converge, 1 internal failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "entkit/measurements.hpp"
#include "entkit/mixed_measures.hpp"
#include "entkit/protocols.hpp"
#include "entkit/pure_measures.hpp"
#include "entkit/state_io.hpp"
#include "entkit/states.hpp"

namespace {

using namespace entkit;

// ---- cut specifications (1-based on the command line) ----

std::vector<std::size_t> parse_cut(const std::string& spec,
                                   const SubsystemLayout& layout) {
    std::vector<std::size_t> cut;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const auto comma = std::min(spec.find(',', pos), spec.size());
        const std::string item = spec.substr(pos, comma - pos);
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("cut '" + spec +
                             "': expected comma-separated 1-based indices");
        const auto index = std::stoul(item);
        if (index == 0)
            throw IndexError("cut '" + spec + "': subsystem indices are 1-based");
        if (index > layout.count())
            throw IndexError("cut '" + spec + "': subsystem " + item +
                             " out of range for " +
                             std::to_string(layout.count()) + " factors");
        cut.push_back(index - 1);
        pos = comma + 1;
    }
    std::sort(cut.begin(), cut.end());
    for (std::size_t i = 1; i < cut.size(); ++i)
        if (cut[i] == cut[i - 1])
            throw IndexError("cut '" + spec + "': subsystem " +
                             std::to_string(cut[i] + 1) + " listed twice");
    if (cut.size() >= layout.count())
        throw IndexError("cut '" + spec + "': side B would be empty");
    return cut;
}

std::string cut_to_string(const std::vector<std::size_t>& cut) {
    std::string out;
    for (std::size_t i = 0; i < cut.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(cut[i] + 1);
    }
    return out;
}

// All bipartitions, canonicalized as the subsets containing subsystem 1.
std::vector<std::vector<std::size_t>> all_cuts(const SubsystemLayout& layout) {
    const std::size_t rest = layout.count() - 1;
    std::vector<std::vector<std::size_t>> cuts;
    for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << rest); ++mask) {
        std::vector<std::size_t> cut{0};
        for (std::size_t b = 0; b < rest; ++b)
            if (mask & (std::size_t{1} << b)) cut.push_back(b + 1);
        cuts.push_back(std::move(cut));
    }
    return cuts;
}

// ---- record formatting ----

std::string json_number(double value) {
    if (std::isinf(value)) return value > 0 ? "\"+inf\"" : "\"-inf\"";
    return format_real(value, 17);
}

struct RecordWriter {
    std::string body = "{";
    bool first = true;

    void key(const std::string& name) {
        if (!first) body += ", ";
        first = false;
        body += '"';
        body += name;
        body += "\": ";
    }
    void field(const std::string& name, const std::string& raw) {
        key(name);
        body += raw;
    }
    void text(const std::string& name, const std::string& value) {
        field(name, '"' + value + '"');
    }
    void number(const std::string& name, double value) {
        field(name, json_number(value));
    }
    void integer(const std::string& name, long long value) {
        field(name, std::to_string(value));
    }
    void boolean(const std::string& name, bool value) {
        field(name, value ? "true" : "false");
    }
    std::string finish() { return body + "}"; }
};

void emit(const std::string& record) { std::cout << record << "\n"; }

// ---- shared command state ----

struct CommonArgs {
    std::string state_spec;
    std::string cut_spec = "1";
    std::string dump_path;
    double tol = 1e-6;
    std::uint64_t seed = 42;
    int iterations = 0;
};

LoadedState resolve_and_maybe_dump(const CommonArgs& args) {
    LoadedState state = resolve_state(args.state_spec);
    if (!args.dump_path.empty()) save_state_file(state, args.dump_path);
    return state;
}

const PureState& require_pure(const LoadedState& state, const char* what) {
    if (const auto* pure = std::get_if<PureState>(&state)) return *pure;
    throw ValidationError(std::string(what) + " requires a pure state");
}

// ---- measure ----

int run_measure(const CommonArgs& args, const std::string& measure_name) {
    const LoadedState state = resolve_and_maybe_dump(args);
    const DensityOperator rho = as_density(state);
    const bool needs_cut = measure_name != "entropy" &&
                           measure_name != "concurrence" &&
                           measure_name != "eof";
    std::vector<std::size_t> cut;
    if (needs_cut) cut = parse_cut(args.cut_spec, rho.layout());

    double value = 0.0;
    int iterations = 0;
    bool converged = true;
    double tolerance = 0.0;

    if (measure_name == "entropy") {
        value = von_neumann_entropy(rho);
    } else if (measure_name == "entropy-of-entanglement") {
        value = entropy_of_entanglement(require_pure(state, "entropy-of-entanglement"), cut);
    } else if (measure_name == "schmidt") {
        value = static_cast<double>(
            schmidt_number(require_pure(state, "schmidt"), cut));
    } else if (measure_name == "concurrence") {
        value = concurrence(rho);
    } else if (measure_name == "eof") {
        value = eof_two_qubit(rho);
    } else if (measure_name == "negativity") {
        value = negativity(rho, cut);
    } else if (measure_name == "log-negativity") {
        value = log_negativity(rho, cut);
    } else if (measure_name == "relative-entropy-of-entanglement" ||
               measure_name == "bures" ||
               measure_name == "trace-distance-to-separable") {
        SeparableSearchOptions options;
        options.tolerance = args.tol;
        options.seed = args.seed;
        if (args.iterations > 0) options.max_iterations = args.iterations;
        const DistanceKind kind =
            measure_name == "relative-entropy-of-entanglement"
                ? DistanceKind::RelativeEntropy
                : (measure_name == "bures" ? DistanceKind::Bures
                                           : DistanceKind::Trace);
        const auto result = distance_to_separable(rho, cut, kind, options);
        value = result.value;
        iterations = result.iterations;
        converged = result.converged;
        tolerance = options.tolerance;
    } else {
        throw UnknownNameError(
            "measure '" + measure_name +
            "': expected one of entropy, entropy-of-entanglement, schmidt, "
            "concurrence, eof, negativity, log-negativity, "
            "relative-entropy-of-entanglement, bures, "
            "trace-distance-to-separable");
    }

    RecordWriter record;
    record.text("command", "measure");
    record.text("state", args.state_spec);
    record.text("measure", measure_name);
    if (needs_cut)
        record.text("cut", cut_to_string(cut));
    else
        record.field("cut", "null");
    record.number("value", value);
    record.number("tolerance", tolerance);
    record.integer("iterations", iterations);
    record.integer("seed", static_cast<long long>(args.seed));
    record.boolean("converged", converged);
    emit(record.finish());
    return converged ? 0 : 4;
}

// ---- check ----

int run_check(const CommonArgs& args, bool use_all_cuts) {
    const LoadedState state = resolve_and_maybe_dump(args);
    const DensityOperator rho = as_density(state);
    if (rho.layout().count() < 2)
        throw LayoutError("check: the state has a single factor, so there is "
                          "no bipartition to test");

    std::vector<std::vector<std::size_t>> cuts;
    if (use_all_cuts)
        cuts = all_cuts(rho.layout());
    else
        cuts.push_back(parse_cut(args.cut_spec, rho.layout()));

    std::string body = "{\"command\": \"check\", \"state\": \"" +
                       args.state_spec + "\", \"cuts\": [";
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const double min_eig = min_pt_eigenvalue(rho, cuts[i]);
        const bool ppt = min_eig >= -kPsdTol;
        std::string verdict;
        if (!ppt)
            verdict = "entangled";
        else if (rho.dim() <= 6)
            verdict = "separable";
        else
            verdict = "PPT (separability undecided)";
        RecordWriter entry;
        entry.text("cut", cut_to_string(cuts[i]));
        entry.number("min_pt_eigenvalue", min_eig);
        entry.boolean("ppt", ppt);
        entry.text("verdict", verdict);
        if (i) body += ", ";
        body += entry.finish();
    }
    body += "]}";
    emit(body);
    return 0;
}

// ---- schmidt ----

int run_schmidt(const CommonArgs& args) {
    const LoadedState state = resolve_and_maybe_dump(args);
    const PureState& psi = require_pure(state, "schmidt");
    const auto cut = parse_cut(args.cut_spec, psi.layout());
    const auto decomposition = schmidt_decompose(psi, cut);

    double entropy = 0.0;
    std::string coefficients = "[";
    for (std::size_t k = 0; k < decomposition.coefficients.size(); ++k) {
        const double c = decomposition.coefficients[k];
        if (k) coefficients += ", ";
        coefficients += format_real(c, 17);
        entropy -= c * c * std::log2(c * c);
    }
    coefficients += "]";

    RecordWriter record;
    record.text("command", "schmidt");
    record.text("state", args.state_spec);
    record.text("cut", cut_to_string(cut));
    record.field("coefficients", coefficients);
    record.integer("schmidt_number",
                   static_cast<long long>(decomposition.coefficients.size()));
    record.number("entropy_of_entanglement", entropy);
    emit(record.finish());
    return 0;
}

// ---- distill ----

std::vector<double> parse_grid(const std::string& spec) {
    double start = 0.0, stop = 0.0, step = 0.0;
    char trailing = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step,
                    &trailing) != 3)
        throw RangeError("grid '" + spec + "': expected start:stop:step");
    if (!(step > 0.0) || stop < start)
        throw RangeError("grid '" + spec +
                         "': step must be positive and stop >= start");
    std::vector<double> points;
    for (int i = 0;; ++i) {
        const double p = start + i * step;
        if (p > stop + step * 1e-9) break;
        points.push_back(std::min(p, stop));
    }
    return points;
}

int run_distill(const std::string& p_spec, const std::string& grid_spec,
                int iterations, double tol, const std::string& out_path,
                bool verify) {
    if (iterations <= 0) iterations = 3;
    if (!(tol > 0.0)) tol = 1e-9;

    std::vector<double> grid;
    if (!grid_spec.empty()) {
        grid = parse_grid(grid_spec);
    } else if (!p_spec.empty()) {
        try {
            std::size_t used = 0;
            grid.push_back(std::stod(p_spec, &used));
            if (used != p_spec.size()) throw std::invalid_argument(p_spec);
        } catch (const std::exception&) {
            throw ParseError("distill: cannot parse p '" + p_spec + "'");
        }
    } else {
        throw ParseError("distill: pass --p or --grid");
    }

    std::vector<YieldCurve> curves;
    for (double p : grid) {
        curves.push_back(total_yield(p, iterations, tol));
        if (verify) {
            const auto analytic = distill_step(p);
            const auto simulated = simulate_distill_step(p);
            const double worst = std::max(
                {std::abs(analytic.p_success - simulated.p_success),
                 std::abs(analytic.p_00 - simulated.p_00),
                 std::abs(analytic.p_next - simulated.p_next)});
            if (worst > 1e-9)
                throw Error("distill --verify: analytic and simulated steps "
                            "disagree by " + std::to_string(worst) +
                            " at p=" + format_real(p, 17));
            if (simulated.success_state) {
                const auto kept =
                    partial_trace(*simulated.success_state, {0, 1});
                if (std::abs(fidelity_phi_plus(kept) - 1.0) > 1e-9)
                    throw Error("distill --verify: success state is not the "
                                "Bell pair at p=" + format_real(p, 17));
            }
        }
    }

    std::string csv = "p";
    for (int k = 1; k <= iterations; ++k)
        csv += ",yield_k" + std::to_string(k);
    csv += ",yield_converged\n";
    for (const auto& curve : curves) {
        csv += format_real(curve.p, 12);
        for (double y : curve.yields) csv += "," + format_real(y, 12);
        csv += "," + format_real(curve.converged_yield, 12);
        csv += "\n";
    }

    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw Error("cannot write CSV file '" + out_path + "'");
        out << csv;
    }
    return 0;
}

// ---- dump ----

int run_dump(const std::string& state_spec, const std::string& out_path) {
    const LoadedState state = resolve_state(state_spec);
    if (out_path.empty())
        std::cout << format_state(state);
    else
        save_state_file(state, out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement measures and local-protocol toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string measure_name;
    bool use_all_cuts = false;
    bool verify = false;
    std::string p_spec, grid_spec, out_path;

    auto add_state_flags = [&](CLI::App* cmd, bool with_cut) {
        cmd->add_option("--state", args.state_spec,
                        "state file path or built-in name (bell:phi+, ghz:3, "
                        "w, wreduced, maxmixed:d, partial:theta, phid:d, "
                        "sepexample)")
            ->required();
        if (with_cut)
            cmd->add_option("--cut", args.cut_spec,
                            "side-A subsystems, comma-separated, 1-based");
        cmd->add_option("--dump", args.dump_path,
                        "also write the resolved state to this file");
    };

    auto* measure_cmd =
        app.add_subcommand("measure", "evaluate an entanglement measure");
    add_state_flags(measure_cmd, true);
    measure_cmd->add_option("--measure", measure_name, "measure name")
        ->required();
    measure_cmd->add_option("--tol", args.tol, "search tolerance");
    measure_cmd->add_option("--seed", args.seed, "search seed");
    measure_cmd->add_option("--iterations", args.iterations,
                            "search iteration cap");

    auto* check_cmd =
        app.add_subcommand("check", "PPT separability check across cuts");
    add_state_flags(check_cmd, true);
    check_cmd->add_flag("--all-cuts", use_all_cuts, "test every bipartition");

    auto* schmidt_cmd =
        app.add_subcommand("schmidt", "Schmidt decomposition of a pure state");
    add_state_flags(schmidt_cmd, true);

    auto* distill_cmd = app.add_subcommand(
        "distill", "two-pair distillation yield curve as CSV");
    distill_cmd->add_option("--p", p_spec, "single fidelity parameter");
    distill_cmd->add_option("--grid", grid_spec, "p grid start:stop:step");
    distill_cmd->add_option("--iterations", args.iterations,
                            "retry rounds to tabulate (default 3)");
    distill_cmd->add_option("--tol", args.tol, "convergence threshold");
    distill_cmd->add_option("--out", out_path, "CSV output path (default stdout)");
    distill_cmd->add_flag("--verify", verify,
                          "cross-check the analytic step against simulation");

    auto* dump_cmd =
        app.add_subcommand("dump", "write a state as a JSON state file");
    dump_cmd->add_option("--state", args.state_spec, "state to write")
        ->required();
    dump_cmd->add_option("--out", out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (measure_cmd->parsed()) return run_measure(args, measure_name);
        if (check_cmd->parsed()) return run_check(args, use_all_cuts);
        if (schmidt_cmd->parsed()) return run_schmidt(args);
        if (distill_cmd->parsed()) {
            const int iterations = args.iterations > 0 ? args.iterations : 3;
            const double tol =
                distill_cmd->count("--tol") ? args.tol : 1e-9;
            return run_distill(p_spec, grid_spec, iterations, tol, out_path,
                               verify);
        }
        if (dump_cmd->parsed()) return run_dump(args.state_spec, out_path);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
