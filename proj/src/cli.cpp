#include "fraclamb/cli.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fraclamb/errors.hpp"
#include "fraclamb/forward_verifier.hpp"
#include "fraclamb/io.hpp"
#include "fraclamb/lamb_solver.hpp"
#include "fraclamb/selftest.hpp"

namespace fraclamb::cli {
namespace {

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

double parse_number(const std::string& token, const std::string& context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used == token.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw ParseError(context + ": '" + token + "' is not a finite number");
}

struct Options {
    std::string variant = "classic";
    int dimension = 1;
    std::optional<int> power;
    std::string matrix;
    std::string spec_path;
    std::string function = "exp";
    std::string window = "-1:1";
    int count = 11;
    int probes = 11;
    std::optional<double> tol;
    std::optional<std::uint64_t> mc_samples;
    std::optional<std::string> seed;
    std::string mc_scheme = "stratified";
    double threshold = 1e-5;
    bool numeric_fallback = false;
    std::string output;
    std::string format = "csv";
    bool dimension_given = false;
};

std::uint64_t parse_seed(const std::string& text, const std::string& source) {
    // stoull would silently wrap a leading minus sign.
    if (!text.empty() && std::isdigit(static_cast<unsigned char>(text.front()))) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(text, &used, 0);
            if (used == text.size()) return v;
        } catch (const std::exception&) {
        }
    }
    throw ParseError(source + ": '" + text + "' is not an unsigned 64-bit integer");
}

QuadratureConfig build_config(const Options& opt) {
    QuadratureConfig cfg;
    if (opt.tol) cfg.tol = *opt.tol;
    if (opt.mc_samples) cfg.mc_samples = *opt.mc_samples;
    if (opt.seed) {
        cfg.mc_seed = parse_seed(*opt.seed, "--seed");
    } else if (const char* env = std::getenv("FRACLAMB_SEED"); env && *env) {
        cfg.mc_seed = parse_seed(env, "FRACLAMB_SEED");
    }
    if (opt.mc_scheme == "plain") {
        cfg.mc_scheme = McScheme::plain;
    } else if (opt.mc_scheme != "stratified") {
        throw ParseError("--mc-scheme must be 'plain' or 'stratified'");
    }
    cfg.numeric_derivative_fallback = opt.numeric_fallback;
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
    return cfg;
}

PosDefMatrix load_matrix(const std::string& arg) {
    // A single inline number is accepted as a 1x1 matrix; anything larger must come from a file.
    try {
        std::size_t used = 0;
        const double v = std::stod(arg, &used);
        if (used == arg.size()) return PosDefMatrix(1, {v});
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
    if (arg.find_first_of("[,") != std::string::npos) {
        throw ParseError("--matrix: inline matrices beyond n = 1 are not accepted; pass a JSON file path");
    }
    return io::matrix_from_json(io::read_file(arg));
}

ProblemSpec build_spec(const Options& opt) {
    if (!opt.spec_path.empty()) return io::problem_spec_from_json(io::read_file(opt.spec_path));
    ProblemSpec spec;
    spec.variant = variant_from_string(opt.variant);
    spec.n = opt.dimension;
    spec.m = opt.power;
    if (spec.variant == Variant::quadform) {
        if (opt.matrix.empty()) throw ParseError("quadform variant requires --matrix");
        spec.A = load_matrix(opt.matrix);
        if (!opt.dimension_given) spec.n = spec.A->dimension();
    } else if (!opt.matrix.empty()) {
        throw ParseError("--matrix is only valid with --variant quadform");
    }
    spec.validate();
    return spec;
}

std::pair<double, double> parse_window(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) throw ParseError("--window must look like a:b, got '" + text + "'");
    const double a = parse_number(parts[0], "--window");
    const double b = parse_number(parts[1], "--window");
    if (!(a < b)) throw ParseError("--window requires a < b, got '" + text + "'");
    return {a, b};
}

void emit(const Options& opt, const std::string& data, std::ostream& out) {
    if (opt.output.empty()) {
        out << data;
        return;
    }
    std::ofstream file(opt.output, std::ios::binary);
    if (!file) throw ParseError("cannot write '" + opt.output + "'");
    file << data;
}

void add_problem_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--variant", opt.variant, "classic | symmetric_ndim | power | quadform")
        ->check(CLI::IsMember({"classic", "symmetric_ndim", "power", "quadform"}));
    cmd->add_option("-n,--dimension", opt.dimension, "Dimension for symmetric_ndim / quadform")
        ->each([&opt](const std::string&) { opt.dimension_given = true; });
    cmd->add_option("-m,--power", opt.power, "Exponent m for the power variant");
    cmd->add_option("--matrix", opt.matrix, "JSON file with a row-major positive-definite matrix");
    cmd->add_option("--spec", opt.spec_path, "JSON problem spec (overrides --variant/-n/-m/--matrix)");
    cmd->add_option("--function", opt.function, "Right-hand side, e.g. exp:lambda=2");
    cmd->add_option("--window", opt.window, "Interval a:b");
}

void add_numeric_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--tol", opt.tol, "Quadrature tolerance");
    cmd->add_option("--mc-samples", opt.mc_samples, "Monte Carlo samples per probe");
    cmd->add_option("--seed", opt.seed, "Monte Carlo seed (default 0xC0FFEE or $FRACLAMB_SEED)");
    cmd->add_option("--mc-scheme", opt.mc_scheme, "plain | stratified");
    cmd->add_flag("--numeric-fallback", opt.numeric_fallback, "Allow finite-difference derivatives");
    cmd->add_option("--output", opt.output, "Write the artifact here instead of stdout");
    cmd->add_option("--format", opt.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

// CLI11 reads "-1:1" as a short flag; glue window values onto their option.
std::vector<std::string> glue_window_values(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--window" && i + 1 < args.size()) {
            out.push_back("--window=" + args[i + 1]);
            ++i;
        } else {
            out.push_back(args[i]);
        }
    }
    return out;
}

}  // namespace

TestFamilyMember parse_function(std::string_view selector) {
    const auto tokens = split(selector, ':');
    TestFamilyMember member;
    const std::string& name = tokens.front();
    if (name == "exp") {
        member.kind = TestFamilyMember::Kind::exponential;
    } else if (name == "gauss_tail") {
        member.kind = TestFamilyMember::Kind::gauss_tail;
    } else if (name == "shifted_gaussian") {
        member.kind = TestFamilyMember::Kind::shifted_gaussian;
    } else {
        throw ParseError("unknown function '" + name + "' (expected exp, gauss_tail or shifted_gaussian)");
    }
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const std::string& token = tokens[i];
        const auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError("malformed parameter '" + token + "'");
        const std::string key = token.substr(0, eq);
        const double value = parse_number(token.substr(eq + 1), "parameter '" + token + "'");
        const bool has_lambda = member.kind != TestFamilyMember::Kind::shifted_gaussian;
        const bool has_c = member.kind != TestFamilyMember::Kind::exponential;
        const bool has_sigma = member.kind == TestFamilyMember::Kind::shifted_gaussian;
        if (key == "lambda" && has_lambda) {
            if (!(value > 0.0)) throw ParseError("parameter '" + token + "': lambda must be > 0");
            member.lambda = value;
        } else if (key == "c" && has_c) {
            member.c = value;
        } else if (key == "sigma" && has_sigma) {
            if (!(value > 0.0)) throw ParseError("parameter '" + token + "': sigma must be > 0");
            member.sigma = value;
        } else {
            throw ParseError("parameter '" + token + "' is not valid for '" + name + "'");
        }
    }
    return member;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Solve and certify Lamb-Bateman type integral equations", "fraclamb"};
    app.require_subcommand(1);
    Options opt;

    auto* solve_cmd = app.add_subcommand("solve", "Sample the solution u on a grid");
    add_problem_options(solve_cmd, opt);
    solve_cmd->add_option("--count", opt.count, "Grid nodes (>= 2)");
    add_numeric_options(solve_cmd, opt);

    auto* forward_cmd = app.add_subcommand("forward", "Sample the forward operator applied to the function");
    add_problem_options(forward_cmd, opt);
    forward_cmd->add_option("--count", opt.count, "Grid nodes (>= 2)");
    add_numeric_options(forward_cmd, opt);

    auto* verify_cmd = app.add_subcommand("verify", "Residual certificate of the solution");
    add_problem_options(verify_cmd, opt);
    verify_cmd->add_option("--probes", opt.probes, "Probe points (>= 3)");
    verify_cmd->add_option("--threshold", opt.threshold, "Largest accepted relative residual");
    add_numeric_options(verify_cmd, opt);

    auto* selftest_cmd = app.add_subcommand("selftest", "Run the invariant suite");
    add_numeric_options(selftest_cmd, opt);

    std::vector<std::string> args = glue_window_values(raw_args);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    QuadratureConfig cfg;
    ProblemSpec spec;
    SmoothFunction f = zero_function();
    std::pair<double, double> window{0.0, 1.0};
    try {
        cfg = build_config(opt);
        if (!selftest_cmd->parsed()) {
            spec = build_spec(opt);
            f = parse_function(opt.function).to_function();
            window = parse_window(opt.window);
            if ((solve_cmd->parsed() || forward_cmd->parsed()) && opt.count < 2) {
                throw ParseError("--count must be at least 2");
            }
            if (verify_cmd->parsed() && opt.probes < 3) throw ParseError("--probes must be at least 3");
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    try {
        const bool json = opt.format == "json";
        if (solve_cmd->parsed()) {
            const SmoothFunction u = solve(spec, f, cfg);
            const GridFunction grid = sample(u, window.first, window.second, opt.count);
            emit(opt, json ? io::grid_to_json(grid) : io::grid_to_csv(grid), out);
            return kSuccess;
        }
        if (forward_cmd->parsed()) {
            std::uint64_t stream = 0;
            const GridFunction grid = sample(
                [&](double x) { return apply_forward(spec, f, x, cfg, stream++); }, window.first, window.second,
                opt.count);
            emit(opt, json ? io::grid_to_json(grid) : io::grid_to_csv(grid), out);
            return kSuccess;
        }
        if (verify_cmd->parsed()) {
            const ResidualReport report = verify(spec, f, window.first, window.second, opt.probes, cfg);
            emit(opt, json ? io::report_to_json(report) : io::report_to_csv(report), out);
            const bool ok = report.passes(opt.threshold);
            err << (ok ? "PASS" : "FAIL") << " max_rel_residual=" << io::format_double(report.max_rel_residual)
                << " threshold=" << io::format_double(opt.threshold);
            if (report.monte_carlo) {
                // Sampling noise cannot be certified below a few standard errors.
                err << " monte_carlo_limit=" << io::format_double(4.0 * report.max_rel_std_error)
                    << " (4 relative standard errors)";
            }
            err << "\n";
            return ok ? kSuccess : kCheckFailed;
        }
        const SelftestReport report = run_selftest(cfg);
        emit(opt, report.to_text(), out);
        return report.all_passed() ? kSuccess : kCheckFailed;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const Error& e) {
        err << "numerical error: " << e.what() << "\n";
        return kNumericalError;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace fraclamb::cli
