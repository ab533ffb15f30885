#include "fraclamb/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fraclamb/errors.hpp"

namespace fraclamb::io {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string grid_to_csv(const GridFunction& grid) {
    std::string out = "x,value\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out += format_double(grid.node(i));
        out += ',';
        out += format_double(grid.values[i]);
        out += '\n';
    }
    return out;
}

namespace {

// nlohmann::json prints doubles with the shortest round-trip representation,
// which is what we want for JSON; non-finite values become null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double parse_double(const std::string& token, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": '" + token + "' is not a number");
    }
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace

std::string grid_to_json(const GridFunction& grid) {
    json values = json::array();
    for (double v : grid.values) values.push_back(number(v));
    return json{{"x_start", grid.x_start}, {"x_step", grid.x_step}, {"values", values}}.dump() + "\n";
}

GridFunction grid_from_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "x,value") throw ParseError("CSV grid must start with 'x,value'");
    std::vector<double> xs;
    GridFunction grid;
    for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw ParseError("line " + std::to_string(lineno) + ": expected two columns");
        }
        xs.push_back(parse_double(line.substr(0, comma), lineno));
        grid.values.push_back(parse_double(line.substr(comma + 1), lineno));
    }
    if (xs.size() < 2) throw ParseError("CSV grid needs at least two rows");
    grid.x_start = xs.front();
    grid.x_step = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    // x_step is not stored in CSV; recover it from the second node when that
    // reproduces every node exactly.
    const double candidate = xs[1] - xs[0];
    bool exact = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[0] + static_cast<double>(i) * candidate != xs[i]) {
            exact = false;
            break;
        }
    }
    if (exact) grid.x_step = candidate;
    if (!(grid.x_step > 0.0)) throw ParseError("CSV grid nodes must be increasing");
    return grid;
}

GridFunction grid_from_json(std::string_view text) {
    const json doc = parse_json(text);
    try {
        GridFunction grid;
        grid.x_start = doc.at("x_start").get<double>();
        grid.x_step = doc.at("x_step").get<double>();
        for (const auto& v : doc.at("values")) {
            grid.values.push_back(v.is_null() ? std::nan("") : v.get<double>());
        }
        if (grid.values.empty()) throw ParseError("grid JSON has no values");
        if (!(grid.x_step > 0.0)) throw ParseError("grid JSON x_step must be positive");
        return grid;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed grid JSON: ") + e.what());
    }
}

std::string report_to_csv(const ResidualReport& report) {
    std::string out = "x,f,forward,residual\n";
    for (const auto& row : report.rows) {
        out += format_double(row.x) + ',' + format_double(row.f) + ',' + format_double(row.forward) + ',' +
               format_double(row.residual) + '\n';
    }
    return out;
}

std::string report_to_json(const ResidualReport& report) {
    json rows = json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"x", number(row.x)},
                        {"f", number(row.f)},
                        {"forward", number(row.forward)},
                        {"residual", number(row.residual)},
                        {"std_error", number(row.std_error)}});
    }
    json doc{{"window", {report.window_a, report.window_b}},
             {"probe_count", report.probe_count},
             {"max_abs_residual", number(report.max_abs_residual)},
             {"max_rel_residual", number(report.max_rel_residual)},
             {"max_rel_std_error", number(report.max_rel_std_error)},
             {"monte_carlo", report.monte_carlo},
             {"points", rows}};
    return doc.dump(2) + "\n";
}

std::string problem_spec_to_json(const ProblemSpec& spec) {
    json doc{{"variant", to_string(spec.variant)}, {"n", spec.n}};
    if (spec.m) doc["m"] = *spec.m;
    if (spec.A) doc["A"] = spec.A->rows();
    return doc.dump() + "\n";
}

ProblemSpec problem_spec_from_json(std::string_view text) {
    const json doc = parse_json(text);
    ProblemSpec spec;
    try {
        spec.variant = variant_from_string(doc.at("variant").get<std::string>());
        spec.n = doc.value("n", 1);
        if (doc.contains("m") && !doc["m"].is_null()) spec.m = doc["m"].get<int>();
        if (doc.contains("A") && !doc["A"].is_null()) {
            spec.A = matrix_from_json(doc["A"].dump());
            if (!doc.contains("n")) spec.n = spec.A->dimension();
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed problem spec: ") + e.what());
    }
    try {
        spec.validate();
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
    return spec;
}

PosDefMatrix matrix_from_json(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_array() || doc.empty()) throw ParseError("matrix must be a non-empty JSON array");
    std::vector<double> flat;
    int n = 0;
    try {
        if (doc.front().is_array()) {
            n = static_cast<int>(doc.size());
            for (const auto& row : doc) {
                if (!row.is_array() || row.size() != doc.size()) throw ParseError("matrix must be square");
                for (const auto& v : row) flat.push_back(v.get<double>());
            }
        } else {
            for (const auto& v : doc) flat.push_back(v.get<double>());
            n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(flat.size()))));
            if (static_cast<std::size_t>(n) * static_cast<std::size_t>(n) != flat.size()) {
                throw ParseError("flat matrix length " + std::to_string(flat.size()) + " is not a square");
            }
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("matrix entries must be numbers: ") + e.what());
    }
    return PosDefMatrix(n, std::move(flat));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace fraclamb::io
