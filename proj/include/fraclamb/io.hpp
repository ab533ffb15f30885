#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fraclamb/forward_verifier.hpp"
#include "fraclamb/function_model.hpp"
#include "fraclamb/lamb_solver.hpp"

namespace fraclamb::io {

/// "%.17g": round-trips every double.
std::string format_double(double v);

/// Header `x,value`, one row per node.
std::string grid_to_csv(const GridFunction& grid);
/// {"x_start": ..., "x_step": ..., "values": [...]}
std::string grid_to_json(const GridFunction& grid);

/// Parsers for the two formats above. A CSV grid is accepted only when its
/// nodes are exactly x_start + i * x_step. Throw ParseError on malformed input.
GridFunction grid_from_csv(std::string_view text);
GridFunction grid_from_json(std::string_view text);

/// Header `x,f,forward,residual`.
std::string report_to_csv(const ResidualReport& report);
std::string report_to_json(const ResidualReport& report);

/// {"variant": ..., "n": ..., "m": ..., "A": [[...], ...]}
std::string problem_spec_to_json(const ProblemSpec& spec);
ProblemSpec problem_spec_from_json(std::string_view text);

/// Square matrix from a row-major JSON array, nested ([[a,b],[c,d]]) or
/// flat ([a,b,c,d]).
PosDefMatrix matrix_from_json(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace fraclamb::io
