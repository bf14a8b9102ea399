#pragma once

#include <string>

#include "fc/measures.hpp"
#include "fc/operator_core.hpp"
#include "fc/symbol.hpp"

namespace fc {

// Parsers for the JSON file formats; malformed input throws ConfigInvalid naming the
// JSON pointer of the offending field.

/// {"dim": n, "entries": [[{"re":..,"im":..}, ...], ...]} or {"generator": {...}}.
MatrixOperator operator_from_json(const std::string& text);
/// {"builtin": name, "params": {...}}.
Symbol symbol_from_json(const std::string& text);
/// {"atoms": [[s, w], ...], "density": {"builtin", "params", "grid": {"S", "h"}}, "omega"}.
ExpWeightedMeasure measure_from_json(const std::string& text);
/// {"breakpoints": [[t, v], ...], "ac": [...]}, {"even_steps": {...}} or {"constant": v}.
BVFunction bv_from_json(const std::string& text);

std::string matrix_to_json(const CMatrix& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace fc
