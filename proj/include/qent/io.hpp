#pragma once

// State/density files, named state families and JSON rendering for the CLI.
//
// State file:   {"dims": [d0, ...], "amps": [[re, im], ...]}       (N entries)
// Density file: {"dims": [d0, ...], "rho":  [[re, im], ...]}       (N*N, row-major)
// Amplitudes use the big-endian basis order. Numbers are written with 17
// significant digits.

#include <string>
#include <string_view>

#include "json.hpp"

#include "qent/grover.hpp"
#include "qent/measures.hpp"
#include "qent/product_opt.hpp"
#include "qent/statevector.hpp"

namespace qent::io {

using nlohmann::json;

StateVector parse_state(std::string_view text);
DensityMatrix parse_density(std::string_view text);
std::string state_to_text(const StateVector& state);
std::string density_to_text(const DensityMatrix& rho);

StateVector read_state_file(const std::string& path);
DensityMatrix read_density_file(const std::string& path);
void write_state_file(const std::string& path, const StateVector& state);
void write_density_file(const std::string& path, const DensityMatrix& rho);

/// A path to a state file, or one of
///   bell | ghz:n | w:n | uniform:d0,d1,.. | basis:d0,d1,..:index |
///   random:d0,d1,..:seed | product-random:d0,d1,..:seed
StateVector resolve_state(const std::string& spec);

/// A path to a density file, or one of
///   maximally-mixed:dims | random-mixed:dims:seed |
///   product-mixed:dims:seed (tensor product of random single-site densities) |
///   pure:<state spec>
DensityMatrix resolve_density(const std::string& spec);

StateVector ghz_state(int n);
StateVector w_state(int n);
StateVector bell_state();

/// Comma-separated positive integers, e.g. "2,2,3".
std::vector<int> parse_dims(std::string_view text);

/// Shortest text with 17 significant digits; "null" for non-finite values.
std::string format_double(double x);

/// Serializes like json::dump but with every float at 17 significant digits.
std::string format_json(const json& value, int indent = 2);

json to_json(const ProductState& p);
json to_json(const PmaxResult& result);
json to_json(const MeasureReport& report);
json to_json(const OptimizerConfig& cfg);

}  // namespace qent::io
