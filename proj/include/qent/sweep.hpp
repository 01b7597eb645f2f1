#pragma once

// Parameter sweeps producing CSV-ready tables.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qent/product_opt.hpp"
#include "qent/statevector.hpp"

namespace qent::sweep {

struct Row {
  BasisIndex size = 0;
  double value = 0.0;
  std::optional<double> reference;
  std::optional<double> error;  ///< |value - reference| (1 - P(m) for grover-success)
};

struct Options {
  std::string measure = "groverian";  ///< pmax | groverian | grover-success | pmax-gap
  std::string family = "ghz";         ///< ghz | w | uniform | random | product-random
  int n_min = 2;
  int n_max = 6;
  int local_dim = 2;  ///< site dimension for uniform / random / product-random
  std::uint64_t seed = 7;
  OptimizerConfig optimizer{};
};

/// Closed-form P_max for the named families, when one is known:
/// ghz 1/2, w (1 - 1/n)^(n-1), uniform and product-random 1.
std::optional<double> reference_pmax(const std::string& family, int n);

/// One row per site count n in [n_min, n_max]. Validates everything before
/// computing (ParseError / OutOfRange).
std::vector<Row> run(const Options& options);

std::string to_csv(const std::vector<Row>& rows);

}  // namespace qent::sweep
