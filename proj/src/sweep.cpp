#include "qent/sweep.hpp"

#include <cmath>
#include <sstream>

#include "qent/grover.hpp"
#include "qent/io.hpp"
#include "qent/measures.hpp"
#include "qent/random.hpp"

namespace qent::sweep {

namespace {

SystemShape family_shape(const Options& o, int n) {
  const bool qubit_family = o.family == "ghz" || o.family == "w";
  return SystemShape(std::vector<int>(static_cast<std::size_t>(n), qubit_family ? 2 : o.local_dim));
}

StateVector family_state(const Options& o, int n) {
  const SystemShape shape = family_shape(o, n);
  const std::uint64_t seed = derive_seed(o.seed, static_cast<std::uint64_t>(n));
  if (o.family == "ghz") return io::ghz_state(n);
  if (o.family == "w") return io::w_state(n);
  if (o.family == "uniform") return uniform_state(shape);
  if (o.family == "random") return random_state(shape, seed);
  return product_to_state(random_product(shape, seed));
}

void validate(const Options& o) {
  const bool measure_ok = o.measure == "pmax" || o.measure == "groverian" || o.measure == "grover-success" ||
                          o.measure == "pmax-gap";
  if (!measure_ok) throw Error(ErrorCode::ParseError, "unknown measure '" + o.measure + "'");
  const bool family_ok = o.family == "ghz" || o.family == "w" || o.family == "uniform" || o.family == "random" ||
                         o.family == "product-random";
  if (!family_ok) throw Error(ErrorCode::ParseError, "unknown family '" + o.family + "'");
  if (o.n_min < 1 || o.n_max < o.n_min) throw Error(ErrorCode::OutOfRange, "need 1 <= n_min <= n_max");
  if (o.local_dim < 2) throw Error(ErrorCode::OutOfRange, "local dimension must be >= 2");
  if ((o.family == "ghz" || o.family == "w") && o.n_min < 2) throw Error(ErrorCode::OutOfRange, "ghz/w need n >= 2");
  if (static_cast<double>(o.n_max) * std::log2(double(o.local_dim)) > 20.5)
    throw Error(ErrorCode::TooLarge, "sweep exceeds N = 2^20");
  o.optimizer.validate();
}

}  // namespace

std::optional<double> reference_pmax(const std::string& family, int n) {
  if (family == "ghz") return 0.5;
  if (family == "w") return std::pow(1.0 - 1.0 / n, n - 1);
  if (family == "uniform" || family == "product-random") return 1.0;
  return std::nullopt;
}

std::vector<Row> run(const Options& o) {
  validate(o);
  std::vector<Row> rows;
  for (int n = o.n_min; n <= o.n_max; ++n) {
    Row row;
    if (o.measure == "grover-success") {
      const SystemShape shape = family_shape(Options{.family = "uniform", .local_dim = o.local_dim}, n);
      const OracleSpec oracle = single_oracle(shape, 0);
      row.size = shape.size();
      row.value = run_grover(uniform_state(shape), oracle, optimal_iterations(oracle)).prob_curve.back();
      row.reference = 1.0;
      row.error = 1.0 - row.value;
      rows.push_back(row);
      continue;
    }
    const StateVector psi = family_state(o, n);
    row.size = psi.size();
    const std::optional<double> ref = reference_pmax(o.family, n);
    if (o.measure == "pmax") {
      row.value = pmax_overlap(psi, o.optimizer).value;
      row.reference = ref;
    } else if (o.measure == "groverian") {
      row.value = groverian(psi, o.optimizer).groverian;
      if (ref) row.reference = std::sqrt(1.0 - *ref);
    } else {
      SimulationOptions sim;
      sim.optimizer = o.optimizer;
      sim.max_size = BasisIndex{1} << 20;
      row.value = pmax_simulated(psi, sim);
      row.reference = pmax_overlap(psi, o.optimizer).value;
    }
    if (row.reference) row.error = std::abs(row.value - *row.reference);
    rows.push_back(row);
  }
  return rows;
}

std::string to_csv(const std::vector<Row>& rows) {
  std::ostringstream out;
  out << "N,value,reference,error\n";
  for (const Row& r : rows) {
    out << r.size << ',' << io::format_double(r.value) << ',';
    if (r.reference) out << io::format_double(*r.reference);
    out << ',';
    if (r.error) out << io::format_double(*r.error);
    out << '\n';
  }
  return out.str();
}

}  // namespace qent::sweep
