#pragma once

// Grover search on qubit and qudit registers. The ancilla is never stored:
// with the ancilla in (|0> - |1>)/sqrt 2 the oracle is the register-only
// phase flip I_f = sum_x (-1)^{f(x)} |x><x|.

#include <span>
#include <vector>

#include "qent/product_opt.hpp"
#include "qent/statevector.hpp"

namespace qent {

class OracleSpec {
 public:
  const SystemShape& shape() const noexcept { return shape_; }
  std::span<const BasisIndex> marked() const noexcept { return marked_; }
  BasisIndex count() const noexcept { return marked_.size(); }
  bool is_marked(BasisIndex x) const;

 private:
  friend OracleSpec make_oracle(SystemShape shape, std::vector<BasisIndex> marked);
  OracleSpec(SystemShape shape, std::vector<BasisIndex> marked)
      : shape_(std::move(shape)), marked_(std::move(marked)) {}

  SystemShape shape_;
  std::vector<BasisIndex> marked_;
};

/// Throws InvalidOracle on an empty set or duplicates, OutOfRange on indices >= N.
OracleSpec make_oracle(SystemShape shape, std::vector<BasisIndex> marked);
OracleSpec single_oracle(const SystemShape& shape, BasisIndex s);

struct GroverRun {
  int iterations = 0;
  std::vector<double> prob_curve;  ///< P(k) for k = 0..iterations
  StateVector final_state;
};

StateVector oracle_phase(const OracleSpec& oracle, const StateVector& state);

/// V I_0 V^dag |state> with V the per-site Fourier layer and
/// I_0 = -|0><0| + sum_{x != 0} |x><x|. Equal to (I - 2|eta><eta|)|state>.
StateVector diffusion(const StateVector& state);

/// U_G = V I_0 V^dag I_f.
StateVector grover_iterate(const OracleSpec& oracle, const StateVector& state);

/// sum_{x marked} |amp_x|^2
double success_probability(const OracleSpec& oracle, const StateVector& state);

/// ceil((pi/4) sqrt(N/r))
int iteration_bound(BasisIndex size, BasisIndex marked_count);

/// argmax of P(k) from the uniform state over k = 0..iteration_bound,
/// smallest k on ties.
int optimal_iterations(const OracleSpec& oracle);

GroverRun run_grover(const StateVector& initial, const OracleSpec& oracle, int iterations);

/// run_grover(apply_local(layer, input), oracle, iterations)
GroverRun run_modified(const StateVector& input, const LocalUnitaryLayer& layer, const OracleSpec& oracle,
                       int iterations);

/// Layer whose j-th gate sends target.factor(j) to V_j|0>, the uniform
/// vector on site j (up to a phase).
LocalUnitaryLayer alignment_layer(const ProductState& target);

struct SimulationOptions {
  BasisIndex max_size = 1024;
  OptimizerConfig optimizer{};
};

/// s-averaged success of the modified search with a single marked state,
/// (1/N) sum_s P_s. The layer aligns the optimizer's best product state with
/// the uniform state; m = optimal_iterations for r = 1. Every s is enumerated
/// in ascending order. Throws TooLarge above options.max_size.
double pmax_simulated(const StateVector& input, const SimulationOptions& options = {});

}  // namespace qent
