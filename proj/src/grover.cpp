#include "qent/grover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/QR>

namespace qent {

namespace {

constexpr double kTieSlack = 1e-12;

// Applies one d x d matrix to every site in turn.
Vector apply_per_site(const SystemShape& shape, Vector amps, bool adjoint) {
  for (int j = 0; j < shape.sites(); ++j) {
    const int d = shape.dim(j);
    const Matrix v = adjoint ? Matrix(fourier_matrix(d).adjoint()) : fourier_matrix(d);
    const auto right = static_cast<Eigen::Index>(shape.stride_after(j));
    const auto left = static_cast<Eigen::Index>(shape.stride_before(j));
    Vector column(d);
    for (Eigen::Index l = 0; l < left; ++l)
      for (Eigen::Index r = 0; r < right; ++r) {
        const Eigen::Index base = l * d * right + r;
        for (int k = 0; k < d; ++k) column(k) = amps(base + k * right);
        const Vector out = v * column;
        for (int k = 0; k < d; ++k) amps(base + k * right) = out(k);
      }
  }
  return amps;
}

void require_shape(const OracleSpec& oracle, const StateVector& state) {
  if (oracle.shape() != state.shape()) throw Error(ErrorCode::DimensionMismatch, "oracle and state shapes differ");
}

// Unitary whose first column is proportional to v.
Matrix completion_with_first_column(const Vector& v) {
  const Matrix column = v;
  Eigen::HouseholderQR<Matrix> qr(column);
  return qr.householderQ();
}

}  // namespace

bool OracleSpec::is_marked(BasisIndex x) const { return std::binary_search(marked_.begin(), marked_.end(), x); }

OracleSpec make_oracle(SystemShape shape, std::vector<BasisIndex> marked) {
  if (marked.empty()) throw Error(ErrorCode::InvalidOracle, "no marked states");
  std::sort(marked.begin(), marked.end());
  if (std::adjacent_find(marked.begin(), marked.end()) != marked.end())
    throw Error(ErrorCode::InvalidOracle, "duplicate marked index");
  if (marked.back() >= shape.size())
    throw Error(ErrorCode::OutOfRange, "marked index " + std::to_string(marked.back()) + " >= N");
  return OracleSpec(std::move(shape), std::move(marked));
}

OracleSpec single_oracle(const SystemShape& shape, BasisIndex s) { return make_oracle(shape, {s}); }

StateVector oracle_phase(const OracleSpec& oracle, const StateVector& state) {
  require_shape(oracle, state);
  Vector amps = state.amplitudes();
  for (BasisIndex x : oracle.marked()) amps(static_cast<Eigen::Index>(x)) = -amps(static_cast<Eigen::Index>(x));
  return StateVector::adopt(state.shape(), std::move(amps));
}

StateVector diffusion(const StateVector& state) {
  const SystemShape& shape = state.shape();
  Vector amps = apply_per_site(shape, state.amplitudes(), /*adjoint=*/true);
  amps(0) = -amps(0);
  return StateVector::adopt(shape, apply_per_site(shape, std::move(amps), /*adjoint=*/false));
}

StateVector grover_iterate(const OracleSpec& oracle, const StateVector& state) {
  return diffusion(oracle_phase(oracle, state));
}

double success_probability(const OracleSpec& oracle, const StateVector& state) {
  require_shape(oracle, state);
  double p = 0.0;
  for (BasisIndex x : oracle.marked()) p += std::norm(state[x]);
  return p;
}

int iteration_bound(BasisIndex size, BasisIndex marked_count) {
  if (marked_count == 0) throw Error(ErrorCode::InvalidOracle, "no marked states");
  const double ratio = static_cast<double>(size) / static_cast<double>(marked_count);
  return static_cast<int>(std::ceil(std::numbers::pi / 4.0 * std::sqrt(ratio)));
}

int optimal_iterations(const OracleSpec& oracle) {
  const int bound = iteration_bound(oracle.shape().size(), oracle.count());
  const GroverRun run = run_grover(uniform_state(oracle.shape()), oracle, bound);
  int best = 0;
  for (int k = 1; k <= bound; ++k)
    if (run.prob_curve[static_cast<std::size_t>(k)] > run.prob_curve[static_cast<std::size_t>(best)] + kTieSlack)
      best = k;
  return best;
}

GroverRun run_grover(const StateVector& initial, const OracleSpec& oracle, int iterations) {
  require_shape(oracle, initial);
  if (iterations < 0) throw Error(ErrorCode::OutOfRange, "negative iteration count");
  std::vector<double> curve;
  curve.reserve(static_cast<std::size_t>(iterations) + 1);
  StateVector state = initial;
  curve.push_back(success_probability(oracle, state));
  for (int k = 0; k < iterations; ++k) {
    state = grover_iterate(oracle, state);
    curve.push_back(success_probability(oracle, state));
  }
  return GroverRun{iterations, std::move(curve), std::move(state)};
}

GroverRun run_modified(const StateVector& input, const LocalUnitaryLayer& layer, const OracleSpec& oracle,
                       int iterations) {
  return run_grover(apply_local(layer, input), oracle, iterations);
}

LocalUnitaryLayer alignment_layer(const ProductState& target) {
  const SystemShape& shape = target.shape();
  std::vector<Matrix> gates;
  for (int j = 0; j < shape.sites(); ++j) {
    const int d = shape.dim(j);
    const Vector uniform = Vector::Constant(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
    const Matrix to_uniform = completion_with_first_column(uniform);
    const Matrix from_target = completion_with_first_column(target.factor(j));
    gates.push_back(to_uniform * from_target.adjoint());
  }
  return make_layer(shape, std::move(gates));
}

double pmax_simulated(const StateVector& input, const SimulationOptions& options) {
  const SystemShape& shape = input.shape();
  if (shape.size() > options.max_size)
    throw Error(ErrorCode::TooLarge, "N = " + std::to_string(shape.size()) + " exceeds the simulation cap");

  const PmaxResult best = pmax_overlap(input, options.optimizer);
  const StateVector prepared = apply_local(alignment_layer(best.argmax), input);
  const int m = optimal_iterations(single_oracle(shape, 0));

  double total = 0.0;
  for (BasisIndex s = 0; s < shape.size(); ++s) {
    const GroverRun run = run_grover(prepared, single_oracle(shape, s), m);
    total += run.prob_curve.back();
  }
  return total / static_cast<double>(shape.size());
}

}  // namespace qent
