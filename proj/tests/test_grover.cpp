#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"

#include "qent/grover.hpp"
#include "qent/io.hpp"
#include "qent/random.hpp"

using namespace qent;
using qent::testing::check_close;
using qent::testing::hadamard;
using qent::testing::kron;

namespace {

double sine_prediction(BasisIndex n, int k) {
  const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(n)));
  const double s = std::sin((2 * k + 1) * theta);
  return s * s;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("make_oracle validation") {
  const SystemShape q2 = SystemShape::qubits(2);
  CHECK(code_of([&] { make_oracle(q2, {}); }) == ErrorCode::InvalidOracle);
  CHECK(code_of([&] { make_oracle(q2, {1, 1}); }) == ErrorCode::InvalidOracle);
  CHECK(code_of([&] { make_oracle(q2, {4}); }) == ErrorCode::OutOfRange);
  const OracleSpec o = make_oracle(q2, {3, 0});
  CHECK(o.count() == 2);
  CHECK(o.marked()[0] == 0);
  CHECK(o.is_marked(3));
  CHECK_FALSE(o.is_marked(1));
}

TEST_CASE("oracle_phase") {
  const SystemShape q2 = SystemShape::qubits(2);
  const StateVector eta = uniform_state(q2);
  Vector expect(4);
  expect << -0.5, 0.5, 0.5, 0.5;
  check_close(oracle_phase(single_oracle(q2, 0), eta).amplitudes(), expect, 0.0);

  const StateVector psi = random_state(q2, 3);
  const OracleSpec o = make_oracle(q2, {1, 2});
  check_close(oracle_phase(o, oracle_phase(o, psi)).amplitudes(), psi.amplitudes(), 0.0);

  const OracleSpec all = make_oracle(q2, {0, 1, 2, 3});
  check_close(oracle_phase(all, psi).amplitudes(), -psi.amplitudes(), 0.0);
  const GroverRun a = run_grover(psi, all, 4);
  for (double p : a.prob_curve) CHECK(std::abs(p - 1.0) <= 1e-12);

  CHECK(code_of([&] { oracle_phase(single_oracle(SystemShape::qubits(3), 0), eta); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("diffusion") {
  const SystemShape q2 = SystemShape::qubits(2);
  const StateVector eta = uniform_state(q2);
  CHECK(std::abs(std::abs(inner(eta, diffusion(eta))) - 1.0) <= 1e-14);

  // I - 2|eta><eta| applied to |0> at N = 4.
  Vector expect(4);
  expect << 0.5, -0.5, -0.5, -0.5;
  const StateVector out = diffusion(basis_state(q2, 0));
  check_close(out.amplitudes(), expect, 1e-15);
  CHECK(std::abs(std::abs(inner(eta, out)) - 0.5) <= 1e-15);

  SUBCASE("matches the dense V I0 V^dag") {
    for (const std::vector<int>& dims : {std::vector<int>{2, 2, 2}, std::vector<int>{3, 2}, std::vector<int>{3, 3}}) {
      const SystemShape shape(dims);
      Matrix v = Matrix::Ones(1, 1);
      for (int d : dims) v = kron(v, fourier_matrix(d));
      const auto n = static_cast<Eigen::Index>(shape.size());
      Matrix i0 = Matrix::Identity(n, n);
      i0(0, 0) = -1.0;
      const Matrix dense = v * i0 * v.adjoint();
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const StateVector psi = random_state(shape, seed);
        check_close(diffusion(psi).amplitudes(), dense * psi.amplitudes(), 1e-12);
        CHECK(std::abs(diffusion(psi).norm() - 1.0) <= 1e-12);
      }
    }
  }
  SUBCASE("qubit Fourier gate is the Hadamard") {
    CHECK((fourier_matrix(2) - hadamard()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("grover_iterate") {
  const SystemShape q2 = SystemShape::qubits(2);
  const StateVector out = grover_iterate(single_oracle(q2, 2), uniform_state(q2));
  CHECK(std::abs(std::abs(out[2]) - 1.0) <= 1e-12);

  const SystemShape q4 = SystemShape::qubits(4);
  const GroverRun run = run_grover(uniform_state(q4), single_oracle(q4, 5), 6);
  for (int k = 0; k <= 6; ++k) CHECK(std::abs(run.prob_curve[std::size_t(k)] - sine_prediction(16, k)) <= 1e-10);

  SUBCASE("global phase covariance") {
    const StateVector psi = random_state(q4, 8);
    const Complex phase = std::polar(1.0, 0.9);
    const StateVector rotated = make_state(q4, Vector(phase * psi.amplitudes()));
    const OracleSpec o = make_oracle(q4, {1, 7});
    check_close(grover_iterate(o, rotated).amplitudes(), phase * grover_iterate(o, psi).amplitudes(), 1e-13);
  }
}

TEST_CASE("optimal_iterations") {
  const SystemShape q2 = SystemShape::qubits(2);
  CHECK(optimal_iterations(single_oracle(q2, 0)) == 1);
  CHECK(optimal_iterations(make_oracle(q2, {0, 1, 2, 3})) == 0);

  const SystemShape q4 = SystemShape::qubits(4);
  const OracleSpec o16 = single_oracle(q4, 0);
  const int m = optimal_iterations(o16);
  CHECK(m == 3);
  const double p = run_grover(uniform_state(q4), o16, m).prob_curve.back();
  CHECK(p == doctest::Approx(0.9613).epsilon(1e-4));
  CHECK(std::abs(p - sine_prediction(16, 3)) <= 1e-12);

  CHECK(iteration_bound(16, 1) == 4);
  CHECK(iteration_bound(1024, 1) == 26);
  CHECK(optimal_iterations(single_oracle(SystemShape::qubits(10), 17)) == 25);
  CHECK(optimal_iterations(single_oracle(SystemShape({3, 3}), 4)) == 2);
}

TEST_CASE("run_grover") {
  const SystemShape q10 = SystemShape::qubits(10);
  const OracleSpec o = single_oracle(q10, 100);
  const GroverRun big = run_grover(uniform_state(q10), o, optimal_iterations(o));
  CHECK(big.prob_curve.back() >= 1.0 - 1.0 / 1024.0);
  CHECK(big.prob_curve.size() == std::size_t(big.iterations) + 1);

  const SystemShape q2 = SystemShape::qubits(2);
  const GroverRun zero = run_grover(basis_state(q2, 3), single_oracle(q2, 3), 0);
  CHECK(zero.prob_curve == std::vector<double>{1.0});

  SUBCASE("invariant complement") {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex amps[] = {0.0, s, -s, 0.0};
    const GroverRun run = run_grover(make_state(q2, amps), single_oracle(q2, 0), 6);
    for (double p : run.prob_curve) CHECK(std::abs(p - run.prob_curve.front()) <= 1e-14);
  }
  SUBCASE("errors") {
    CHECK(code_of([&] { run_grover(uniform_state(q2), single_oracle(q10, 0), 1); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([&] { run_grover(uniform_state(q2), single_oracle(q2, 0), -1); }) == ErrorCode::OutOfRange);
  }
}

TEST_CASE("run_modified") {
  const SystemShape q2 = SystemShape::qubits(2);
  const StateVector psi = random_state(q2, 21);
  const OracleSpec o = single_oracle(q2, 1);
  CHECK(run_modified(psi, identity_layer(q2), o, 3).prob_curve == run_grover(psi, o, 3).prob_curve);

  const LocalUnitaryLayer hh = make_layer(q2, {hadamard(), hadamard()});
  for (BasisIndex s = 0; s < 4; ++s)
    CHECK(std::abs(run_modified(basis_state(q2, 0), hh, single_oracle(q2, s), 1).prob_curve.back() - 1.0) <= 1e-12);

  // Averaged over s, a Bell input cannot beat its product overlap by more than O(1/sqrt N).
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const LocalUnitaryLayer layer = random_local_layer(q2, seed);
    double avg = 0.0;
    for (BasisIndex s = 0; s < 4; ++s) avg += run_modified(io::bell_state(), layer, single_oracle(q2, s), 1).prob_curve.back();
    avg /= 4.0;
    CHECK(avg <= 0.5 + 5.0 / 2.0);
  }
}

TEST_CASE("alignment_layer sends the target product to the uniform state") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SystemShape shape({2, 3, 2});
    const ProductState p = random_product(shape, seed);
    const StateVector out = apply_local(alignment_layer(p), product_to_state(p));
    CHECK(std::abs(std::abs(inner(uniform_state(shape), out)) - 1.0) <= 1e-12);
  }
}

TEST_CASE("pmax_simulated") {
  const SystemShape q2 = SystemShape::qubits(2);
  const SystemShape q3 = SystemShape::qubits(3);
  CHECK(pmax_simulated(uniform_state(q3)) >= 1.0 - 1.0 / 8.0);
  CHECK(std::abs(pmax_simulated(uniform_state(q2)) - 1.0) <= 1e-12);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const StateVector p = product_to_state(random_product(q3, seed));
    CHECK(pmax_simulated(p) >= 1.0 - 5.0 / std::sqrt(8.0));
  }
  CHECK(std::abs(pmax_simulated(io::bell_state()) - 0.5) <= 5.0 / 2.0);

  SimulationOptions capped;
  capped.max_size = 4;
  CHECK(code_of([&] { pmax_simulated(uniform_state(q3), capped); }) == ErrorCode::TooLarge);
}
