#include "qent/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "qent/grover.hpp"
#include "qent/io.hpp"
#include "qent/measures.hpp"
#include "qent/product_opt.hpp"
#include "qent/random.hpp"

namespace qent::verify {

namespace {

using Checks = std::vector<CheckResult>;

CheckResult at_most(std::string name, double observed, double tol, std::string detail = "observed <= tol") {
  return {std::move(name), observed, tol, observed <= tol, std::move(detail)};
}

CheckResult at_least(std::string name, double observed, double tol, std::string detail = "observed >= tol") {
  return {std::move(name), observed, tol, observed >= tol, std::move(detail)};
}

std::string with_n(const char* base, BasisIndex n) { return std::string(base) + "[N=" + std::to_string(n) + "]"; }

std::uint64_t case_seed(const Options& o, std::uint64_t suite_tag, std::uint64_t i) {
  return derive_seed(derive_seed(o.seed, suite_tag), i);
}

StateVector grover_input(const SystemShape& shape, const Options& o) {
  const StateVector eta = uniform_state(shape);
  if (!o.tamper) return eta;
  Vector amps = eta.amplitudes();
  amps(1) = -amps(1);
  return StateVector::adopt(shape, std::move(amps));
}

// |P(k) - sin^2((2k+1) theta)| over k up to the iteration bound.
double sine_deviation(const SystemShape& shape, BasisIndex s, const Options& o) {
  const OracleSpec oracle = single_oracle(shape, s);
  const int bound = iteration_bound(shape.size(), 1);
  const GroverRun run = run_grover(grover_input(shape, o), oracle, bound);
  const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(shape.size())));
  double worst = 0.0;
  for (int k = 0; k <= bound; ++k) {
    const double expect = std::pow(std::sin((2 * k + 1) * theta), 2);
    worst = std::max(worst, std::abs(run.prob_curve[static_cast<std::size_t>(k)] - expect));
  }
  return worst;
}

// min over the global phase of || U_G^m eta - e^{ia} s ||.
double residual_to_marked(const SystemShape& shape, BasisIndex s, int m, const Options& o) {
  const GroverRun run = run_grover(grover_input(shape, o), single_oracle(shape, s), m);
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(run.final_state[s])));
}

void grover_suite(const Options& o, Checks& out) {
  for (int n : {4, 6, 8, 10}) {
    const SystemShape shape = SystemShape::qubits(n);
    const BasisIndex size = shape.size();
    out.push_back(at_most(with_n("grover.sine_curve", size), sine_deviation(shape, 0, o), 1e-10,
                          "max_k |P(k) - sin^2((2k+1)theta)| <= tol"));

    const OracleSpec oracle = single_oracle(shape, 0);
    const int m = optimal_iterations(oracle);
    const double p = run_grover(grover_input(shape, o), oracle, m).prob_curve.back();
    out.push_back(at_least(with_n("grover.success_at_m", size), p, 1.0 - 1.0 / static_cast<double>(size),
                           "P(m) >= 1 - 1/N"));
    out.push_back(at_most(with_n("grover.m_within_bound", size), m, iteration_bound(size, 1), "m <= ceil(pi/4 sqrt N)"));

    std::vector<BasisIndex> targets;
    if (size <= 64) {
      for (BasisIndex s = 0; s < size; ++s) targets.push_back(s);
    } else {
      Rng rng(case_seed(o, 1, size));
      std::uniform_int_distribution<BasisIndex> pick(0, size - 1);
      for (int i = 0; i < 8; ++i) targets.push_back(pick(rng));
    }
    double worst = 0.0;
    for (BasisIndex s : targets) worst = std::max(worst, residual_to_marked(shape, s, m, o));
    out.push_back(at_most(with_n("grover.residual_to_marked", size), worst, 2.0 / std::sqrt(double(size)),
                          "max_s min_a ||U_G^m eta - e^{ia}|s>|| <= 2/sqrt(N)"));
  }

  {
    const SystemShape shape = SystemShape::qubits(2);
    double worst = 0.0;
    for (BasisIndex s = 0; s < 4; ++s)
      worst = std::max(worst, std::abs(run_grover(grover_input(shape, o), single_oracle(shape, s), 1).prob_curve[1] - 1.0));
    out.push_back(at_most("grover.n4_single_iteration", worst, 1e-12, "max_s |P(1) - 1| <= tol"));
  }

  {
    const SystemShape shape = SystemShape::qubits(4);
    const int bound = iteration_bound(16, 1);
    const GroverRun ref = run_grover(grover_input(shape, o), single_oracle(shape, 0), bound);
    double worst = 0.0;
    for (BasisIndex s = 1; s < 16; ++s) {
      const GroverRun run = run_grover(uniform_state(shape), single_oracle(shape, s), bound);
      for (int k = 0; k <= bound; ++k)
        worst = std::max(worst, std::abs(run.prob_curve[std::size_t(k)] - ref.prob_curve[std::size_t(k)]));
    }
    out.push_back(at_most("grover.marked_position_symmetry", worst, 1e-12, "max_{s,k} |P_s(k) - P_0(k)| <= tol"));
  }

  {
    const SystemShape shape({3, 3});
    out.push_back(at_most("grover.qudit_3x3_sine_curve", sine_deviation(shape, 4, o), 1e-10,
                          "max_k |P(k) - sin^2((2k+1) asin(1/3))| <= tol"));
    const OracleSpec oracle = single_oracle(shape, 4);
    const int m = optimal_iterations(oracle);
    out.push_back(at_most("grover.qudit_3x3_optimal_m", std::abs(m - 2), 0.0, "|m - 2| == 0"));
    const double p = run_grover(grover_input(shape, o), oracle, m).prob_curve.back();
    const double expect = std::pow(std::sin(5.0 * std::asin(1.0 / 3.0)), 2);
    out.push_back(at_most("grover.qudit_3x3_success", std::abs(p - expect), 1e-10, "|P(m) - sin^2(5 asin(1/3))| <= tol"));
  }
}

void pmax_suite(const Options& o, Checks& out) {
  OptimizerConfig cfg;
  cfg.seed = o.seed;

  for (int n : {2, 3}) {
    const SystemShape shape = SystemShape::qubits(n);
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 50; ++i) {
      const StateVector psi = random_state(shape, case_seed(o, 10 + n, i));
      SimulationOptions sim;
      sim.optimizer = cfg;
      worst = std::max(worst, std::abs(pmax_simulated(psi, sim) - pmax_overlap(psi, cfg).value));
    }
    out.push_back(at_most(with_n("pmax.simulated_vs_overlap", shape.size()), worst,
                          5.0 / std::sqrt(static_cast<double>(shape.size())),
                          "max |pmax_simulated - pmax_overlap| over 50 states <= 5/sqrt(N)"));
  }

  {
    Rng rng(case_seed(o, 20, 0));
    std::uniform_int_distribution<int> dim(2, 8);
    double worst = 0.0;
    bool all_converged = true;
    for (std::uint64_t i = 0; i < 100; ++i) {
      const SystemShape shape({dim(rng), dim(rng)});
      const StateVector psi = random_state(shape, case_seed(o, 21, i));
      const PmaxResult r = pmax_overlap(psi, cfg);
      all_converged = all_converged && r.converged;
      const int first[] = {0};
      worst = std::max(worst, std::abs(r.value - pmax_bipartite(psi, first)));
    }
    out.push_back(at_most("pmax.bipartite_closed_form", worst, 1e-9, "max |pmax_overlap - s_max^2| over 100 states"));
    out.push_back(at_least("pmax.bipartite_converged", all_converged ? 1.0 : 0.0, 1.0, "every run converged"));
  }

  {
    const SystemShape shape = SystemShape::qubits(3);
    double lowest = 1.0;
    double highest = -1.0;
    for (std::uint64_t i = 0; i < 50; ++i) {
      const StateVector psi = random_state(shape, case_seed(o, 30, i));
      const double diff = pmax_overlap(psi, cfg).value - pmax_grid_oracle(psi, 64);
      lowest = std::min(lowest, diff);
      highest = std::max(highest, diff);
    }
    out.push_back(at_least("pmax.grid_lower_bound", lowest, -1e-9, "min (pmax_overlap - grid64) >= -tol"));
    out.push_back(at_most("pmax.grid_coarseness", highest, 5e-3, "max (pmax_overlap - grid64) <= tol"));
  }

  {
    const SystemShape shape = SystemShape::qubits(3);
    double worst_lu = 0.0;
    double worst_feasible = 0.0;
    double worst_basis = 1.0;
    for (std::uint64_t i = 0; i < 30; ++i) {
      const StateVector psi = random_state(shape, case_seed(o, 40, i));
      const LocalUnitaryLayer layer = random_local_layer(shape, case_seed(o, 41, i));
      const PmaxResult r = pmax_overlap(psi, cfg);
      worst_lu = std::max(worst_lu, std::abs(pmax_overlap(apply_local(layer, psi), cfg).value - r.value));
      worst_feasible =
          std::max(worst_feasible, std::abs(std::norm(inner(product_to_state(r.argmax), psi)) - r.value));
      worst_basis = std::min(worst_basis, r.value - psi.amplitudes().cwiseAbs2().maxCoeff());
    }
    out.push_back(at_most("pmax.local_unitary_invariance", worst_lu, 1e-8, "max |pmax(L psi) - pmax(psi)|"));
    out.push_back(at_most("pmax.argmax_feasible", worst_feasible, 1e-12, "max ||<argmax|psi>|^2 - value|"));
    out.push_back(at_least("pmax.basis_lower_bound", worst_basis, 0.0, "min (value - max_x |psi_x|^2) >= 0"));
  }
}

void measures_suite(const Options& o, Checks& out) {
  OptimizerConfig cfg;
  cfg.seed = o.seed;
  const double inv_sqrt2 = std::sqrt(0.5);

  auto named = [&](const char* name, const StateVector& psi, double expect) {
    const MeasureReport r = groverian(psi, cfg);
    out.push_back(at_most(name, std::abs(r.groverian - expect), 1e-6, "|G - expected| <= tol"));
    out.push_back(at_least(std::string(name) + ".converged", r.converged ? 1.0 : 0.0, 1.0, "optimizer converged"));
  };
  named("measures.G_bell", io::bell_state(), inv_sqrt2);
  named("measures.G_ghz3", io::ghz_state(3), inv_sqrt2);
  named("measures.G_w3", io::w_state(3), std::sqrt(5.0 / 9.0));

  {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 20; ++i) {
      const SystemShape shape = SystemShape::qubits(2 + static_cast<int>(i % 4));
      worst = std::max(worst, groverian(product_to_state(random_product(shape, case_seed(o, 50, i))), cfg).groverian);
    }
    out.push_back(at_most("measures.G_product_states", worst, 1e-6, "max G over random product states"));
  }

  {
    const SystemShape shape = SystemShape::qubits(3);
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
      const StateVector psi = random_state(shape, case_seed(o, 60, i));
      const LocalUnitaryLayer layer = random_local_layer(shape, case_seed(o, 61, i));
      worst = std::max(worst, std::abs(groverian(apply_local(layer, psi), cfg).groverian - groverian(psi, cfg).groverian));
    }
    out.push_back(at_most("measures.local_unitary_invariance", worst, 1e-8, "max |G(L psi) - G(psi)| over 100 pairs"));
  }

  {
    Rng rng(case_seed(o, 70, 0));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int applicable = 0;
    int violations = 0;
    auto spectrum = [&](int k) {
      std::vector<double> p(static_cast<std::size_t>(k));
      double sum = 0.0;
      for (auto& x : p) sum += (x = -std::log(1.0 - unit(rng)));
      for (auto& x : p) x /= sum;
      return p;
    };
    while (applicable < 10000) {
      const int k = applicable % 2 == 0 ? 2 : 3;
      std::vector<double> a = spectrum(k);
      std::vector<double> b = spectrum(k);
      if (!majorizes(b, a)) std::swap(a, b);
      const MonotoneVerdict v = monotone_check_bipartite(a, b);
      if (!v.applicable) continue;
      ++applicable;
      if (!v.monotone_ok) ++violations;
    }
    out.push_back(at_most("measures.majorization_monotone", violations, 0.0, "violations among 10^4 LOCC-reachable pairs"));
  }

  {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
      const EntropyPair e = entropy_check(random_state(SystemShape::qubits(2), case_seed(o, 80, i)));
      worst = std::max(worst, std::abs(e.entropy - e.binary_entropy_of_g2));
    }
    out.push_back(at_most("measures.entropy_relation", worst, 1e-9, "max |S(rho_A) - h(G^2)| over 100 states"));
  }

  {
    const double g = groverian_mixed(maximally_mixed(SystemShape::qubits(2)), cfg).groverian;
    out.push_back(at_most("measures.mixed_maximally_mixed", std::abs(g - std::sqrt(0.75)), 1e-9,
                          "|G(I/4) - sqrt(1 - 1/N)| <= tol"));
    out.push_back(at_least("measures.mixed_not_monotone_witness", g, 1e-3, "G(I/4) > 0 on a separable state"));

    Rng rng(case_seed(o, 90, 0));
    std::uniform_int_distribution<int> sites(2, 3);
    std::uniform_int_distribution<int> dim(2, 3);
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 50; ++i) {
      std::vector<DensityMatrix> locals;
      const int n = sites(rng);
      for (int j = 0; j < n; ++j)
        locals.push_back(random_density(SystemShape({dim(rng)}), case_seed(o, 91, i * 8 + std::uint64_t(j))));
      const double direct = groverian_mixed(tensor_product(locals), cfg).groverian;
      worst = std::max(worst, std::abs(direct - groverian_product_mixed(locals)));
    }
    out.push_back(at_most("measures.mixed_product_formula", worst, 1e-9, "max |G(rho_1 x ..) - sqrt(1 - prod lambda)|"));
  }
}

}  // namespace

std::vector<CheckResult> run_suite(std::string_view suite, const Options& options) {
  Checks out;
  const bool all = suite == "all";
  if (!all && suite != "grover" && suite != "pmax" && suite != "measures")
    throw Error(ErrorCode::ParseError, "unknown suite '" + std::string(suite) + "'");
  if (all || suite == "grover") grover_suite(options, out);
  if (all || suite == "pmax") pmax_suite(options, out);
  if (all || suite == "measures") measures_suite(options, out);
  return out;
}

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string describe(const CheckResult& c) {
  return std::string(c.passed ? "PASS " : "FAIL ") + c.name + " observed=" + io::format_double(c.observed) +
         " tol=" + io::format_double(c.tolerance) + " (" + c.detail + ")";
}

}  // namespace qent::verify
