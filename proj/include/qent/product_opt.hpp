#pragma once

// Maximal overlap of a state with the set of product states:
//   P_max(psi) = max_{e_0..e_{n-1}} |<e_0,...,e_{n-1}|psi>|^2
// and the linear extension <e|rho|e> for density matrices.

#include <cstdint>
#include <span>
#include <vector>

#include "qent/statevector.hpp"

namespace qent {

struct OptimizerConfig {
  int restarts = 20;
  double tol = 1e-12;  ///< stop once a sweep improves the objective by less than this
  int max_sweeps = 1000;
  std::uint64_t seed = 0;
  bool record_trace = false;  ///< keep the objective after every single-site update

  /// Throws InvalidConfig unless restarts >= 1, tol > 0, max_sweeps >= 1.
  void validate() const;
};

struct PmaxResult {
  double value = 0.0;
  ProductState argmax;
  int restarts_used = 0;
  int sweeps = 0;  ///< sweeps taken by the winning restart
  bool converged = false;
  std::vector<double> best_per_restart;
  std::vector<std::vector<double>> traces;  ///< per restart, only with record_trace
};

/// Alternating exact single-site maximization. Restart 0 starts at the
/// uniform product, later restarts at Haar-random products drawn from
/// derive_seed(cfg.seed, restart). The best restart wins, lowest index on ties.
PmaxResult pmax_overlap(const StateVector& state, const OptimizerConfig& cfg = {});

/// Same scheme on <e|rho|e>; each update takes the top eigenvector of rho
/// contracted with the fixed factors on both sides.
PmaxResult pmax_mixed(const DensityMatrix& rho, const OptimizerConfig& cfg = {});

/// Exhaustive maximum over the Bloch-angle grid theta_i = pi i / R
/// (i = 0..R) and phi_k = 2 pi k / R (k = 0..R-1) on every qubit, R = resolution.
/// Requires all sites to be qubits, n <= 3 (TooLarge otherwise) and R >= 32.
/// Grids with R a power of two nest, so the value is monotone in R.
double pmax_grid_oracle(const StateVector& state, int resolution);

/// Unpruned enumeration of the same grid, for cross-checking at small sizes.
/// No lower limit on the resolution.
double pmax_grid_bruteforce(const StateVector& state, int resolution);

/// Square of the largest Schmidt coefficient across the split.
double pmax_bipartite(const StateVector& state, std::span<const int> first);

}  // namespace qent
