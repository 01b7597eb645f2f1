#pragma once

// Groverian entanglement G = sqrt(1 - P_max) and related quantities.

#include <span>
#include <string_view>

#include "qent/product_opt.hpp"
#include "qent/statevector.hpp"

namespace qent {

enum class Method { Alternating, BipartiteClosedForm, Grid, Mixed };

std::string_view to_string(Method method) noexcept;

struct MeasureReport {
  double pmax = 0.0;
  double groverian = 0.0;  ///< sqrt(1 - pmax)
  double vedral_e = 0.0;   ///< 2 - 2 sqrt(pmax)
  Method method = Method::Alternating;
  int restarts_used = 0;
  int sweeps = 0;
  bool converged = true;
};

/// Fills groverian and vedral_e from pmax (clamped into [0, 1]).
MeasureReport make_report(double pmax, Method method);

MeasureReport groverian(const StateVector& state, const OptimizerConfig& cfg = {});
MeasureReport groverian_bipartite(const StateVector& state, std::span<const int> first);
MeasureReport groverian_grid(const StateVector& state, int resolution);

/// Linear extension to density matrices. Not an entanglement monotone: it is
/// positive on separable mixed states such as the maximally mixed one.
MeasureReport groverian_mixed(const DensityMatrix& rho, const OptimizerConfig& cfg = {});

/// sqrt(1 - prod_j lambda_j), lambda_j the largest eigenvalue of locals[j].
double groverian_product_mixed(std::span<const DensityMatrix> locals);

/// sqrt(1 - f^2); OutOfRange unless f is in [0, 1].
double bures_distance(double fidelity);

/// -x log2 x - (1 - x) log2(1 - x), zero at both ends.
double binary_entropy(double x);

/// von Neumann entropy in bits.
double entropy_bits(const DensityMatrix& rho);

struct EntropyPair {
  double entropy = 0.0;  ///< S(rho_A)
  double binary_entropy_of_g2 = 0.0;  ///< h(G^2), G from the Schmidt closed form
};

/// Two-qubit states only (WrongShape otherwise).
EntropyPair entropy_check(const StateVector& state);

/// True when `target` majorizes `source`: sorted partial sums of target
/// dominate those of source. Shorter vectors are padded with zeros.
bool majorizes(std::span<const double> target, std::span<const double> source);

struct MonotoneVerdict {
  bool applicable = false;
  bool monotone_ok = true;
};

/// For Schmidt spectra of pure bipartite states: when the target is reachable
/// by LOCC (target majorizes source), checks G(source) >= G(target) - 1e-12.
/// InvalidDistribution on negative entries or sums away from 1.
MonotoneVerdict monotone_check_bipartite(std::span<const double> source_p, std::span<const double> target_p);

}  // namespace qent
