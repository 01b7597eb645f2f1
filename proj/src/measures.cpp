#include "qent/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

namespace qent {

namespace {

constexpr double kDistributionTol = 1e-9;
constexpr double kMajorizationSlack = 1e-12;

MeasureReport from_result(const PmaxResult& r, Method method) {
  MeasureReport report = make_report(r.value, method);
  report.restarts_used = r.restarts_used;
  report.sweeps = r.sweeps;
  report.converged = r.converged;
  return report;
}

std::vector<double> checked_distribution(std::span<const double> p) {
  if (p.empty()) throw Error(ErrorCode::InvalidDistribution, "empty distribution");
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw Error(ErrorCode::InvalidDistribution, "negative or NaN entry");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kDistributionTol) throw Error(ErrorCode::InvalidDistribution, "entries do not sum to 1");
  std::vector<double> out(p.begin(), p.end());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double largest_eigenvalue(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

}  // namespace

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::Alternating: return "alternating";
    case Method::BipartiteClosedForm: return "bipartite-closed-form";
    case Method::Grid: return "grid";
    case Method::Mixed: return "mixed";
  }
  return "unknown";
}

MeasureReport make_report(double pmax, Method method) {
  const double p = std::clamp(pmax, 0.0, 1.0);
  MeasureReport r;
  r.pmax = p;
  r.groverian = std::sqrt(1.0 - p);
  r.vedral_e = 2.0 - 2.0 * std::sqrt(p);
  r.method = method;
  return r;
}

MeasureReport groverian(const StateVector& state, const OptimizerConfig& cfg) {
  return from_result(pmax_overlap(state, cfg), Method::Alternating);
}

MeasureReport groverian_bipartite(const StateVector& state, std::span<const int> first) {
  return make_report(pmax_bipartite(state, first), Method::BipartiteClosedForm);
}

MeasureReport groverian_grid(const StateVector& state, int resolution) {
  return make_report(pmax_grid_oracle(state, resolution), Method::Grid);
}

MeasureReport groverian_mixed(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  return from_result(pmax_mixed(rho, cfg), Method::Mixed);
}

double groverian_product_mixed(std::span<const DensityMatrix> locals) {
  if (locals.empty()) throw Error(ErrorCode::InvalidDensity, "no local densities");
  double prod = 1.0;
  for (const auto& rho : locals) {
    if (rho.shape().sites() != 1) throw Error(ErrorCode::InvalidDensity, "local density must be single-site");
    prod *= largest_eigenvalue(rho.entries());
  }
  return std::sqrt(std::max(0.0, 1.0 - prod));
}

double bures_distance(double fidelity) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw Error(ErrorCode::OutOfRange, "fidelity must lie in [0, 1]");
  return std::sqrt(1.0 - fidelity * fidelity);
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::OutOfRange, "binary entropy argument outside [0, 1]");
  auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
  return term(x) + term(1.0 - x);
}

double entropy_bits(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.entries(), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s;
}

EntropyPair entropy_check(const StateVector& state) {
  const SystemShape& shape = state.shape();
  if (shape.sites() != 2 || !shape.all_qubits()) throw Error(ErrorCode::WrongShape, "entropy check needs two qubits");
  const int first[] = {0};
  const double g = groverian_bipartite(state, first).groverian;
  return EntropyPair{entropy_bits(reduced_density(state, first)), binary_entropy(std::clamp(g * g, 0.0, 1.0))};
}

bool majorizes(std::span<const double> target, std::span<const double> source) {
  std::vector<double> t(target.begin(), target.end());
  std::vector<double> s(source.begin(), source.end());
  const std::size_t len = std::max(t.size(), s.size());
  t.resize(len, 0.0);
  s.resize(len, 0.0);
  std::sort(t.begin(), t.end(), std::greater<>());
  std::sort(s.begin(), s.end(), std::greater<>());
  double ts = 0.0;
  double ss = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    ts += t[i];
    ss += s[i];
    if (ts < ss - kMajorizationSlack) return false;
  }
  return true;
}

MonotoneVerdict monotone_check_bipartite(std::span<const double> source_p, std::span<const double> target_p) {
  const std::vector<double> src = checked_distribution(source_p);
  const std::vector<double> tgt = checked_distribution(target_p);
  MonotoneVerdict v;
  v.applicable = majorizes(tgt, src);
  if (v.applicable) {
    const double g_source = std::sqrt(std::max(0.0, 1.0 - src.front()));
    const double g_target = std::sqrt(std::max(0.0, 1.0 - tgt.front()));
    v.monotone_ok = g_source >= g_target - 1e-12;
  }
  return v;
}

}  // namespace qent
