#include "qent/product_opt.hpp"

#include <cmath>
#include <optional>
#include <utility>

#include <Eigen/Eigenvalues>

#include "qent/random.hpp"

namespace qent {

namespace {

constexpr double kZeroContraction = 1e-14;
constexpr int kReinitAttempts = 8;

struct Step {
  Vector factor;
  double objective;
};

struct RestartOutcome {
  std::vector<Vector> factors;
  double value = 0.0;
  int sweeps = 0;
  bool converged = false;
  bool degenerate = false;
  std::vector<double> trace;
};

std::vector<Vector> uniform_factors(const SystemShape& shape) {
  const ProductState p = uniform_product(shape);
  return {p.factors().begin(), p.factors().end()};
}

template <class Update>
RestartOutcome run_restart(std::vector<Vector> factors, double start_value, const OptimizerConfig& cfg,
                           Update& update) {
  RestartOutcome out;
  out.value = start_value;
  if (cfg.record_trace) out.trace.push_back(out.value);
  const int n = static_cast<int>(factors.size());
  for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
    const double before = out.value;
    for (int j = 0; j < n; ++j) {
      std::optional<Step> step = update(factors, j);
      if (!step) {
        out.degenerate = true;
        return out;
      }
      factors[static_cast<std::size_t>(j)] = std::move(step->factor);
      out.value = step->objective;
      if (cfg.record_trace) out.trace.push_back(out.value);
    }
    out.sweeps = sweep;
    if (out.value - before < cfg.tol) {
      out.converged = true;
      break;
    }
  }
  out.factors = std::move(factors);
  return out;
}

// Restart loop shared by the pure and mixed objectives.
template <class Update, class Objective>
PmaxResult alternate(const SystemShape& shape, const OptimizerConfig& cfg, Update update, Objective objective) {
  cfg.validate();
  std::optional<RestartOutcome> best;
  std::vector<double> per_restart;
  std::vector<std::vector<double>> traces;
  int used = 0;

  for (int r = 0; r < cfg.restarts; ++r) {
    RestartOutcome outcome;
    for (int attempt = 0; attempt < kReinitAttempts; ++attempt) {
      std::vector<Vector> init;
      if (r == 0 && attempt == 0) {
        init = uniform_factors(shape);
      } else {
        const std::uint64_t seed = derive_seed(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)),
                                               static_cast<std::uint64_t>(attempt));
        const ProductState p = random_product(shape, seed);
        init.assign(p.factors().begin(), p.factors().end());
      }
      const double start = objective(init);
      outcome = run_restart(std::move(init), start, cfg, update);
      if (!outcome.degenerate) break;
    }
    if (outcome.degenerate) {
      per_restart.push_back(0.0);
      if (cfg.record_trace) traces.push_back(std::move(outcome.trace));
      continue;
    }
    ++used;
    per_restart.push_back(outcome.value);
    if (cfg.record_trace) traces.push_back(outcome.trace);
    if (!best || outcome.value > best->value) best = std::move(outcome);
  }
  if (!best) throw Error(ErrorCode::ZeroContraction, "every restart hit a vanishing contraction");

  ProductState argmax = make_product(shape, best->factors);
  const std::vector<Vector> canon(argmax.factors().begin(), argmax.factors().end());
  return PmaxResult{
      .value = objective(canon),
      .argmax = std::move(argmax),
      .restarts_used = used,
      .sweeps = best->sweeps,
      .converged = best->converged,
      .best_per_restart = std::move(per_restart),
      .traces = std::move(traces),
  };
}

// Columns are the product vectors with site j replaced by each basis state.
Matrix open_site_kets(std::span<const Vector> factors, int j) {
  std::vector<Vector> work(factors.begin(), factors.end());
  const auto d = factors[static_cast<std::size_t>(j)].size();
  Eigen::Index n = 1;
  for (const Vector& f : factors) n *= f.size();
  Matrix kets(n, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    work[static_cast<std::size_t>(j)] = Vector::Unit(d, a);
    kets.col(a) = kron_factors(work);
  }
  return kets;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (restarts < 1) throw Error(ErrorCode::InvalidConfig, "restarts must be >= 1");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidConfig, "tol must be > 0");
  if (max_sweeps < 1) throw Error(ErrorCode::InvalidConfig, "max_sweeps must be >= 1");
}

PmaxResult pmax_overlap(const StateVector& state, const OptimizerConfig& cfg) {
  auto update = [&state](const std::vector<Vector>& factors, int j) -> std::optional<Step> {
    Vector v = contract_except(state, factors, j);
    const double nrm = v.norm();
    if (nrm < kZeroContraction) return std::nullopt;
    return Step{v / nrm, nrm * nrm};
  };
  auto objective = [&state](const std::vector<Vector>& factors) {
    return std::norm(kron_factors(factors).dot(state.amplitudes()));
  };
  return alternate(state.shape(), cfg, update, objective);
}

PmaxResult pmax_mixed(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  const Matrix& r = rho.entries();
  auto update = [&r](const std::vector<Vector>& factors, int j) -> std::optional<Step> {
    const Matrix kets = open_site_kets(factors, j);
    const Matrix local = kets.adjoint() * r * kets;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (local + local.adjoint()));
    const Eigen::Index top = local.rows() - 1;
    const double lambda = es.eigenvalues()(top);
    if (lambda < kZeroContraction) return std::nullopt;
    return Step{canonical_phase(es.eigenvectors().col(top)), lambda};
  };
  auto objective = [&r](const std::vector<Vector>& factors) {
    const Vector e = kron_factors(factors);
    return e.dot(r * e).real();
  };
  return alternate(rho.shape(), cfg, update, objective);
}

double pmax_bipartite(const StateVector& state, std::span<const int> first) {
  const SchmidtDecomposition sd = schmidt(state, first);
  return sd.coeffs.front() * sd.coeffs.front();
}

}  // namespace qent
