// Exhaustive Bloch-grid search for max |<e|psi>|^2 over qubit product states.
// Deliberately shares no code with the alternating optimizer.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "qent/product_opt.hpp"

namespace qent {

namespace {

constexpr double kPruneSlack = 1e-13;

// Conjugated grid factors (cos(t/2), e^{-i p} sin(t/2)). Poles appear once.
struct BlochGrid {
  int resolution;
  std::vector<double> half_cos;  // index i = 0..R
  std::vector<double> half_sin;
  std::vector<Complex> phase_conj;  // index k = 0..R-1, e^{-i phi_k}
  std::vector<std::array<Complex, 2>> points;

  explicit BlochGrid(int r) : resolution(r) {
    for (int i = 0; i <= r; ++i) {
      const double theta = std::numbers::pi * i / r;
      half_cos.push_back(i == r ? 0.0 : std::cos(theta / 2));
      half_sin.push_back(i == 0 ? 0.0 : std::sin(theta / 2));
    }
    for (int k = 0; k < r; ++k) phase_conj.push_back(std::polar(1.0, -2.0 * std::numbers::pi * k / r));
    points.push_back({Complex(1.0), Complex(0.0)});
    for (int i = 1; i < r; ++i)
      for (int k = 0; k < r; ++k) points.push_back({Complex(half_cos[i]), phase_conj[k] * half_sin[i]});
    points.push_back({Complex(0.0), Complex(1.0)});
  }

  double value(const Complex& v0, const Complex& v1, int i, int k) const {
    return std::norm(half_cos[i] * v0 + phase_conj[k] * half_sin[i] * v1);
  }

  // Grid maximum of |<e|v>|^2 over one qubit, from a handful of candidates:
  // for interior theta the best phi is a cyclic neighbour of arg(conj(v0) v1),
  // and for fixed phi the objective is C + rho cos(theta - alpha), whose grid
  // maximum is either a pole or a neighbour of alpha.
  double last_site_max(const Complex& v0, const Complex& v1) const {
    double best = std::max(std::norm(v0), std::norm(v1));
    const double dphi = 2.0 * std::numbers::pi / resolution;
    const double dtheta = std::numbers::pi / resolution;
    double arg = std::arg(std::conj(v0) * v1);
    if (arg < 0) arg += 2.0 * std::numbers::pi;
    const int k0 = static_cast<int>(std::floor(arg / dphi)) % resolution;
    for (int k : {k0, (k0 + 1) % resolution}) {
      const Complex b = phase_conj[k] * v1;
      const double alpha = std::atan2((std::conj(v0) * b).real(), 0.5 * (std::norm(v0) - std::norm(b)));
      if (alpha < 0.0) continue;
      const int i0 = static_cast<int>(std::floor(alpha / dtheta));
      for (int i : {i0, i0 + 1})
        if (i >= 1 && i < resolution) best = std::max(best, value(v0, v1, i, k));
    }
    return best;
  }
};

void check_grid_input(const StateVector& state) {
  const SystemShape& shape = state.shape();
  if (!shape.all_qubits()) throw Error(ErrorCode::WrongShape, "grid oracle needs qubit sites");
  if (shape.sites() > 3) throw Error(ErrorCode::TooLarge, "grid oracle supports at most 3 qubits");
}

// Largest squared singular value of a 2x2 matrix.
double top_singular_sq(const std::array<Complex, 4>& a) {
  const double fro = std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]) + std::norm(a[3]);
  const double det = std::norm(a[0] * a[3] - a[1] * a[2]);
  return 0.5 * (fro + std::sqrt(std::max(0.0, fro * fro - 4.0 * det)));
}

}  // namespace

double pmax_grid_oracle(const StateVector& state, int resolution) {
  check_grid_input(state);
  if (resolution < 32) throw Error(ErrorCode::OutOfRange, "grid resolution must be >= 32");
  const BlochGrid grid(resolution);
  const auto& psi = state.amplitudes();

  switch (state.shape().sites()) {
    case 1:
      return grid.last_site_max(psi(0), psi(1));
    case 2: {
      double best = 0.0;
      for (const auto& e : grid.points) {
        const Complex v0 = e[0] * psi(0) + e[1] * psi(2);
        const Complex v1 = e[0] * psi(1) + e[1] * psi(3);
        if (std::norm(v0) + std::norm(v1) + kPruneSlack <= best) continue;
        best = std::max(best, grid.last_site_max(v0, v1));
      }
      return best;
    }
    default: {
      double best = 0.0;
      for (const auto& e : grid.points) {
        // a[2b + c] = sum_x conj(e)[x] psi[x b c]
        std::array<Complex, 4> a;
        for (int bc = 0; bc < 4; ++bc) a[bc] = e[0] * psi(bc) + e[1] * psi(4 + bc);
        if (top_singular_sq(a) + kPruneSlack <= best) continue;
        for (const auto& f : grid.points) {
          const Complex v0 = f[0] * a[0] + f[1] * a[2];
          const Complex v1 = f[0] * a[1] + f[1] * a[3];
          if (std::norm(v0) + std::norm(v1) + kPruneSlack <= best) continue;
          best = std::max(best, grid.last_site_max(v0, v1));
        }
      }
      return best;
    }
  }
}

double pmax_grid_bruteforce(const StateVector& state, int resolution) {
  check_grid_input(state);
  if (resolution < 1) throw Error(ErrorCode::OutOfRange, "grid resolution must be >= 1");
  const BlochGrid grid(resolution);
  const int n = state.shape().sites();
  const auto& psi = state.amplitudes();
  double best = 0.0;

  // Contract one site at a time; every combination of grid points is visited.
  // partial[j] holds psi contracted with the points chosen for sites < j.
  std::vector<Vector> partial(static_cast<std::size_t>(n) + 1);
  partial[0] = psi;
  auto recurse = [&](auto&& self, int site) -> void {
    const Vector& in = partial[static_cast<std::size_t>(site)];
    if (site == n - 1) {
      for (const auto& e : grid.points) best = std::max(best, std::norm(e[0] * in(0) + e[1] * in(1)));
      return;
    }
    const Eigen::Index half = in.size() / 2;
    for (const auto& e : grid.points) {
      partial[static_cast<std::size_t>(site) + 1] = e[0] * in.head(half) + e[1] * in.tail(half);
      self(self, site + 1);
    }
  };
  recurse(recurse, 0);
  return best;
}

}  // namespace qent
