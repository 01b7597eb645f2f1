#include "qent/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qent {

namespace {

constexpr double kZeroNorm = 1e-12;
constexpr double kSchmidtDrop = 1e-14;

void require_same_shape(const SystemShape& a, const SystemShape& b, const char* what) {
  if (a != b) throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": shapes differ");
}

// Validated, sorted copy of a site subset. Throws `code` on empty, improper,
// duplicate or out-of-range input.
std::vector<int> checked_subset(const SystemShape& shape, std::span<const int> sites, ErrorCode code) {
  std::vector<int> out(sites.begin(), sites.end());
  std::sort(out.begin(), out.end());
  if (out.empty()) throw Error(code, "site subset is empty");
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw Error(code, "duplicate site");
  if (out.front() < 0 || out.back() >= shape.sites()) throw Error(code, "site out of range");
  if (static_cast<int>(out.size()) == shape.sites()) throw Error(code, "subset must be proper");
  return out;
}

}  // namespace

// --- SystemShape -------------------------------------------------------------

SystemShape::SystemShape(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error(ErrorCode::BadShape, "a register needs at least one site");
  constexpr auto kMax = static_cast<BasisIndex>(std::numeric_limits<Eigen::Index>::max());
  size_ = 1;
  for (int d : dims_) {
    if (d < 2) throw Error(ErrorCode::BadShape, "site dimension " + std::to_string(d) + " < 2");
    if (size_ > kMax / static_cast<BasisIndex>(d))
      throw Error(ErrorCode::BadShape, "total dimension overflows the index type");
    size_ *= static_cast<BasisIndex>(d);
  }
}

SystemShape SystemShape::qubits(int n) {
  if (n < 1) throw Error(ErrorCode::BadShape, "a register needs at least one site");
  return SystemShape(std::vector<int>(static_cast<std::size_t>(n), 2));
}

bool SystemShape::all_qubits() const noexcept {
  return std::all_of(dims_.begin(), dims_.end(), [](int d) { return d == 2; });
}

BasisIndex SystemShape::stride_before(int site) const {
  BasisIndex s = 1;
  for (int j = 0; j < site; ++j) s *= static_cast<BasisIndex>(dims_[static_cast<std::size_t>(j)]);
  return s;
}

BasisIndex SystemShape::stride_after(int site) const {
  BasisIndex s = 1;
  for (int j = site + 1; j < sites(); ++j) s *= static_cast<BasisIndex>(dims_[static_cast<std::size_t>(j)]);
  return s;
}

std::vector<int> SystemShape::digits(BasisIndex x) const {
  std::vector<int> out(dims_.size());
  for (std::size_t j = dims_.size(); j-- > 0;) {
    const auto d = static_cast<BasisIndex>(dims_[j]);
    out[j] = static_cast<int>(x % d);
    x /= d;
  }
  return out;
}

BasisIndex SystemShape::index(std::span<const int> digits) const {
  if (digits.size() != dims_.size()) throw Error(ErrorCode::DimensionMismatch, "digit count");
  BasisIndex x = 0;
  for (std::size_t j = 0; j < dims_.size(); ++j) {
    if (digits[j] < 0 || digits[j] >= dims_[j]) throw Error(ErrorCode::OutOfRange, "digit out of range");
    x = x * static_cast<BasisIndex>(dims_[j]) + static_cast<BasisIndex>(digits[j]);
  }
  return x;
}

// --- construction ------------------------------------------------------------

StateVector StateVector::adopt(SystemShape shape, Vector amps) {
  if (static_cast<BasisIndex>(amps.size()) != shape.size())
    throw Error(ErrorCode::DimensionMismatch, "amplitude count does not match shape");
  return StateVector(std::move(shape), std::move(amps));
}

StateVector make_state(SystemShape shape, Vector amps) {
  if (static_cast<BasisIndex>(amps.size()) != shape.size())
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(shape.size()) +
                                                  " amplitudes, got " + std::to_string(amps.size()));
  const double norm = amps.norm();
  if (!std::isfinite(norm)) throw Error(ErrorCode::NotNormalized, "non-finite amplitudes");
  if (norm < kZeroNorm) throw Error(ErrorCode::ZeroVector, "state has zero norm");
  if (std::abs(norm - 1.0) > kConstructionTol)
    throw Error(ErrorCode::NotNormalized, "norm " + std::to_string(norm) + " deviates from 1");
  amps /= norm;
  return StateVector::adopt(std::move(shape), std::move(amps));
}

StateVector make_state(SystemShape shape, std::span<const Complex> amps) {
  Vector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = amps[i];
  return make_state(std::move(shape), std::move(v));
}

StateVector uniform_state(const SystemShape& shape) {
  const auto n = static_cast<Eigen::Index>(shape.size());
  return StateVector::adopt(shape, Vector::Constant(n, Complex(1.0 / std::sqrt(static_cast<double>(n)), 0.0)));
}

StateVector basis_state(const SystemShape& shape, BasisIndex index) {
  if (index >= shape.size()) throw Error(ErrorCode::OutOfRange, "basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(shape.size()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector::adopt(shape, std::move(v));
}

Vector canonical_phase(Vector v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs > 0.0) v *= std::conj(v(best)) / best_abs;
  if (v.size() > 0) v(best) = Complex(std::abs(v(best)), 0.0);
  return v;
}

ProductState make_product(SystemShape shape, std::vector<Vector> factors) {
  if (static_cast<int>(factors.size()) != shape.sites())
    throw Error(ErrorCode::DimensionMismatch, "one factor per site required");
  for (int j = 0; j < shape.sites(); ++j) {
    auto& f = factors[static_cast<std::size_t>(j)];
    if (f.size() != shape.dim(j)) throw Error(ErrorCode::DimensionMismatch, "factor length != site dimension");
    const double nrm = f.norm();
    if (!(nrm >= kZeroNorm)) throw Error(ErrorCode::ZeroVector, "zero product factor");
    f = canonical_phase(f / nrm);
  }
  return ProductState(std::move(shape), std::move(factors));
}

ProductState uniform_product(const SystemShape& shape) {
  std::vector<Vector> factors;
  for (int d : shape.dims()) factors.push_back(Vector::Constant(d, Complex(1.0 / std::sqrt(double(d)), 0.0)));
  return make_product(shape, std::move(factors));
}

LocalUnitaryLayer make_layer(SystemShape shape, std::vector<Matrix> gates) {
  if (static_cast<int>(gates.size()) != shape.sites())
    throw Error(ErrorCode::DimensionMismatch, "one gate per site required");
  for (int j = 0; j < shape.sites(); ++j) {
    const Matrix& u = gates[static_cast<std::size_t>(j)];
    const int d = shape.dim(j);
    if (u.rows() != d || u.cols() != d) throw Error(ErrorCode::DimensionMismatch, "gate size != site dimension");
    const double dev = (u.adjoint() * u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (!(dev <= kUnitaryTol))
      throw Error(ErrorCode::NotUnitary, "gate on site " + std::to_string(j) + " deviates by " + std::to_string(dev));
  }
  return LocalUnitaryLayer(std::move(shape), std::move(gates));
}

LocalUnitaryLayer identity_layer(const SystemShape& shape) {
  std::vector<Matrix> gates;
  for (int d : shape.dims()) gates.push_back(Matrix::Identity(d, d));
  return make_layer(shape, std::move(gates));
}

Matrix fourier_matrix(int d) {
  Matrix f(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      // Reduce jk mod d so the d = 2 case is exactly the Hadamard matrix.
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % d) / d;
      f(j, k) = std::polar(scale, angle);
    }
  if (d == 2) f << scale, scale, scale, -scale;
  return f;
}

LocalUnitaryLayer fourier_layer(const SystemShape& shape) {
  std::vector<Matrix> gates;
  for (int d : shape.dims()) gates.push_back(fourier_matrix(d));
  return make_layer(shape, std::move(gates));
}

DensityMatrix make_density(SystemShape shape, Matrix rho) {
  const auto n = static_cast<Eigen::Index>(shape.size());
  if (rho.rows() != n || rho.cols() != n) throw Error(ErrorCode::DimensionMismatch, "density must be N x N");
  if (!rho.allFinite()) throw Error(ErrorCode::InvalidDensity, "non-finite entries");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kDensityTol) throw Error(ErrorCode::InvalidDensity, "not Hermitian");
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > kDensityTol) throw Error(ErrorCode::InvalidDensity, "trace is not 1");
  const Matrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kDensityTol) throw Error(ErrorCode::InvalidDensity, "negative eigenvalue");
  return DensityMatrix(std::move(shape), h);
}

DensityMatrix density_from_state(const StateVector& state) {
  const Vector& a = state.amplitudes();
  return make_density(state.shape(), a * a.adjoint());
}

DensityMatrix maximally_mixed(const SystemShape& shape) {
  const auto n = static_cast<Eigen::Index>(shape.size());
  return make_density(shape, Matrix::Identity(n, n) / static_cast<double>(n));
}

DensityMatrix tensor_product(std::span<const DensityMatrix> locals) {
  if (locals.empty()) throw Error(ErrorCode::BadShape, "no local densities");
  std::vector<int> dims;
  Matrix acc = Matrix::Ones(1, 1);
  for (const auto& r : locals) {
    for (int d : r.shape().dims()) dims.push_back(d);
    const Matrix& b = r.entries();
    Matrix next(acc.rows() * b.rows(), acc.cols() * b.cols());
    for (Eigen::Index i = 0; i < acc.rows(); ++i)
      for (Eigen::Index j = 0; j < acc.cols(); ++j)
        next.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = acc(i, j) * b;
    acc = std::move(next);
  }
  return make_density(SystemShape(std::move(dims)), std::move(acc));
}

// --- operations --------------------------------------------------------------

StateVector apply_local(const LocalUnitaryLayer& layer, const StateVector& state) {
  require_same_shape(layer.shape(), state.shape(), "apply_local");
  const SystemShape& shape = state.shape();
  Vector amps = state.amplitudes();
  Vector scratch;
  for (int j = 0; j < shape.sites(); ++j) {
    const Matrix& u = layer.gate(j);
    const auto d = static_cast<Eigen::Index>(shape.dim(j));
    const auto right = static_cast<Eigen::Index>(shape.stride_after(j));
    const auto left = static_cast<Eigen::Index>(shape.stride_before(j));
    scratch.resize(d);
    for (Eigen::Index l = 0; l < left; ++l) {
      for (Eigen::Index r = 0; r < right; ++r) {
        const Eigen::Index base = l * d * right + r;
        for (Eigen::Index k = 0; k < d; ++k) scratch(k) = amps(base + k * right);
        for (Eigen::Index k = 0; k < d; ++k) {
          Complex acc = 0.0;
          for (Eigen::Index q = 0; q < d; ++q) acc += u(k, q) * scratch(q);
          amps(base + k * right) = acc;
        }
      }
    }
  }
  return StateVector::adopt(shape, std::move(amps));
}

Complex inner(const StateVector& a, const StateVector& b) {
  require_same_shape(a.shape(), b.shape(), "inner");
  return a.amplitudes().dot(b.amplitudes());
}

Vector kron_factors(std::span<const Vector> factors) {
  Vector acc = Vector::Ones(1);
  for (const Vector& f : factors) {
    Vector next(acc.size() * f.size());
    for (Eigen::Index i = 0; i < acc.size(); ++i) next.segment(i * f.size(), f.size()) = acc(i) * f;
    acc = std::move(next);
  }
  return acc;
}

StateVector product_to_state(const ProductState& p) {
  return StateVector::adopt(p.shape(), kron_factors(p.factors()));
}

Vector contract_except(const StateVector& state, std::span<const Vector> factors, int skip) {
  const SystemShape& shape = state.shape();
  if (static_cast<int>(factors.size()) != shape.sites())
    throw Error(ErrorCode::DimensionMismatch, "one factor per site required");
  if (skip < 0 || skip >= shape.sites()) throw Error(ErrorCode::BadSiteIndex, "site " + std::to_string(skip));

  // Conjugated product vectors over the sites left and right of `skip`.
  const Vector left = kron_factors(factors.subspan(0, static_cast<std::size_t>(skip))).conjugate();
  const Vector right = kron_factors(factors.subspan(static_cast<std::size_t>(skip) + 1)).conjugate();
  const auto d = static_cast<Eigen::Index>(shape.dim(skip));
  const Vector& amps = state.amplitudes();

  Vector v = Vector::Zero(d);
  for (Eigen::Index l = 0; l < left.size(); ++l) {
    for (Eigen::Index k = 0; k < d; ++k) {
      const Eigen::Index base = (l * d + k) * right.size();
      v(k) += left(l) * (right.array() * amps.segment(base, right.size()).array()).sum();
    }
  }
  return v;
}

Vector partial_contract(const StateVector& state, const ProductState& p, int skip) {
  require_same_shape(state.shape(), p.shape(), "partial_contract");
  return contract_except(state, p.factors(), skip);
}

Matrix bipartite_matrix(const StateVector& state, std::span<const int> first) {
  const SystemShape& shape = state.shape();
  const std::vector<int> a_sites = checked_subset(shape, first, ErrorCode::BadSplit);
  std::vector<bool> in_a(static_cast<std::size_t>(shape.sites()), false);
  for (int s : a_sites) in_a[static_cast<std::size_t>(s)] = true;

  BasisIndex rows = 1;
  for (int s : a_sites) rows *= static_cast<BasisIndex>(shape.dim(s));
  const BasisIndex cols = shape.size() / rows;

  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (BasisIndex x = 0; x < shape.size(); ++x) {
    const std::vector<int> dg = shape.digits(x);
    BasisIndex r = 0;
    BasisIndex c = 0;
    for (int j = 0; j < shape.sites(); ++j) {
      const auto d = static_cast<BasisIndex>(shape.dim(j));
      if (in_a[static_cast<std::size_t>(j)])
        r = r * d + static_cast<BasisIndex>(dg[static_cast<std::size_t>(j)]);
      else
        c = c * d + static_cast<BasisIndex>(dg[static_cast<std::size_t>(j)]);
    }
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = state[x];
  }
  return m;
}

SchmidtDecomposition schmidt(const StateVector& state, std::span<const int> first) {
  const Matrix m = bipartite_matrix(state, first);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();

  SchmidtDecomposition out;
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > kSchmidtDrop) ++rank;
  out.left.resize(m.rows(), rank);
  out.right.resize(m.cols(), rank);
  for (Eigen::Index i = 0; i < rank; ++i) {
    out.coeffs.push_back(s(i));
    // m = U S V^dag, so psi = sum_i s_i u_i (x) conj(v_i). The phase moved
    // onto u_i is taken back off the right vector.
    Vector u = svd.matrixU().col(i);
    const Vector canon = canonical_phase(u);
    Complex phase = 1.0;
    for (Eigen::Index k = 0; k < u.size(); ++k)
      if (std::abs(u(k)) > 0.0) {
        phase = canon(k) / u(k);
        break;
      }
    phase /= std::abs(phase);
    out.left.col(i) = canon;
    out.right.col(i) = svd.matrixV().col(i).conjugate() * std::conj(phase);
  }
  return out;
}

DensityMatrix reduced_density(const StateVector& state, std::span<const int> keep) {
  const SystemShape& shape = state.shape();
  const std::vector<int> sites = checked_subset(shape, keep, ErrorCode::BadSubset);
  const Matrix m = bipartite_matrix(state, sites);
  std::vector<int> dims;
  for (int s : sites) dims.push_back(shape.dim(s));
  return make_density(SystemShape(std::move(dims)), m * m.adjoint());
}

}  // namespace qent
