#pragma once

// Dense multi-qudit states and the tensor operations on them.
//
// Basis ordering is big-endian: for dims d_0..d_{n-1} the basis index is
// x = sum_j x_j * prod_{k>j} d_k, so site 0 is the most significant digit.
// Sites are numbered from 0 throughout the C++ API.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "qent/errors.hpp"

namespace qent {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using BasisIndex = std::size_t;

inline constexpr double kConstructionTol = 1e-8;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kDensityTol = 1e-10;

class SystemShape {
 public:
  /// Throws BadShape if empty, any d < 2, or the product overflows.
  explicit SystemShape(std::vector<int> dims);

  static SystemShape qubits(int n);

  std::span<const int> dims() const noexcept { return dims_; }
  int dim(int site) const { return dims_.at(static_cast<std::size_t>(site)); }
  int sites() const noexcept { return static_cast<int>(dims_.size()); }
  BasisIndex size() const noexcept { return size_; }
  bool all_qubits() const noexcept;

  /// Product of the dimensions of sites strictly before / after `site`.
  BasisIndex stride_before(int site) const;
  BasisIndex stride_after(int site) const;

  std::vector<int> digits(BasisIndex x) const;
  BasisIndex index(std::span<const int> digits) const;

  bool operator==(const SystemShape&) const = default;

 private:
  std::vector<int> dims_;
  BasisIndex size_ = 1;
};

/// Normalized amplitude vector. Immutable once built.
class StateVector {
 public:
  const SystemShape& shape() const noexcept { return shape_; }
  const Vector& amplitudes() const noexcept { return amps_; }
  Complex operator[](BasisIndex x) const { return amps_(static_cast<Eigen::Index>(x)); }
  BasisIndex size() const noexcept { return shape_.size(); }
  double norm() const { return amps_.norm(); }

  /// Wraps amplitudes produced by a norm-preserving operation. Only the
  /// length is checked; use make_state for external input.
  static StateVector adopt(SystemShape shape, Vector amps);

 private:
  StateVector(SystemShape shape, Vector amps) : shape_(std::move(shape)), amps_(std::move(amps)) {}

  SystemShape shape_;
  Vector amps_;
};

/// Per-site unit vectors; the j-th factor has length d_j. Each factor is
/// stored with canonical phase (first largest-modulus entry real, >= 0).
class ProductState {
 public:
  const SystemShape& shape() const noexcept { return shape_; }
  std::span<const Vector> factors() const noexcept { return factors_; }
  const Vector& factor(int site) const { return factors_.at(static_cast<std::size_t>(site)); }

 private:
  friend ProductState make_product(SystemShape shape, std::vector<Vector> factors);
  ProductState(SystemShape shape, std::vector<Vector> factors)
      : shape_(std::move(shape)), factors_(std::move(factors)) {}

  SystemShape shape_;
  std::vector<Vector> factors_;
};

class LocalUnitaryLayer {
 public:
  const SystemShape& shape() const noexcept { return shape_; }
  std::span<const Matrix> gates() const noexcept { return gates_; }
  const Matrix& gate(int site) const { return gates_.at(static_cast<std::size_t>(site)); }

 private:
  friend LocalUnitaryLayer make_layer(SystemShape shape, std::vector<Matrix> gates);
  LocalUnitaryLayer(SystemShape shape, std::vector<Matrix> gates)
      : shape_(std::move(shape)), gates_(std::move(gates)) {}

  SystemShape shape_;
  std::vector<Matrix> gates_;
};

class DensityMatrix {
 public:
  const SystemShape& shape() const noexcept { return shape_; }
  const Matrix& entries() const noexcept { return rho_; }

 private:
  friend DensityMatrix make_density(SystemShape shape, Matrix entries);
  DensityMatrix(SystemShape shape, Matrix rho) : shape_(std::move(shape)), rho_(std::move(rho)) {}

  SystemShape shape_;
  Matrix rho_;
};

/// psi = sum_i coeffs[i] * left.col(i) (x) right.col(i), coeffs non-increasing.
/// Numerically zero coefficients (<= 1e-14) are dropped.
struct SchmidtDecomposition {
  std::vector<double> coeffs;
  Matrix left;
  Matrix right;
};

// --- construction -----------------------------------------------------------

/// Renormalizes when |norm - 1| <= 1e-8; otherwise NotNormalized.
StateVector make_state(SystemShape shape, Vector amps);
StateVector make_state(SystemShape shape, std::span<const Complex> amps);

StateVector uniform_state(const SystemShape& shape);
StateVector basis_state(const SystemShape& shape, BasisIndex index);

/// Normalizes each factor and puts it in canonical phase.
ProductState make_product(SystemShape shape, std::vector<Vector> factors);
ProductState uniform_product(const SystemShape& shape);

/// Throws NotUnitary if any gate has ||U^dag U - I||_max > 1e-10.
LocalUnitaryLayer make_layer(SystemShape shape, std::vector<Matrix> gates);
LocalUnitaryLayer identity_layer(const SystemShape& shape);
/// V_j = discrete Fourier transform over Z_{d_j}; the Hadamard gate for d_j = 2.
LocalUnitaryLayer fourier_layer(const SystemShape& shape);
Matrix fourier_matrix(int d);

/// Throws InvalidDensity unless Hermitian, unit trace and PSD (all within 1e-10).
DensityMatrix make_density(SystemShape shape, Matrix entries);
DensityMatrix density_from_state(const StateVector& state);
DensityMatrix maximally_mixed(const SystemShape& shape);
/// Kronecker product of single-site densities, site 0 first.
DensityMatrix tensor_product(std::span<const DensityMatrix> locals);

/// Multiplies v by a unit phase so its first largest-modulus entry is real and >= 0.
Vector canonical_phase(Vector v);

// --- operations -------------------------------------------------------------

/// (U_0 (x) ... (x) U_{n-1}) |state>, applied site by site.
StateVector apply_local(const LocalUnitaryLayer& layer, const StateVector& state);

/// <a|b>, conjugate-linear in a.
Complex inner(const StateVector& a, const StateVector& b);

StateVector product_to_state(const ProductState& p);
Vector kron_factors(std::span<const Vector> factors);

/// v[k] = <e_0, .., k, .., e_{n-1} | state> with site `skip` left open.
Vector partial_contract(const StateVector& state, const ProductState& p, int skip);
/// Same contraction on raw factor vectors (no shape or norm checks on factors).
Vector contract_except(const StateVector& state, std::span<const Vector> factors, int skip);

/// Amplitude matrix with rows indexed by the sites in `first` (ascending,
/// big-endian) and columns by the remaining sites.
Matrix bipartite_matrix(const StateVector& state, std::span<const int> first);

SchmidtDecomposition schmidt(const StateVector& state, std::span<const int> first);

/// Partial trace onto `keep`; kept sites stay in ascending order.
DensityMatrix reduced_density(const StateVector& state, std::span<const int> keep);

}  // namespace qent
