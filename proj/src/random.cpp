#include "qent/random.hpp"

#include <cmath>

#include <Eigen/QR>

namespace qent {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Vector gaussian_vector(Rng& rng, int length) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(length);
  for (int i = 0; i < length; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

Matrix gaussian_matrix(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

Matrix haar_unitary(Rng& rng, int d) {
  const Matrix z = gaussian_matrix(rng, d, d);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int i = 0; i < d; ++i) {
    const Complex diag = r(i, i);
    const double mag = std::abs(diag);
    q.col(i) *= mag > 0.0 ? diag / mag : Complex(1.0, 0.0);
  }
  return q;
}

StateVector random_state(const SystemShape& shape, std::uint64_t seed) {
  Rng rng(seed);
  Vector v = gaussian_vector(rng, static_cast<int>(shape.size()));
  v.normalize();
  return StateVector::adopt(shape, std::move(v));
}

ProductState random_product(const SystemShape& shape, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vector> factors;
  for (int d : shape.dims()) factors.push_back(gaussian_vector(rng, d));
  return make_product(shape, std::move(factors));
}

LocalUnitaryLayer random_local_layer(const SystemShape& shape, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Matrix> gates;
  for (int d : shape.dims()) gates.push_back(haar_unitary(rng, d));
  return make_layer(shape, std::move(gates));
}

DensityMatrix random_density(const SystemShape& shape, std::uint64_t seed) {
  Rng rng(seed);
  const int n = static_cast<int>(shape.size());
  const Matrix g = gaussian_matrix(rng, n, n);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return make_density(shape, std::move(rho));
}

}  // namespace qent
