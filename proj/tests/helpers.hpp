#pragma once

#include <cmath>
#include <complex>

#include "doctest.h"

#include "qent/statevector.hpp"

namespace qent::testing {

inline double max_abs_diff(const Vector& a, const Vector& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline void check_close(const Vector& a, const Vector& b, double tol) {
  REQUIRE(a.size() == b.size());
  CHECK(max_abs_diff(a, b) <= tol);
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Matrix hadamard() {
  Matrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

}  // namespace qent::testing
