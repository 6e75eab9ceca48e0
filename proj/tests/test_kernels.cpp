#include <complex>

#include "doctest.h"
#include "slicepi/kernels.hpp"

using namespace slicepi;

namespace {

Multivector on_I(std::complex<double> z, const Multivector& I) { return slice_element(z.real(), z.imag(), I); }

Multivector unit_vector(int m, std::initializer_list<double> c) {
  std::vector<double> v(c);
  double n = 0.0;
  for (double x : v) n += x * x;
  for (double& x : v) x /= std::sqrt(n);
  return Multivector::vector(m, v.data());
}

}  // namespace

TEST_CASE("kernels on a common slice reduce to complex expressions") {
  const Multivector I = unit_vector(3, {1.0, 2.0, -2.0});
  const std::complex<double> q(0.4, 1.3), x(-0.2, 0.7);
  CHECK(norm(slice_cauchy_kernel(on_I(q, I), on_I(x, I)) - on_I(1.0 / (x - q), I)) < 1e-14);
  CHECK(norm(pi_kernel(on_I(q, I), on_I(x, I)) - on_I(-1.0 / ((x - q) * (x - q)), I)) < 1e-14);
  CHECK(norm(pi_plus_kernel(on_I(q, I), on_I(x, I)) - conjugate(pi_kernel(on_I(q, I), on_I(x, I)))) < 1e-14);
}

TEST_CASE("singular sphere detection") {
  const Multivector I = unit_vector(2, {1.0, 0.0}), J = unit_vector(2, {0.0, 1.0});
  const Multivector q = slice_element(0.5, 1.2, I), x = slice_element(0.5, 1.2, J);
  CHECK(on_singular_sphere(q, x));
  CHECK(try_slice_cauchy_kernel(q, x).singular_flag);
  CHECK_THROWS_AS(slice_cauchy_kernel(q, x), SingularKernelError);
  CHECK_FALSE(try_slice_cauchy_kernel(q, slice_element(0.5, 1.3, J)).singular_flag);
}

TEST_CASE("alpha and beta are complementary idempotents on equal units") {
  const Multivector I = unit_vector(3, {0.0, 3.0, 4.0});
  const auto [a, b] = alpha_beta(I, I);
  CHECK(norm(a - Multivector::scalar(3, 1.0)) < 1e-15);
  CHECK(norm(b) < 1e-15);
  const auto [a2, b2] = alpha_beta(I, -I);
  CHECK(norm(a2) < 1e-15);
  CHECK(norm(b2 - Multivector::scalar(3, 1.0)) < 1e-15);
}
