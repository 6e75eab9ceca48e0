#include "slicepi/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace slicepi {

namespace {

void require_paravector(const Multivector& x, const char* what) {
  if (!x.is_paravector(1e-12)) throw std::invalid_argument(std::string(what) + " must be a paravector");
}

double vec_norm(const Multivector& x) {
  Multivector v = x;
  v[0] = 0.0;
  return norm(v);
}

void check_pair(const Multivector& q, const Multivector& x) {
  if (q.dim() != x.dim()) throw DimensionError("kernel argument dimension mismatch");
  require_paravector(q, "q");
  require_paravector(x, "x");
  if (on_singular_sphere(q, x)) throw SingularKernelError("kernel evaluated on the singular sphere [q]");
}

// q^2 - 2 x0 q + |x|^2 for paravectors
Multivector cauchy_denominator(const Multivector& q, const Multivector& x) {
  Multivector a = q * q - q * (2.0 * x[0]);
  a[0] += norm2(x);
  return a;
}

}  // namespace

bool on_singular_sphere(const Multivector& q, const Multivector& x, double tol) {
  const double scale = std::max({1.0, norm(q), norm(x)});
  return std::abs(x[0] - q[0]) < tol * scale && std::abs(vec_norm(x) - vec_norm(q)) < tol * scale;
}

Multivector slice_cauchy_kernel(const Multivector& q, const Multivector& x) {
  check_pair(q, x);
  return -(paravector_inverse(cauchy_denominator(q, x)) * (q - conjugate(x)));
}

Multivector cauchy_kernel_K(const Multivector& q, const SlicePoint& x) {
  const int m = x.dim();
  return slice_cauchy_kernel(q, x.point()) * (2.0 / (sphere_area(m) * std::pow(x.v, m - 1)));
}

Multivector pi_kernel(const Multivector& q, const Multivector& x) {
  check_pair(q, x);
  const Multivector ainv = paravector_inverse(cauchy_denominator(q, x));
  const Multivector xb = conjugate(x);
  Multivector num = -(q * q) + (q * xb) * 2.0 - xb * (2.0 * x[0]);
  num[0] += norm2(x);
  return (ainv * ainv) * num;
}

Multivector pi_plus_kernel(const Multivector& q, const Multivector& x) {
  check_pair(q, x);
  const Multivector qb = conjugate(q);
  const Multivector a0inv = paravector_inverse(cauchy_denominator(qb, x));
  Multivector num = -(qb * qb) + (x * qb) * 2.0 - x * (2.0 * x[0]);
  num[0] += norm2(x);
  return num * (a0inv * a0inv);
}

Multivector g_conj_cauchy_kernel(const Multivector& q, const Multivector& x) {
  check_pair(q, x);
  const SlicePoint sq = SlicePoint::from_paravector(q);
  const SlicePoint sx = SlicePoint::from_paravector(x);
  const std::complex<double> zx(sx.u, sx.v), zq(sq.u, sq.v);
  const std::complex<double> d1 = std::conj(1.0 / ((zx - zq) * (zx - zq)));
  const std::complex<double> d2 = std::conj(1.0 / ((zx - std::conj(zq)) * (zx - std::conj(zq))));
  const auto [alpha, beta] = alpha_beta(sq.I, sx.I);
  const Multivector e1 = slice_element(d1.real(), d1.imag(), sx.I);
  const Multivector e2 = slice_element(d2.real(), d2.imag(), sx.I);
  return (alpha * e1 * conjugate(alpha) + beta * e2 * conjugate(beta)) * 2.0;
}

KernelValue try_slice_cauchy_kernel(const Multivector& q, const Multivector& x) {
  if (on_singular_sphere(q, x)) return {Multivector(q.dim()), true};
  return {slice_cauchy_kernel(q, x), false};
}

KernelValue try_pi_kernel(const Multivector& q, const Multivector& x) {
  if (on_singular_sphere(q, x)) return {Multivector(q.dim()), true};
  return {pi_kernel(q, x), false};
}

std::pair<Multivector, Multivector> alpha_beta(const Multivector& I_q, const Multivector& I) {
  require_unit_vector(I_q, "I_q");
  require_unit_vector(I, "I");
  const Multivector p = (I_q * I) * 0.5;
  Multivector alpha = -p, beta = p;
  alpha[0] += 0.5;
  beta[0] += 0.5;
  return {alpha, beta};
}

std::pair<Multivector, Multivector> alpha_beta(const SlicePoint& q, const Multivector& I) { return alpha_beta(q.I, I); }

Multivector slice_element(double a, double b, const Multivector& I) {
  Multivector r = I * b;
  r[0] += a;
  return r;
}

}  // namespace slicepi
