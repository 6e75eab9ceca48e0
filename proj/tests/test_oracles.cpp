// Reference values come from tests/oracles/compute_oracles.py (mpmath, 30 digits).
#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "slicepi/integral_ops.hpp"
#include "slicepi/kernels.hpp"

using namespace slicepi;

TEST_CASE("C' regression constant") {
  CHECK(theoretical_C_prime() == doctest::Approx(13.223566248261104).epsilon(1e-12));
  // C(p)^p does not depend on p
  for (int m : {2, 3})
    CHECK(std::pow(theoretical_C(4.0, m), 4.0) == doctest::Approx(std::pow(theoretical_C(2.0, m), 2.0)));
  CHECK(theoretical_C(2.0, 2) == doctest::Approx(1.0801268389).epsilon(1e-9));
  CHECK(sphere_area(2) == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(sphere_area(3) == doctest::Approx(4.0 * std::numbers::pi));
}

namespace {

struct DiskRef {
  double u, v;
  std::complex<double> T, Pi;
};

// disk centre (0, 2), radius 1
const DiskRef kDisk[] = {
    {0.3, 2.2, {0.15846023688663282, -0.21844331641285964}, {0.055828974378795292, 0.0080164681159295798}},
    {-0.5, 1.6, {-0.26892505677517032, 0.063739591218773615}, {0.072834964909133937, -0.020629887779141004}},
    {0.1, 2.7, {0.05226244343891403, -0.45633484162895936}, {0.045207919575766259, 0.0019246125181712085}},
};

}  // namespace

TEST_CASE("closed forms on the disk pair agree with brute-force quadrature") {
  const std::complex<double> c(0.0, 2.0);
  for (const DiskRef& r : kDisk) {
    const std::complex<double> z(r.u, r.v);
    const std::complex<double> T = 0.5 * std::conj(z - c) + 0.5 / (z - std::conj(c));
    const std::complex<double> Pi = -1.0 / ((z - std::conj(c)) * (z - std::conj(c)));
    CHECK(std::abs(T - r.T) < 1e-14);
    CHECK(std::abs(Pi - r.Pi) < 1e-14);
  }
}

TEST_CASE("slice operators of 1 on the disk pair") {
  const DomainPtr d = build_domain(PlanarRegion::disk(0.0, 2.0, 1.0), 2, {128, 16, 16});
  const Multivector I = Multivector::basis(2, 1);
  const PointFunction one = [](const SlicePoint&) { return Multivector::scalar(2, 1.0); };
  for (const DiskRef& r : kDisk) {
    const Multivector t = teodorescu_slice(one, *d, I, r.u, r.v).value;
    const Multivector p = pi_slice(one, *d, I, r.u, r.v).value;
    const Multivector t_ref = slice_element(r.T.real(), r.T.imag(), I);
    const Multivector p_ref = slice_element(r.Pi.real(), r.Pi.imag(), I);
    CHECK(norm(t - t_ref) / norm(t_ref) < 1e-3);
    CHECK(norm(p - p_ref) / norm(p_ref) < 1e-2);
  }
}
