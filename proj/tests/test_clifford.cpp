#include "doctest.h"
#include "slicepi/clifford.hpp"

using namespace slicepi;

TEST_CASE("blade ordering is by grade then lexicographic") {
  const Algebra& a = Algebra::get(3);
  CHECK(a.blade_name(0) == "1");
  CHECK(a.blade_name(3) == "e3");
  CHECK(a.blade_name(4) == "e12");
  CHECK(a.blade_name(6) == "e23");
  CHECK(a.blade_name(7) == "e123");
  CHECK(a.parse_blade("e13") == 5);
  CHECK_THROWS(a.parse_blade("e14"));
  CHECK_THROWS(a.parse_blade("x1"));
}

TEST_CASE("Cl_2 is the quaternions") {
  const Multivector e1 = Multivector::basis(2, 1), e2 = Multivector::basis(2, 2);
  const Multivector e12 = e1 * e2;
  CHECK(e1 * e1 == Multivector::scalar(2, -1.0));
  CHECK(e12 * e12 == Multivector::scalar(2, -1.0));
  CHECK(e2 * e1 == -e12);
  CHECK(e12 == Multivector::blade(2, 0b11));
  // i j k = -1 with i = e1, j = e2, k = e12
  CHECK(e1 * e2 * e12 == Multivector::scalar(2, -1.0));
}

TEST_CASE("Clifford conjugation signs by grade") {
  const Multivector x(3, {1, 2, 3, 4, 5, 6, 7, 8});
  const Multivector c = conjugate(x);
  // grades 0..3 pick up +, -, -, +
  CHECK(c == Multivector(3, {1, -2, -3, -4, -5, -6, -7, 8}));
}

TEST_CASE("paravector inverse") {
  const Paravector x(1.0, {2.0, -1.0, 0.5});
  const Multivector xi = paravector_inverse(Multivector(x));
  const Multivector one = Multivector(x) * xi;
  CHECK(one[0] == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t i = 1; i < one.size(); ++i) CHECK(std::abs(one[i]) < 1e-15);
  // x conj(x) = |x|^2 = 1 + 4 + 1 + 0.25
  const Multivector n = Multivector(x) * conjugate(Multivector(x));
  CHECK(n[0] == doctest::Approx(6.25));
  CHECK(norm(n - Multivector::scalar(3, 6.25)) < 1e-14);
}
