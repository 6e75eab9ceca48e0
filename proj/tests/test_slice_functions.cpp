#include "doctest.h"
#include "slicepi/kernels.hpp"
#include "slicepi/slice_functions.hpp"

using namespace slicepi;

TEST_CASE("representation formula reconstructs a polynomial off the slice") {
  const int m = 3;
  const Multivector a(m, {0.5, 1, 0, 0, 0, 2, 0, 0}), b(m, {0, 0, -1, 0, 0, 0, 0, 3});
  const PolynomialSliceFunction f(m, {a, Multivector::scalar(m, 1.0), b});
  double I_c[] = {1.0, 0.0, 0.0}, J_c[] = {0.0, 0.6, 0.8};
  const Multivector I = Multivector::vector(m, I_c), J = Multivector::vector(m, J_c);
  const double u = 0.3, v = 1.1;
  const Multivector rec = representation_formula(f.on_slice(u, v, I), f.on_slice(u, -v, I), I, J);
  CHECK(norm(rec - f.on_slice(u, v, J)) < 1e-13);
}

TEST_CASE("star product of right-linear monomials") {
  const int m = 2;
  const Multivector a = Multivector::basis(m, 1), b = Multivector::basis(m, 2);
  const Multivector z = Multivector(m);
  const PolynomialSliceFunction f(m, {z, a}), g(m, {z, b});
  const PolynomialSliceFunction h = star_product(f, g);
  REQUIRE(h.degree() == 2);
  CHECK(norm(h.coeffs()[0]) == 0.0);
  CHECK(norm(h.coeffs()[1]) == 0.0);
  CHECK(h.coeffs()[2] == a * b);
}

TEST_CASE("bumps vanish exactly outside their support") {
  const BumpSliceFunction f({0.2, 0.6, 1.2, 1.8}, Multivector::scalar(2, 3.0));
  const Multivector I = Multivector::basis(2, 1);
  CHECK(f(SlicePoint(0.1, 1.5, I)) == Multivector(2));
  CHECK(f(SlicePoint(0.4, 1.9, I)) == Multivector(2));
  CHECK(f(SlicePoint(0.6, 1.5, I)) == Multivector(2));
  CHECK(norm(f(SlicePoint(0.4, 1.5, I))) > 0.0);
}

TEST_CASE("G of a slice monogenic polynomial vanishes, Gbar of q is 2") {
  const PolynomialSliceFunction q = PolynomialSliceFunction::identity(3);
  double c[] = {0.0, 0.6, 0.8};
  const SlicePoint x(0.2, 1.4, Multivector::vector(3, c));
  CHECK(norm(apply_G_analytic(q, x, false)) < 1e-15);
  CHECK(norm(apply_G_analytic(q, x, true) - Multivector::scalar(3, 2.0)) < 1e-15);
}

TEST_CASE("finite-difference G is exact on polynomials in conj(q) up to degree 3") {
  const DomainPtr d = build_domain(PlanarRegion::rectangle(0.0, 1.0, 1.0, 2.0), 2, {16, 8, 8});
  const Multivector c = Multivector(2, {0.3, -1.0, 0.5, 2.0});
  const PolynomialSliceFunction f(2, {c, c, c, c}, true);
  std::vector<char> valid;
  const GridField g = apply_G_fd(sample(d, f), false, valid);
  double worst = 0.0;
  for (std::size_t n = 0; n < d->num_nodes(); ++n)
    if (valid[d->node_cell(n)]) worst = std::max(worst, norm(g.at(n) - apply_G_analytic(f, d->node_point(n), false)));
  CHECK(worst < 1e-10);
}
