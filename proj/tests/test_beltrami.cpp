#include "doctest.h"
#include "slicepi/beltrami.hpp"

using namespace slicepi;

namespace {

DomainPtr small_domain() { return build_domain(PlanarRegion::rectangle(0.0, 1.0, 1.0, 2.0), 2, {16, 8, 8}); }

}  // namespace

TEST_CASE("zero coefficient converges at once") {
  BeltramiProblem p;
  p.domain = small_domain();
  p.phi = PolynomialSliceFunction::identity(2);
  p.f = Multivector(2);
  p.pi_norm = 1.0;
  const BeltramiSolution s = solve(p);
  CHECK(s.converged);
  CHECK(s.iterations == 1);
  CHECK(s.residual <= 1e-14);
  CHECK(lp_norm(s.h, 2.0) == 0.0);
  CHECK(lp_norm(s.omega - sample(p.domain, p.phi), 2.0) == 0.0);
}

TEST_CASE("contraction report arithmetic") {
  const DomainPtr d = small_domain();
  const double pi_norm = 1.25;
  const ConditionReport r = check_contraction(constant_field(d, Multivector::scalar(2, 0.9 / pi_norm)), pi_norm);
  CHECK(r.product == doctest::Approx(0.9));
  CHECK(r.contractive);
  const ConditionReport bad = check_contraction(constant_field(d, Multivector::scalar(2, 2.0 / pi_norm)), pi_norm);
  CHECK(bad.product == doctest::Approx(2.0));
  CHECK_FALSE(bad.contractive);
}

TEST_CASE("small constant coefficient: geometric steps and the construction identity") {
  BeltramiProblem p;
  p.domain = small_domain();
  p.phi = PolynomialSliceFunction::identity(2);
  p.pi_norm = operator_norm(assemble(OpKind::Pi, p.domain)).value;
  p.f = Multivector::scalar(2, 0.3 / p.pi_norm);
  const BeltramiSolution s = solve(p);
  REQUIRE(s.converged);
  // first iterate f Gbar(q) = 2 f
  const double unit = lp_norm(constant_field(p.domain, Multivector::scalar(2, 1.0)), 2.0);
  CHECK(s.step_norms.front() == doctest::Approx(2.0 * 0.3 / p.pi_norm * unit));
  for (double r : s.contraction_estimates) CHECK(r <= 0.3 + 0.05);
  const GridField th = assemble(OpKind::T, p.domain).apply(s.h);
  CHECK(lp_norm(s.omega - th - sample(p.domain, p.phi), 2.0) < 1e-12);
}

TEST_CASE("non-convergence is reported, not thrown") {
  BeltramiProblem p;
  p.domain = small_domain();
  p.phi = PolynomialSliceFunction::identity(2);
  p.pi_norm = 1.0;
  p.f = Multivector::scalar(2, 3.0);
  p.max_iter = 4;
  const BeltramiSolution s = solve(p);
  CHECK_FALSE(s.converged);
  CHECK(s.iterations == 4);
  CHECK_FALSE(s.condition.contractive);
}
