#include <cmath>
#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "slicepi/integral_ops.hpp"

using namespace slicepi;

namespace {

DomainPtr small_domain() { return build_domain(PlanarRegion::rectangle(0.0, 1.0, 1.0, 2.0), 2, {8, 4, 4}); }

GridField ramp(const DomainPtr& d) {
  GridField f(d);
  for (std::size_t i = 0; i < f.raw().size(); ++i) f.raw()[i] = std::sin(0.37 * static_cast<double>(i));
  return f;
}

}  // namespace

TEST_CASE("dump and load round trip") {
  const DomainPtr d = small_domain();
  DiscreteOperator pi = assemble(OpKind::Pi, d);
  pi.materialize();
  const auto path = (std::filesystem::temp_directory_path() / "slicepi_pi_roundtrip.bin").string();
  pi.dump(path);
  const DiscreteOperator back = DiscreteOperator::load(path, d);
  std::remove(path.c_str());
  const GridField f = ramp(d);
  CHECK(lp_norm(pi.apply(f) - back.apply(f), 2.0) == 0.0);
}

TEST_CASE("norm of a diagonal operator") {
  const DomainPtr d = small_domain();
  const std::size_t n = d->num_nodes();
  std::vector<Multivector> e(n * n, Multivector(2));
  for (std::size_t i = 0; i < n; ++i)
    e[i * n + i] = Multivector::scalar(2, 1.0 + 0.5 * std::cos(static_cast<double>(i)));
  double top = 0.0;
  for (std::size_t i = 0; i < n; ++i) top = std::max(top, e[i * n + i][0]);
  const DiscreteOperator a = DiscreteOperator::from_dense(d, e);
  NormOptions lanczos, power;
  power.method = NormMethod::power;
  power.max_iter = 100000;
  CHECK(operator_norm(a, lanczos).value == doctest::Approx(top).epsilon(1e-7));
  CHECK(operator_norm(a, power).value == doctest::Approx(top).epsilon(1e-4));
}

TEST_CASE("Lanczos and power iteration agree on Pi") {
  const DomainPtr d = small_domain();
  const DiscreteOperator pi = assemble(OpKind::Pi, d);
  NormOptions power;
  power.method = NormMethod::power;
  power.max_iter = 200000;
  power.tol = 1e-10;
  CHECK(operator_norm(pi).value == doctest::Approx(operator_norm(pi, power).value).epsilon(1e-4));
}

TEST_CASE("adjoint satisfies <A f, g> = <f, A* g>") {
  const DomainPtr d = small_domain();
  const DiscreteOperator t = assemble(OpKind::T, d);
  REQUIRE(t.has_adjoint());
  const GridField f = ramp(d);
  GridField g = ramp(d);
  for (double& x : g.raw()) x = std::cos(3.0 * x);
  const double lhs = weighted_inner(t.apply(f), g).scalar_part();
  const double rhs = weighted_inner(f, t.apply_adjoint(g)).scalar_part();
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}
