#include "slicepi/beltrami.hpp"

#include <cmath>

namespace slicepi {

GridField sample(const DomainPtr& domain, const BeltramiCoefficient& f) {
  return std::visit(
      [&domain](const auto& g) -> GridField {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, Multivector>)
          return constant_field(domain, g);
        else
          return sample(domain, g);
      },
      f);
}

ConditionReport check_contraction(const GridField& f, double pi_norm) {
  ConditionReport r;
  r.sup_f = sup_norm(f);
  r.pi_norm = pi_norm;
  r.product = r.sup_f * pi_norm;
  r.contractive = r.product < 1.0;
  r.theoretical_C = theoretical_C(2.0, f.domain().dim());
  r.f_l2_mu = lp_norm(f, 2.0, Measure::dmu);
  r.printed_product = r.f_l2_mu * pi_norm;
  return r;
}

ConditionReport check_contraction(const BeltramiCoefficient& f, const DomainPtr& domain, const NormOptions& opts) {
  const DiscreteOperator pi = assemble(OpKind::Pi, domain);
  return check_contraction(sample(domain, f), operator_norm(pi, opts).value);
}

double beltrami_residual(const GridField& omega, const GridField& f) {
  const AxialDomainQuadrature& d = omega.domain();
  std::vector<char> valid;
  const GridField gw = apply_G_fd(omega, false, valid);
  const GridField gbw = apply_G_fd(omega, true, valid);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < d.num_cells(); ++j) {
    if (!d.is_interior(j, 2)) continue;
    for (std::size_t k = 0; k < d.num_dirs(); ++k) {
      const std::size_t n = d.node(j, k);
      const Multivector rhs = f.at(n) * gbw.at(n);
      num += d.dmu(n) * norm2(gw.at(n) - rhs);
      den += d.dmu(n) * norm2(rhs);
    }
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

BeltramiSolution solve(const BeltramiProblem& p) {
  if (!p.domain) throw std::invalid_argument("Beltrami problem needs a domain");
  if (p.phi.antiholomorphic()) throw std::invalid_argument("seed phi must be a power series in q");
  const DomainPtr& dom = p.domain;
  const DiscreteOperator pi = assemble(OpKind::Pi, dom);
  const DiscreteOperator T = assemble(OpKind::T, dom);

  const GridField fs = sample(dom, p.f);
  const GridField gphi =
      sample(dom, PointFunction([&p](const SlicePoint& x) { return apply_G_analytic(p.phi, x, true); }));

  BeltramiSolution sol;
  const double pin = p.pi_norm >= 0.0 ? p.pi_norm : operator_norm(pi, p.norm_options).value;
  sol.condition = check_contraction(fs, pin);

  GridField h = p.h0 ? *p.h0 : GridField(dom);
  for (int k = 1; k <= p.max_iter; ++k) {
    GridField next = left_multiply(fs, gphi + pi.apply(h));
    const double step = lp_norm(next - h, 2.0, Measure::dmu);
    if (!sol.step_norms.empty() && sol.step_norms.back() > 0.0)
      sol.contraction_estimates.push_back(step / sol.step_norms.back());
    sol.step_norms.push_back(step);
    h = std::move(next);
    sol.iterations = k;
    if (step <= p.tol) {
      sol.converged = true;
      break;
    }
  }
  sol.omega = sample(dom, p.phi) + T.apply(h);
  sol.h = std::move(h);
  sol.residual = beltrami_residual(sol.omega, fs);
  return sol;
}

}  // namespace slicepi
