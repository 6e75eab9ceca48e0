#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <string>

#include "slicepi/beltrami.hpp"
#include "suites.hpp"

namespace slicepi::cli {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10e", x);
  return buf;
}

DomainPtr configured_domain(const RunConfig& cfg) {
  return build_domain(cfg.domain.region, cfg.domain.m, cfg.domain.res);
}

std::string iteration_csv(const BeltramiSolution& s) {
  std::string out = "k,step_norm,contraction_ratio\n";
  for (std::size_t i = 0; i < s.step_norms.size(); ++i) {
    out += std::to_string(i + 1) + "," + fmt(s.step_norms[i]) + ",";
    out += i == 0 ? std::string() : fmt(s.contraction_estimates[i - 1]);
    out += "\n";
  }
  return out;
}

std::string field_csv(const BeltramiSolution& s) {
  const AxialDomainQuadrature& d = s.h.domain();
  const Algebra& alg = Algebra::get(d.dim());
  std::string out = "u,v,k";
  for (const char* name : {"h", "omega"})
    for (std::size_t b = 0; b < d.blades(); ++b) out += std::string(",") + name + "_" + alg.blade_name(b);
  out += "\n";
  for (std::size_t n = 0; n < d.num_nodes(); ++n) {
    const PlanarCell& c = d.cells()[d.node_cell(n)];
    out += fmt(c.u) + "," + fmt(c.v) + "," + std::to_string(d.node_dir(n));
    for (const GridField* g : {&s.h, &s.omega})
      for (std::size_t b = 0; b < d.blades(); ++b) out += "," + fmt(g->data(n)[b]);
    out += "\n";
  }
  return out;
}

std::string condition_text(const BeltramiSolution& s, const RunConfig& cfg) {
  const ConditionReport& c = s.condition;
  std::string out;
  auto kv = [&out](const std::string& k, const std::string& v) { out += k + " = " + v + "\n"; };
  kv("m", std::to_string(cfg.domain.m));
  kv("planar_n", std::to_string(cfg.domain.res.planar_n));
  kv("sup_f", fmt(c.sup_f));
  kv("pi_norm", fmt(c.pi_norm));
  kv("product", fmt(c.product));
  kv("contractive", c.contractive ? "true" : "false");
  kv("theoretical_C", fmt(c.theoretical_C));
  kv("f_l2_mu", fmt(c.f_l2_mu));
  kv("printed_product", fmt(c.printed_product));
  kv("iterations", std::to_string(s.iterations));
  kv("converged", s.converged ? "true" : "false");
  kv("final_step_norm", s.step_norms.empty() ? fmt(0.0) : fmt(s.step_norms.back()));
  kv("residual", fmt(s.residual));
  return out;
}

}  // namespace

int solve_beltrami_cmd(const RunConfig& cfg, std::ostream& log) {
  const int m = cfg.domain.m;
  BeltramiProblem p;
  p.domain = configured_domain(cfg);
  p.tol = cfg.beltrami.tol;
  p.max_iter = cfg.beltrami.max_iter;

  std::vector<Multivector> phi;
  for (double a : cfg.beltrami.phi) phi.push_back(Multivector::scalar(m, a));
  p.phi = PolynomialSliceFunction(m, phi);

  if (cfg.beltrami.product) {
    p.pi_norm = operator_norm(assemble(OpKind::Pi, p.domain)).value;
    p.f = Multivector::scalar(m, *cfg.beltrami.product / p.pi_norm);
  } else if (cfg.beltrami.f.size() == 1) {
    p.f = Multivector::scalar(m, cfg.beltrami.f[0]);
  } else {
    p.f = Multivector::from_coeffs(m, cfg.beltrami.f.data());
  }

  const BeltramiSolution s = solve(p);
  const std::filesystem::path dir(cfg.outdir);
  write_text((dir / "beltrami_iterations.csv").string(), iteration_csv(s));
  write_text((dir / "beltrami_field.csv").string(), field_csv(s));
  write_text((dir / "beltrami_condition.txt").string(), condition_text(s, cfg));

  log << "iterations " << s.iterations << (s.converged ? " (converged)" : " (not converged)") << ", residual "
      << fmt(s.residual) << ", sup|f| ||Pi|| = " << fmt(s.condition.product) << "\n";
  if (!s.condition.contractive) log << "warning: sup|f| ||Pi|| >= 1, no contraction guarantee\n";
  return s.converged ? 0 : 3;
}

int dump_constants(const RunConfig& cfg, std::ostream& out) {
  const int m = cfg.domain.m;
  out << "C_prime = " << fmt(theoretical_C_prime()) << "\n";
  out << "omega_" << (m - 1) << " = " << fmt(sphere_area(m)) << "\n";
  for (double p : {2.0, 4.0}) {
    const double c = theoretical_C(p, m);
    out << "C(" << p << ") = " << fmt(c) << "   C^p = " << fmt(std::pow(c, p)) << "\n";
  }
  const double bound = theoretical_C(2.0, m);
  const double norm = operator_norm(assemble(OpKind::Pi, configured_domain(cfg))).value;
  const bool pass = norm <= bound;
  out << "measured ||Pi|| = " << fmt(norm) << " at " << cfg.domain.res.planar_n << "^2, bound C(2) = " << fmt(bound)
      << " -> " << (pass ? "pass" : "fail") << "\n";
  return pass ? 0 : 1;
}

}  // namespace slicepi::cli
