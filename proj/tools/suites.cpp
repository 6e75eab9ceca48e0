#include "suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "checks.hpp"

namespace slicepi::cli {

namespace {

using namespace slicepi::checks;

class Builder {
public:
  Builder(SuiteReport& r, const RunConfig& cfg) : r_(r), cfg_(cfg) {}

  // config override for a check id, else the built-in value
  double tol(const std::string& id, double fallback) const {
    auto it = cfg_.tolerances.find(id);
    return it != cfg_.tolerances.end() ? it->second : fallback;
  }

  void add(const std::string& id, const std::string& anchor, int res, double err, double tol) {
    r_.rows.push_back({id, anchor, res, err, tol, err <= tol});
  }

  void add_checked(const std::string& id, const std::string& anchor, double err, double fallback) {
    add(id, anchor, 0, err, tol(id, fallback));
  }

  // fine/coarse error ratio; round-off level pairs report 0
  void ratio(const std::string& id, const std::string& anchor, int res, double coarse, double fine,
             double min_ratio) {
    const double e = (coarse <= 1e-10 && fine <= 1e-10) ? 0.0 : fine / coarse;
    add(id + ".ratio", "refinement of " + anchor, res, e, tol(id + ".ratio", 1.0 / min_ratio));
  }

private:
  SuiteReport& r_;
  const RunConfig& cfg_;
};

DomainPtr domain_at(const RunConfig& cfg, int n) {
  Resolution res = cfg.domain.res;
  res.planar_n = n;
  return build_domain(cfg.domain.region, cfg.domain.m, res);
}

std::string mtag(int m) { return ".m" + std::to_string(m); }

// Grid study: `measure` returns named errors per resolution; rows per resolution plus ratio rows.
struct Measured {
  std::string id;
  std::string anchor;
  double tol;
  double min_ratio;  // <= 0: no ratio row
};

void grid_study(Builder& b, const RunConfig& cfg, const std::string& suite, const std::vector<Measured>& measured,
                const std::vector<int>& resolutions,
                const std::function<std::vector<double>(const DomainPtr&)>& measure) {
  std::vector<std::vector<double>> errs;
  for (std::size_t r = 0; r < resolutions.size(); ++r) {
    const int n = resolutions[r];
    errs.push_back(measure(domain_at(cfg, n)));
    // the tolerance targets the finest grid; coarser grids get the second-order allowance 4^levels
    const double scale = std::pow(4.0, static_cast<double>(resolutions.size() - 1 - r));
    for (std::size_t i = 0; i < measured.size(); ++i) {
      const std::string id = suite + "." + measured[i].id;
      b.add(id, measured[i].anchor, n, errs.back()[i], b.tol(id, measured[i].tol) * scale);
    }
  }
  for (std::size_t r = 1; r < resolutions.size(); ++r)
    for (std::size_t i = 0; i < measured.size(); ++i)
      if (measured[i].min_ratio > 0.0)
        b.ratio(suite + "." + measured[i].id, measured[i].anchor, resolutions[r], errs[r - 1][i], errs[r][i],
                measured[i].min_ratio);
}

void suite_clifford(Builder& b, const RunConfig& cfg) {
  for (int m : cfg.algebra_dims) {
    const AlgebraErrors e = algebra_errors(m, cfg.cases, cfg.seed + m);
    b.add_checked("clifford.assoc" + mtag(m), "(ab)c = a(bc)", e.associativity, 1e-12);
    b.add_checked("clifford.conj_anti" + mtag(m), "conj(ab) = conj(b)conj(a)", e.anti_automorphism, 1e-12);
    b.add_checked("clifford.para_inverse" + mtag(m), "x inv(x) = inv(x) x = 1; x conj(x) = |x|^2", e.paravector_inverse,
          1e-12);
  }
}

void suite_slicefn(Builder& b, const RunConfig& cfg) {
  for (int m : cfg.algebra_dims) {
    b.add_checked("slicefn.representation" + mtag(m), "alpha f(u+Iv) + beta f(u-Iv) = f(u+Jv)",
                  representation_error(m, 100, cfg.seed + 10 + m), 1e-12);
    b.add_checked("slicefn.star" + mtag(m), "(f*g)(q) = f(q)g(q) for real-coefficient f",
                  star_product_error(m, 100, cfg.seed + 20 + m), 1e-12);
  }
  const TestFunctions fn = make_test_functions(cfg.domain.m, cfg.domain.region, cfg.seed);
  grid_study(b, cfg, "slicefn",
             {{"g_fd_poly", "finite-difference G f = analytic G f (polynomial in conj q)", 1e-2, 0.0},
              {"g_fd_bump", "finite-difference G f = analytic G f (bump)", 1.5e-1, 1.5}},
             cfg.resolutions, [&](const DomainPtr& d) {
               const BumpSliceFunction bump = make_bump(fn.bump_support, fn.bump_coeff, *d);
               std::vector<double> out;
               auto measure = [&](const GridField& f, const auto& exact) {
                 std::vector<char> valid;
                 const GridField g = apply_G_fd(f, false, valid);
                 RelErr e;
                 for (std::size_t n = 0; n < d->num_nodes(); ++n)
                   if (valid[d->node_cell(n)]) e.add(g.at(n), apply_G_analytic(exact, d->node_point(n), false));
                 out.push_back(e.value());
               };
               measure(sample(d, fn.anti), fn.anti);
               measure(sample(d, bump), bump);
               return out;
             });
}

void suite_kernels(Builder& b, const RunConfig& cfg) {
  for (int m : cfg.algebra_dims) {
    b.add_checked("kernels.conj_symmetry" + mtag(m), "conj(S^-1(q;x)) = S^-1(x;q)",
                  kernel_symmetry_error(m, 1000, cfg.seed + 30 + m), 1e-10);
    b.add_checked("kernels.gbar_cauchy" + mtag(m), "Gbar_q S^-1(q;x) = -2 k(q;x)",
                  pi_kernel_error(m, 100, cfg.seed + 40 + m), 1e-6);
    b.add_checked("kernels.kplus_conj" + mtag(m), "k+(q;x) = conj(k(q;x))",
                  pi_plus_conj_error(m, 100, cfg.seed + 50 + m),
          1e-10);
  }
}

std::vector<CheckPoint> points_for(const RunConfig& cfg, const DomainPtr& d) {
  return interior_points(*d, cfg.points, cfg.margin, cfg.seed + 1);
}

void suite_bpf(Builder& b, const RunConfig& cfg) {
  const TestFunctions fn = make_test_functions(cfg.domain.m, cfg.domain.region, cfg.seed);
  grid_study(b, cfg, "bpf",
             {{"bpf1_poly", "F f + T(G f) = f (polynomial)", 1e-2, 2.0},
              {"bpf1_bump", "F f + T(G f) = f (bump)", 1e-2, 2.0},
              {"bpf2_poly", "Fbar f + Tbar(Gbar f) = f (polynomial)", 1e-2, 2.0},
              {"bpf2_bump", "Fbar f + Tbar(Gbar f) = f (bump)", 1e-2, 2.0}},
             cfg.resolutions, [&](const DomainPtr& d) {
               const BpfErrors e = bpf_errors(d, fn, points_for(cfg, d));
               return std::vector<double>{e.bpf1_poly, e.bpf1_bump, e.bpf2_poly, e.bpf2_bump};
             });
}

void suite_inverse(Builder& b, const RunConfig& cfg) {
  const TestFunctions fn = make_test_functions(cfg.domain.m, cfg.domain.region, cfg.seed);
  grid_study(b, cfg, "inverse",
             {{"gt_poly", "G(T f) = f (polynomial)", 1e-2, 1.5}, {"gt_bump", "G(T f) = f (bump)", 1e-2, 1.5}},
             cfg.resolutions, [&](const DomainPtr& d) {
               const InverseErrors e = inverse_errors(d, fn, points_for(cfg, d));
               return std::vector<double>{e.gt_poly, e.gt_bump};
             });
}

void suite_pi_consistency(Builder& b, const RunConfig& cfg) {
  const TestFunctions fn = make_test_functions(cfg.domain.m, cfg.domain.region, cfg.seed);
  grid_study(b, cfg, "pi-consistency",
             {{"kernel_vs_fd", "kernel-path Pi f = FD Gbar(T f)", 1e-2, 1.5},
              {"sign", "kernel sign +2/(pi omega): error ratio against the flipped sign", 1e-2, 0.0}},
             cfg.resolutions, [&](const DomainPtr& d) {
               const InverseErrors e = inverse_errors(d, fn, points_for(cfg, d));
               return std::vector<double>{e.pi_path, e.pi_path / e.pi_path_flipped};
             });
  RunConfig disk = cfg;
  disk.domain.region = catalog_region("disk");
  grid_study(b, disk, "pi-consistency",
             {{"slice_T", "T_I 1 = conj(q-c)/2 + R^2/(2(q-cbar)) on the disk pair", 1e-3, 2.0},
              {"slice_Pi", "Pi_I 1 = -R^2/(q-cbar)^2 on the disk pair", 1e-2, 2.0}},
             cfg.slice_resolutions, [&](const DomainPtr& d) {
               const SliceOracleErrors e = slice_oracle_errors(d, cfg.points, cfg.seed + 2);
               return std::vector<double>{e.T, e.Pi};
             });
}

void suite_pi_identities(Builder& b, const RunConfig& cfg) {
  const TestFunctions fn = make_test_functions(cfg.domain.m, cfg.domain.region, cfg.seed);
  grid_study(b, cfg, "pi-identities",
             {{"g_pi", "G(Pi f) = Gbar f (polynomial)", 3e-2, 1.5},
              {"pi_g", "Pi(G f) = Gbar f (bump)", 2e-2, 1.5},
              {"gbar_piplus", "Gbar(Pi+ f) = G f (polynomial in conj q)", 3e-2, 1.5},
              {"ker_gbar", "G(Pi f) = 0 for Gbar f = 0", 3e-2, 1.5}},
             cfg.resolutions, [&](const DomainPtr& d) {
               const IdentityErrors e = identity_errors(d, fn, points_for(cfg, d));
               return std::vector<double>{e.g_pi, e.pi_g, e.gbar_piplus, e.ker_g};
             });
}

void suite_pi_inverse(Builder& b, const RunConfig& cfg) {
  const TestFunctions fn = make_test_functions(cfg.domain.m, cfg.domain.region, cfg.seed);
  grid_study(b, cfg, "pi-inverse",
             {{"piplus_pi", "Pi+(Pi f) = f (bump)", 2e-2, 1.5}, {"pi_piplus", "Pi(Pi+ f) = f (bump)", 2e-2, 1.5}},
             cfg.resolutions, [&](const DomainPtr& d) {
               const PiInverseErrors e = pi_inverse_errors(d, fn, points_for(cfg, d));
               return std::vector<double>{e.piplus_pi, e.pi_piplus};
             });
}

void suite_adjoint(Builder& b, const RunConfig& cfg) {
  const int m = cfg.domain.m;
  b.add_checked("adjoint.conj_symmetry" + mtag(m), "conj(S^-1(q;x)) = S^-1(x;q)",
                kernel_symmetry_error(m, 1000, cfg.seed + 30 + m), 1e-10);
  const TestFunctions fn = make_test_functions(m, cfg.domain.region, cfg.seed);
  grid_study(b, cfg, "adjoint",
             {{"t_self", "<T f, g> = <f, T g> in L2(dmu)", 1e-2, 0.0},
              {"g_star", "<G f, g> = <f, (-Gbar + (1-m) I/v) g> in L2(dmu)", 1e-2, 0.0}},
             cfg.resolutions, [&](const DomainPtr& d) {
               const AdjointErrors e = adjoint_errors(d, fn);
               return std::vector<double>{e.t_self, e.g_star};
             });
}

void suite_norm(Builder& b, const RunConfig& cfg) {
  for (const std::string& shape : cfg.norm_shapes)
    for (int m : cfg.norm_dims)
      for (int n : cfg.norm_resolutions) {
        Resolution res = cfg.domain.res;
        res.planar_n = n;
        if (m >= 3) res.sphere_n = cfg.norm_sphere_n;
        const DomainPtr d = build_domain(catalog_region(shape), m, res);
        const double v = operator_norm(assemble(OpKind::Pi, d)).value;
        const std::string id = "norm.pi." + shape + mtag(m);
        b.add(id, "||Pi||_L2(dmu) <= C(2;m)", n, v, b.tol(id, theoretical_C(2.0, m)));
      }
}

const std::vector<std::pair<std::string, void (*)(Builder&, const RunConfig&)>>& table() {
  static const std::vector<std::pair<std::string, void (*)(Builder&, const RunConfig&)>> t = {
      {"clifford", suite_clifford},
      {"slicefn", suite_slicefn},
      {"kernels", suite_kernels},
      {"bpf", suite_bpf},
      {"inverse", suite_inverse},
      {"pi-consistency", suite_pi_consistency},
      {"pi-identities", suite_pi_identities},
      {"pi-inverse", suite_pi_inverse},
      {"adjoint", suite_adjoint},
      {"norm", suite_norm},
  };
  return t;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : table()) n.push_back(name);
    return n;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
  for (const auto& [n, fn] : table())
    if (n == name) {
      SuiteReport r;
      r.name = name;
      Builder b(r, cfg);
      const auto t0 = std::chrono::steady_clock::now();
      fn(b, cfg);
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return r;
    }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::string format_csv(const SuiteReport& report) {
  std::string out = "check_id,anchor,resolution,error,tol,pass\n";
  char buf[96];
  for (const Row& r : report.rows) {
    out += r.check_id + ",\"" + r.anchor + "\"," + std::to_string(r.resolution) + ",";
    std::snprintf(buf, sizeof buf, "%.6e,%.3e,", r.error, r.tol);
    out += buf;
    out += r.pass ? "true\n" : "false\n";
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace slicepi::cli
