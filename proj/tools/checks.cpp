#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace slicepi::checks {

void RelErr::add(const Multivector& value, const Multivector& ref) {
  num_ = std::max(num_, norm(value - ref));
  den_ = std::max(den_, norm(ref));
}

double RelErr::value() const { return den_ > 0.0 ? num_ / den_ : num_; }

bool refines(double coarse, double fine, double min_ratio, double floor) {
  if (coarse <= floor && fine <= floor) return true;
  return fine * min_ratio <= coarse;
}

std::vector<CheckPoint> interior_points(const AxialDomainQuadrature& d, int count, double margin,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double u0, u1, v0, v1;
  d.region().bounds(u0, u1, v0, v1);
  std::uniform_real_distribution<double> ud(u0, u1), vd(v0, v1);
  std::uniform_int_distribution<std::size_t> kd(0, d.num_dirs() - 1);
  std::vector<CheckPoint> pts;
  while (static_cast<int>(pts.size()) < count) {
    const double u = ud(rng), v = vd(rng);
    const std::size_t k = kd(rng);
    if (d.region().boundary_distance(u, v) >= margin) pts.push_back({u, v, k});
  }
  return pts;
}

Multivector random_multivector(int m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  Multivector x(m);
  for (std::size_t b = 0; b < x.size(); ++b) x[b] = c(rng);
  return x;
}

Multivector random_paravector(int m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  Multivector x(m);
  x[0] = c(rng);
  for (int i = 1; i <= m; ++i) x += Multivector::basis(m, i) * c(rng);
  return x;
}

Multivector random_unit_vector(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  for (;;) {
    Multivector x(m);
    for (int i = 1; i <= m; ++i) x += Multivector::basis(m, i) * g(rng);
    const double r = norm(x);
    if (r > 1e-3) return x / r;
  }
}

TestFunctions make_test_functions(int m, const PlanarRegion& region, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Multivector> co;
  for (int i = 0; i < 4; ++i) co.push_back(random_multivector(m, rng));
  TestFunctions fn;
  fn.poly = PolynomialSliceFunction(m, co);
  fn.anti = PolynomialSliceFunction(m, co, true);
  fn.bump_coeff = random_multivector(m, rng);
  fn.bump_coeff2 = random_multivector(m, rng);

  // box inside D+: the region itself for rectangles, the inscribed square for disks
  double bu0, bu1, bv0, bv1;
  if (region.shape() == PlanarRegion::Shape::rectangle) {
    region.bounds(bu0, bu1, bv0, bv1);
  } else {
    const double h = region.radius() / std::sqrt(2.0);
    bu0 = region.uc() - h, bu1 = region.uc() + h, bv0 = region.vc() - h, bv1 = region.vc() + h;
  }
  auto frac = [&](double a0, double a1, double b0, double b1) {
    return SupportRect{bu0 + a0 * (bu1 - bu0), bu0 + a1 * (bu1 - bu0), bv0 + b0 * (bv1 - bv0),
                       bv0 + b1 * (bv1 - bv0)};
  };
  fn.bump_support = frac(0.2, 0.8, 0.2, 0.8);
  fn.bump_support2 = frac(0.1, 0.6, 0.3, 0.9);
  return fn;
}

AlgebraErrors algebra_errors(int m, int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  AlgebraErrors e;
  const Multivector one = Multivector::scalar(m, 1.0);
  for (int i = 0; i < cases; ++i) {
    const Multivector a = random_multivector(m, rng), b = random_multivector(m, rng), c = random_multivector(m, rng);
    e.associativity = std::max(e.associativity, norm((a * b) * c - a * (b * c)));
    e.anti_automorphism = std::max(e.anti_automorphism, norm(conjugate(a * b) - conjugate(b) * conjugate(a)));
    Multivector x = random_paravector(m, rng);
    if (norm(x) < 1e-3) x[0] += 1.0;
    const Multivector xi = paravector_inverse(x);
    Multivector sq = x * conjugate(x);
    sq[0] -= norm2(x);
    e.paravector_inverse =
        std::max({e.paravector_inverse, norm(x * xi - one), norm(xi * x - one), norm(sq)});
  }
  return e;
}

double representation_error(int m, int pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Multivector> co;
  for (int i = 0; i < 4; ++i) co.push_back(random_multivector(m, rng));
  const PolynomialSliceFunction f(m, co);
  std::uniform_real_distribution<double> ud(-1.0, 1.0), vd(0.1, 1.0);
  RelErr err;
  for (int i = 0; i < pairs; ++i) {
    const Multivector I = random_unit_vector(m, rng), Ix = random_unit_vector(m, rng);
    const double u = ud(rng), v = vd(rng);
    err.add(representation_formula(f.on_slice(u, v, I), f.on_slice(u, -v, I), I, Ix), f.on_slice(u, v, Ix));
  }
  return err.value();
}

double star_product_error(int m, int points, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::vector<Multivector> fc, gc;
  for (int i = 0; i < 3; ++i) fc.push_back(Multivector::scalar(m, c(rng)));
  for (int i = 0; i < 3; ++i) gc.push_back(random_multivector(m, rng));
  const PolynomialSliceFunction f(m, fc), g(m, gc);
  const PolynomialSliceFunction fg = star_product(f, g);
  RelErr err;
  for (int i = 0; i < points; ++i) {
    const SlicePoint x(c(rng), 0.1 + std::abs(c(rng)), random_unit_vector(m, rng));
    err.add(fg(x), f(x) * g(x));
  }
  return err.value();
}

double kernel_symmetry_error(int m, int pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < pairs;) {
    const Multivector q = random_paravector(m, rng), x = random_paravector(m, rng);
    if (on_singular_sphere(q, x, 1e-3)) continue;
    const Multivector ref = slice_cauchy_kernel(x, q);
    worst = std::max(worst, norm(conjugate(slice_cauchy_kernel(q, x)) - ref) / norm(ref));
    ++i;
  }
  return worst;
}

double pi_kernel_error(int m, int pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ud(-1.0, 1.0), vd(0.3, 1.5);
  const double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < pairs;) {
    const SlicePoint q(ud(rng), vd(rng), random_unit_vector(m, rng));
    const Multivector x = random_paravector(m, rng);
    if (on_singular_sphere(q.point(), x, 0.2)) continue;
    auto S = [&](double u, double v) { return slice_cauchy_kernel(slice_element(u, v, q.I), x); };
    const Multivector du = (S(q.u + h, q.v) - S(q.u - h, q.v)) / (2.0 * h);
    const Multivector dv = (S(q.u, q.v + h) - S(q.u, q.v - h)) / (2.0 * h);
    const Multivector ref = pi_kernel(q.point(), x) * -2.0;
    worst = std::max(worst, norm(du - q.I * dv - ref) / norm(ref));
    ++i;
  }
  return worst;
}

double pi_plus_conj_error(int m, int pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < pairs;) {
    const Multivector q = random_paravector(m, rng), x = random_paravector(m, rng);
    if (on_singular_sphere(q, x, 1e-3) || norm(q - q[0] * Multivector::scalar(m, 1.0)) < 1e-3) continue;
    const Multivector k = pi_kernel(q, x);
    worst = std::max(worst, norm(pi_plus_kernel(q, x) - conjugate(k)) / norm(k));
    ++i;
  }
  return worst;
}

SliceOracleErrors slice_oracle_errors(const DomainPtr& dom, int points, std::uint64_t seed) {
  const AxialDomainQuadrature& d = *dom;
  if (d.region().shape() != PlanarRegion::Shape::disk) throw std::invalid_argument("slice oracles need a disk");
  const int m = d.dim();
  const double R = d.region().radius(), uc = d.region().uc(), vc = d.region().vc();
  const Multivector I = Multivector::basis(m, 1);
  const Multivector c = slice_element(uc, vc, I), cb = slice_element(uc, -vc, I);
  const PointFunction one = [m](const SlicePoint&) { return Multivector::scalar(m, 1.0); };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::acos(-1.0)), rad(0.0, 0.8 * R);
  RelErr eT, eP;
  for (int i = 0; i < points; ++i) {
    const double th = ang(rng), r = rad(rng);
    const double qu = uc + r * std::cos(th), qv = vc + r * std::sin(th);
    const Multivector q = slice_element(qu, qv, I);
    const Multivector inv = paravector_inverse(q - cb);
    eT.add(teodorescu_slice(one, d, I, qu, qv).value, conjugate(q - c) * 0.5 + inv * (0.5 * R * R));
    eP.add(pi_slice(one, d, I, qu, qv).value, (inv * inv) * (-R * R));
  }
  return {eT.value(), eP.value()};
}

namespace {

GridField sample_G(const DomainPtr& d, const PolynomialSliceFunction& f, bool conjugated) {
  return sample(d, PointFunction([&](const SlicePoint& x) { return apply_G_analytic(f, x, conjugated); }));
}

GridField sample_G(const DomainPtr& d, const BumpSliceFunction& f, bool conjugated) {
  return sample(d, PointFunction([&](const SlicePoint& x) { return apply_G_analytic(f, x, conjugated); }));
}

SlicePoint at(const AxialDomainQuadrature& d, const CheckPoint& c) { return SlicePoint(c.u, c.v, d.dir(c.k)); }

Multivector interp(const GridField& f, const CheckPoint& c, const std::vector<char>* valid = nullptr) {
  return interpolate(f, c.u, c.v, c.k, valid);
}

}  // namespace

BpfErrors bpf_errors(const DomainPtr& d, const TestFunctions& fn, const std::vector<CheckPoint>& pts) {
  const BumpSliceFunction bump = make_bump(fn.bump_support, fn.bump_coeff, *d);
  const PointFunction pf = [&](const SlicePoint& x) { return fn.poly(x); };
  const PointFunction bf = [&](const SlicePoint& x) { return bump(x); };
  const DiscreteOperator T = assemble(OpKind::T, d), Tb = assemble(OpKind::Tbar, d);
  const GridField tg_poly = T.apply(sample_G(d, fn.poly, false));
  const GridField tg_bump = T.apply(sample_G(d, bump, false));
  const GridField tbg_poly = Tb.apply(sample_G(d, fn.poly, true));
  const GridField tbg_bump = Tb.apply(sample_G(d, bump, true));
  RelErr e1p, e1b, e2p, e2b;
  for (const CheckPoint& c : pts) {
    const SlicePoint q = at(*d, c);
    e1p.add(cauchy_boundary(pf, *d, q, false).value + interp(tg_poly, c), fn.poly(q));
    e1b.add(cauchy_boundary(bf, *d, q, false).value + interp(tg_bump, c), bump(q));
    e2p.add(cauchy_boundary(pf, *d, q, true).value + interp(tbg_poly, c), fn.poly(q));
    e2b.add(cauchy_boundary(bf, *d, q, true).value + interp(tbg_bump, c), bump(q));
  }
  return {e1p.value(), e1b.value(), e2p.value(), e2b.value()};
}

InverseErrors inverse_errors(const DomainPtr& d, const TestFunctions& fn, const std::vector<CheckPoint>& pts) {
  const BumpSliceFunction bump = make_bump(fn.bump_support, fn.bump_coeff, *d);
  const DiscreteOperator T = assemble(OpKind::T, d), Pi = assemble(OpKind::Pi, d);
  const GridField fp = sample(d, fn.poly), fb = sample(d, bump);
  const GridField tp = T.apply(fp), tb = T.apply(fb);
  std::vector<char> v1, v2, v3;
  const GridField gtp = apply_G_fd(tp, false, v1), gtb = apply_G_fd(tb, false, v2);
  const GridField gbtp = apply_G_fd(tp, true, v3);
  const GridField pip = Pi.apply(fp);
  RelErr ep, eb, ec, ef;
  for (const CheckPoint& c : pts) {
    const SlicePoint q = at(*d, c);
    ep.add(interp(gtp, c, &v1), fn.poly(q));
    eb.add(interp(gtb, c, &v2), bump(q));
    const Multivector fd = interp(gbtp, c, &v3), kp = interp(pip, c);
    ec.add(kp, fd);
    ef.add(-kp, fd);
  }
  return {ep.value(), eb.value(), ec.value(), ef.value()};
}

IdentityErrors identity_errors(const DomainPtr& d, const TestFunctions& fn, const std::vector<CheckPoint>& pts,
                               PiPlusForm form) {
  const BumpSliceFunction bump = make_bump(fn.bump_support, fn.bump_coeff, *d);
  OpOptions po;
  po.pi_plus_form = form;
  const DiscreteOperator Pi = assemble(OpKind::Pi, d), Pp = assemble(OpKind::PiPlus, d, po);
  std::vector<char> v1, v2, v3;
  const GridField gpi = apply_G_fd(Pi.apply(sample(d, fn.poly)), false, v1);
  const GridField pig = Pi.apply(sample_G(d, bump, false));
  const GridField gbpp = apply_G_fd(Pp.apply(sample(d, fn.anti)), true, v2);
  const GridField pia = Pi.apply(sample(d, fn.anti));
  const GridField gpia = apply_G_fd(pia, false, v3);
  RelErr a, b, c2;
  double ker = 0.0, ref = 0.0;
  for (const CheckPoint& c : pts) {
    const SlicePoint q = at(*d, c);
    a.add(interp(gpi, c, &v1), apply_G_analytic(fn.poly, q, true));
    b.add(interp(pig, c), apply_G_analytic(bump, q, true));
    c2.add(interp(gbpp, c, &v2), apply_G_analytic(fn.anti, q, false));
    ker = std::max(ker, norm(interp(gpia, c, &v3)));
    ref = std::max(ref, norm(interp(pia, c)));
  }
  return {a.value(), b.value(), c2.value(), ref > 0.0 ? ker / ref : ker};
}

PiInverseErrors pi_inverse_errors(const DomainPtr& d, const TestFunctions& fn, const std::vector<CheckPoint>& pts,
                                  PiPlusForm form) {
  const BumpSliceFunction bump = make_bump(fn.bump_support, fn.bump_coeff, *d);
  OpOptions po;
  po.pi_plus_form = form;
  const DiscreteOperator Pi = assemble(OpKind::Pi, d), Pp = assemble(OpKind::PiPlus, d, po);
  const GridField f = sample(d, bump);
  const GridField a = Pp.apply(Pi.apply(f)), b = Pi.apply(Pp.apply(f));
  RelErr ea, eb;
  for (const CheckPoint& c : pts) {
    const Multivector ref = bump(at(*d, c));
    ea.add(interp(a, c), ref);
    eb.add(interp(b, c), ref);
  }
  return {ea.value(), eb.value()};
}

AdjointErrors adjoint_errors(const DomainPtr& d, const TestFunctions& fn) {
  const BumpSliceFunction b1 = make_bump(fn.bump_support, fn.bump_coeff, *d);
  const BumpSliceFunction b2 = make_bump(fn.bump_support2, fn.bump_coeff2, *d);
  const GridField f = sample(d, b1), g = sample(d, b2);
  const DiscreteOperator T = assemble(OpKind::T, d);
  const Multivector l = weighted_inner(T.apply(f), g), r = weighted_inner(f, T.apply(g));

  // G* g = -Gbar g + (1-m) (I/v) g
  const int m = d->dim();
  std::vector<char> valid;
  GridField gstar = apply_G_fd(g, true, valid);
  gstar *= -1.0;
  for (std::size_t n = 0; n < gstar.size(); ++n) {
    const SlicePoint x = d->node_point(n);
    gstar.set(n, gstar.at(n) + x.I * g.at(n) * ((1.0 - m) / x.v));
  }
  const Multivector gl = weighted_inner(sample_G(d, b1, false), g), gr = weighted_inner(f, gstar);
  AdjointErrors e;
  e.t_self = norm(l - r) / std::max(norm(l), norm(r));
  e.g_star = norm(gl - gr) / std::max(norm(gl), norm(gr));
  return e;
}

BeltramiCheck beltrami_check(const DomainPtr& d, double product, std::uint64_t seed, double norm_tol) {
  const int m = d->dim();
  NormOptions no;
  no.tol = norm_tol;
  BeltramiCheck out;
  out.pi_norm = operator_norm(assemble(OpKind::Pi, d), no).value;

  BeltramiProblem p;
  p.domain = d;
  p.pi_norm = out.pi_norm;
  p.phi = PolynomialSliceFunction::identity(m);
  p.f = Multivector(m);
  const BeltramiSolution zero = solve(p);
  out.zero_residual = zero.residual;
  out.zero_iterations = zero.iterations;
  out.zero_h = sup_norm(zero.h);
  out.zero_phi_gap = sup_norm(zero.omega - sample(d, p.phi));

  p.f = Multivector::scalar(m, product / out.pi_norm);
  const BeltramiSolution s = solve(p);
  out.iterations = s.iterations;
  out.converged = s.converged;
  out.residual = s.residual;
  for (double r : s.contraction_estimates) out.max_ratio = std::max(out.max_ratio, r);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  GridField h0(d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(h0.blades()));  // keeps sup|h0| <= 1
  for (double& x : h0.raw()) x = scale * c(rng);
  p.h0 = h0;
  const BeltramiSolution r = solve(p);
  out.restart_gap = lp_norm(r.h - s.h, 2.0) / lp_norm(s.h, 2.0);
  return out;
}

}  // namespace slicepi::checks
