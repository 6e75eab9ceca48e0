#include "slicepi/slice_functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slicepi {

PolynomialSliceFunction::PolynomialSliceFunction(int m, std::vector<Multivector> coeffs, bool antiholomorphic)
    : m_(m), coeffs_(std::move(coeffs)), anti_(antiholomorphic) {
  if (coeffs_.empty()) coeffs_.push_back(Multivector(m));
  for (const Multivector& a : coeffs_)
    if (a.dim() != m) throw DimensionError("polynomial coefficient dimension mismatch");
}

PolynomialSliceFunction PolynomialSliceFunction::identity(int m) {
  return PolynomialSliceFunction(m, {Multivector(m), Multivector::scalar(m, 1.0)});
}

Multivector PolynomialSliceFunction::on_slice(double u, double v, const Multivector& I) const {
  Multivector q = I * (anti_ ? -v : v);
  q[0] = u;
  Multivector power = Multivector::scalar(m_, 1.0);
  Multivector sum(m_);
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    if (n > 0) power = power * q;
    sum += power * coeffs_[n];
  }
  return sum;
}

Multivector PolynomialSliceFunction::operator()(const SlicePoint& x) const { return on_slice(x.u, x.v, x.I); }

namespace {

double profile(double t) { return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0; }

double profile_derivative(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  const double s = 1.0 - t * t;
  return profile(t) * (-2.0 * t / (s * s));
}

}  // namespace

BumpSliceFunction::BumpSliceFunction(const SupportRect& support, const Multivector& c) : s_(support), c_(c) {
  if (!(s_.u1 > s_.u0) || !(s_.v1 > s_.v0) || !(s_.v0 > 0.0))
    throw DomainError("bump support must be a nondegenerate rectangle in v > 0");
}

double BumpSliceFunction::eta(double u, double v) const {
  const double tu = (2.0 * u - (s_.u0 + s_.u1)) / (s_.u1 - s_.u0);
  const double tv = (2.0 * v * v - (s_.v0 * s_.v0 + s_.v1 * s_.v1)) / (s_.v1 * s_.v1 - s_.v0 * s_.v0);
  return profile(tu) * profile(tv);
}

void BumpSliceFunction::eta_gradient(double u, double v, double& du, double& dv) const {
  const double su = s_.u1 - s_.u0, sv = s_.v1 * s_.v1 - s_.v0 * s_.v0;
  const double tu = (2.0 * u - (s_.u0 + s_.u1)) / su;
  const double tv = (2.0 * v * v - (s_.v0 * s_.v0 + s_.v1 * s_.v1)) / sv;
  du = profile_derivative(tu) * (2.0 / su) * profile(tv);
  dv = profile(tu) * profile_derivative(tv) * (4.0 * v / sv);
}

double BumpSliceFunction::peak() const { return std::exp(-2.0); }

void BumpSliceFunction::center(double& u, double& v) const {
  u = 0.5 * (s_.u0 + s_.u1);
  v = std::sqrt(0.5 * (s_.v0 * s_.v0 + s_.v1 * s_.v1));
}

BumpSliceFunction make_bump(const SupportRect& s, const Multivector& c, const AxialDomainQuadrature& domain) {
  if (c.dim() != domain.dim()) throw DimensionError("bump coefficient dimension mismatch");
  BumpSliceFunction f(s, c);
  const double margin = 2.0 * std::max(domain.hu(), domain.hv());
  const PlanarRegion& r = domain.region();
  for (double u : {s.u0, s.u1})
    for (double v : {s.v0, s.v1})
      if (r.boundary_distance(u, v) < margin - 1e-12)
        throw DomainError("bump support must lie inside D+ with a margin of two cells");
  return f;
}

GridField::GridField(DomainPtr domain)
    : domain_(std::move(domain)), m_(domain_->dim()), nb_(domain_->blades()), n_(domain_->num_nodes()),
      values_(n_ * nb_, 0.0) {}

void GridField::set(std::size_t node, const Multivector& x) {
  if (x.dim() != m_) throw DimensionError("grid value dimension mismatch");
  std::copy(x.data(), x.data() + nb_, &values_[node * nb_]);
}

GridField& GridField::operator+=(const GridField& o) {
  if (o.values_.size() != values_.size()) throw DimensionError("grid field size mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

GridField& GridField::operator-=(const GridField& o) {
  if (o.values_.size() != values_.size()) throw DimensionError("grid field size mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

GridField& GridField::operator*=(double s) {
  for (double& x : values_) x *= s;
  return *this;
}

GridField sample(const DomainPtr& domain, const PointFunction& f) {
  GridField g(domain);
  for (std::size_t n = 0; n < g.size(); ++n) g.set(n, f(domain->node_point(n)));
  return g;
}

GridField sample(const DomainPtr& domain, const PolynomialSliceFunction& f) {
  return sample(domain, PointFunction([&f](const SlicePoint& x) { return f(x); }));
}

GridField sample(const DomainPtr& domain, const BumpSliceFunction& f) {
  GridField g(domain);
  const std::size_t S = domain->num_dirs();
  for (std::size_t j = 0; j < domain->num_cells(); ++j) {
    const PlanarCell& c = domain->cells()[j];
    const Multivector val = f.coefficient() * f.eta(c.u, c.v);
    for (std::size_t k = 0; k < S; ++k) g.set(domain->node(j, k), val);
  }
  return g;
}

GridField constant_field(const DomainPtr& domain, const Multivector& c) {
  GridField g(domain);
  for (std::size_t n = 0; n < g.size(); ++n) g.set(n, c);
  return g;
}

GridField left_multiply(const GridField& c, const GridField& g) {
  GridField out(g.domain_ptr());
  for (std::size_t n = 0; n < g.size(); ++n) out.set(n, c.at(n) * g.at(n));
  return out;
}

Multivector representation_formula(const Multivector& f_plus, const Multivector& f_minus, const Multivector& I,
                                   const Multivector& I_x) {
  require_unit_vector(I, "I");
  require_unit_vector(I_x, "I_x");
  const int m = I.dim();
  const Multivector half = Multivector::scalar(m, 0.5);
  const Multivector p = (I_x * I) * 0.5;
  return (half - p) * f_plus + (half + p) * f_minus;
}

Multivector apply_G_analytic(const PolynomialSliceFunction& f, const SlicePoint& x, bool conjugated) {
  const int m = f.dim();
  // G annihilates q^n and Gbar annihilates conj(q)^n; the other one gives 2n q^{n-1}.
  const bool zero = f.antiholomorphic() ? conjugated : !conjugated;
  if (zero) return Multivector(m);
  std::vector<Multivector> d;
  for (std::size_t n = 1; n < f.coeffs().size(); ++n) d.push_back(f.coeffs()[n] * (2.0 * static_cast<double>(n)));
  if (d.empty()) return Multivector(m);
  return PolynomialSliceFunction(m, std::move(d), f.antiholomorphic())(x);
}

Multivector apply_G_analytic(const BumpSliceFunction& f, const SlicePoint& x, bool conjugated) {
  double du, dv;
  f.eta_gradient(x.u, x.v, du, dv);
  const Multivector c = f.coefficient();
  return c * du + (x.I * c) * (conjugated ? -dv : dv);
}

bool fd_stencil_fits(const AxialDomainQuadrature& d, std::size_t j, bool richardson) {
  const PlanarCell& c = d.cells()[j];
  const int reach = richardson ? 2 : 1;
  for (int s = 1; s <= reach; ++s)
    if (d.cell_at(c.a + s, c.b) < 0 || d.cell_at(c.a - s, c.b) < 0 || d.cell_at(c.a, c.b + s) < 0 ||
        d.cell_at(c.a, c.b - s) < 0)
      return false;
  return true;
}

namespace {

void fd_into(const GridField& f, std::size_t j, std::size_t k, bool conjugated, bool richardson, double* out) {
  const AxialDomainQuadrature& d = f.domain();
  const PlanarCell& c = d.cells()[j];
  const std::size_t nb = f.blades();
  auto val = [&](int da, int db) { return f.data(d.node(static_cast<std::size_t>(d.cell_at(c.a + da, c.b + db)), k)); };
  double du[kMaxBlades], dv[kMaxBlades];
  {
    const double *up = val(1, 0), *um = val(-1, 0), *vp = val(0, 1), *vm = val(0, -1);
    for (std::size_t i = 0; i < nb; ++i) {
      du[i] = (up[i] - um[i]) / (2.0 * d.hu());
      dv[i] = (vp[i] - vm[i]) / (2.0 * d.hv());
    }
  }
  if (richardson) {
    const double *up = val(2, 0), *um = val(-2, 0), *vp = val(0, 2), *vm = val(0, -2);
    for (std::size_t i = 0; i < nb; ++i) {
      du[i] = (4.0 * du[i] - (up[i] - um[i]) / (4.0 * d.hu())) / 3.0;
      dv[i] = (4.0 * dv[i] - (vp[i] - vm[i]) / (4.0 * d.hv())) / 3.0;
    }
  }
  const Multivector iv = d.dir(k) * Multivector::from_coeffs(d.dim(), dv);
  for (std::size_t i = 0; i < nb; ++i) out[i] = du[i] + (conjugated ? -iv[i] : iv[i]);
}

}  // namespace

Multivector apply_G_fd(const GridField& f, std::size_t j, std::size_t k, bool conjugated, bool richardson) {
  if (!fd_stencil_fits(f.domain(), j, richardson)) throw std::out_of_range("finite-difference stencil leaves the grid");
  Multivector r(f.domain().dim());
  fd_into(f, j, k, conjugated, richardson, r.data());
  return r;
}

GridField apply_G_fd(const GridField& f, bool conjugated, std::vector<char>& valid, bool richardson) {
  const AxialDomainQuadrature& d = f.domain();
  GridField out(f.domain_ptr());
  valid.assign(d.num_cells(), 0);
  for (std::size_t j = 0; j < d.num_cells(); ++j) {
    if (!fd_stencil_fits(d, j, richardson)) continue;
    valid[j] = 1;
    for (std::size_t k = 0; k < d.num_dirs(); ++k) fd_into(f, j, k, conjugated, richardson, out.data(d.node(j, k)));
  }
  return out;
}

namespace {

bool stencil_base(const AxialDomainQuadrature& d, double u, double v, const std::vector<char>* valid, int& a0,
                  int& b0, double& su, double& sv) {
  const double x = (u - d.grid_u0()) / d.hu() - 0.5, y = (v - d.grid_v0()) / d.hv() - 0.5;
  a0 = static_cast<int>(std::floor(x));
  b0 = static_cast<int>(std::floor(y));
  su = x - a0;
  sv = y - b0;
  for (int db = -1; db <= 2; ++db)
    for (int da = -1; da <= 2; ++da) {
      const int j = d.cell_at(a0 + da, b0 + db);
      if (j < 0 || (valid && !(*valid)[j])) return false;
    }
  return true;
}

void lagrange4(double s, double* L) {
  L[0] = -s * (s - 1.0) * (s - 2.0) / 6.0;
  L[1] = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
  L[2] = -(s + 1.0) * s * (s - 2.0) / 2.0;
  L[3] = (s + 1.0) * s * (s - 1.0) / 6.0;
}

}  // namespace

bool can_interpolate(const AxialDomainQuadrature& d, double u, double v, const std::vector<char>* valid) {
  int a0, b0;
  double su, sv;
  return stencil_base(d, u, v, valid, a0, b0, su, sv);
}

Multivector interpolate(const GridField& f, double u, double v, std::size_t k, const std::vector<char>* valid) {
  const AxialDomainQuadrature& d = f.domain();
  int a0, b0;
  double su, sv;
  if (!stencil_base(d, u, v, valid, a0, b0, su, sv)) throw std::out_of_range("interpolation stencil leaves the grid");
  double Lu[4], Lv[4];
  lagrange4(su, Lu);
  lagrange4(sv, Lv);
  Multivector r(d.dim());
  for (int db = 0; db < 4; ++db)
    for (int da = 0; da < 4; ++da) {
      const double w = Lu[da] * Lv[db];
      const double* p = f.data(d.node(static_cast<std::size_t>(d.cell_at(a0 - 1 + da, b0 - 1 + db)), k));
      for (std::size_t i = 0; i < f.blades(); ++i) r[i] += w * p[i];
    }
  return r;
}

PolynomialSliceFunction star_product(const PolynomialSliceFunction& f, const PolynomialSliceFunction& g) {
  if (f.dim() != g.dim()) throw DimensionError("star product dimension mismatch");
  if (f.antiholomorphic() || g.antiholomorphic())
    throw std::invalid_argument("star product is defined for power series in q");
  const int m = f.dim();
  const auto& a = f.coeffs();
  const auto& b = g.coeffs();
  std::vector<Multivector> c(a.size() + b.size() - 1, Multivector(m));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return PolynomialSliceFunction(m, std::move(c));
}

}  // namespace slicepi
