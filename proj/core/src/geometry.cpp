#include "slicepi/geometry.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace slicepi {

namespace {

constexpr double kPi = std::numbers::pi;

// Area of the centered disk of radius R intersected with {X <= x, Y <= y}.
double quadrant_area(double x, double y, double R) {
  auto S = [R](double t) {
    t = std::clamp(t, -R, R);
    return 0.5 * (t * std::sqrt(std::max(0.0, R * R - t * t)) + R * R * std::asin(t / R)) + 0.25 * kPi * R * R;
  };
  const double X = std::clamp(x, -R, R);
  if (y >= R) return 2.0 * S(X);
  if (y <= -R || X <= -R) return 0.0;
  const double c = std::sqrt(R * R - y * y);
  double area = 0.0;
  if (y >= 0.0) area += 2.0 * S(std::min(X, -c));
  if (X > -c) {
    const double t1 = std::min(X, c);
    area += y * (t1 + c) + S(t1) - S(-c);
  }
  if (X > c && y >= 0.0) area += 2.0 * (S(X) - S(c));
  return area;
}

}  // namespace

bool is_unit_vector(const Multivector& I, double tol) {
  return I.is_vector(tol) && std::abs(norm(I) - 1.0) <= tol;
}

void require_unit_vector(const Multivector& I, const char* what) {
  if (!is_unit_vector(I, 1e-10)) throw std::invalid_argument(std::string(what) + " must be a unit vector");
}

SlicePoint::SlicePoint(double u_, double v_, const Multivector& I_) : u(u_), v(v_), I(I_) {
  if (!(v > 0.0)) throw DomainError("slice point needs v > 0");
  require_unit_vector(I, "slice direction");
}

SlicePoint SlicePoint::from_paravector(const Multivector& x) {
  const Paravector p = Paravector::from_multivector(x);
  const double v = p.vec_norm();
  if (!(v > 0.0)) throw DomainError("paravector lies on the real axis");
  Multivector I = x;
  I[0] = 0.0;
  return SlicePoint(p.x0(), v, I / v);
}

Multivector SlicePoint::point() const {
  Multivector x = I * v;
  x[0] = u;
  return x;
}

PlanarRegion PlanarRegion::rectangle(double u0, double u1, double v0, double v1) {
  if (!(u1 > u0) || !(v1 > v0)) throw DomainError("rectangle needs u0 < u1 and v0 < v1");
  if (!(v0 > 0.0)) throw DomainError("rectangle must lie in v > 0 (v0 > 0)");
  return {Shape::rectangle, u0, u1, v0, v1};
}

PlanarRegion PlanarRegion::disk(double uc, double vc, double radius) {
  if (!(radius > 0.0)) throw DomainError("disk radius must be positive");
  if (!(vc - radius > 0.0)) throw DomainError("disk must lie in v > 0 (vc - R > 0)");
  return {Shape::disk, uc, radius, vc, 0.0};
}

double PlanarRegion::area() const {
  return shape_ == Shape::rectangle ? (b_ - a_) * (d_ - c_) : kPi * b_ * b_;
}

bool PlanarRegion::contains(double u, double v) const {
  if (shape_ == Shape::rectangle) return u > a_ && u < b_ && v > c_ && v < d_;
  return std::hypot(u - a_, v - c_) < b_;
}

double PlanarRegion::boundary_distance(double u, double v) const {
  if (shape_ == Shape::disk) return b_ - std::hypot(u - a_, v - c_);
  const double du = std::min(u - a_, b_ - u), dv = std::min(v - c_, d_ - v);
  if (du >= 0.0 && dv >= 0.0) return std::min(du, dv);
  return -std::hypot(std::min(du, 0.0), std::min(dv, 0.0));
}

void PlanarRegion::bounds(double& lo_u, double& hi_u, double& lo_v, double& hi_v) const {
  if (shape_ == Shape::rectangle) {
    lo_u = a_; hi_u = b_; lo_v = c_; hi_v = d_;
  } else {
    lo_u = a_ - b_; hi_u = a_ + b_; lo_v = c_ - b_; hi_v = c_ + b_;
  }
}

double PlanarRegion::cell_overlap(double cu0, double cu1, double cv0, double cv1) const {
  if (shape_ == Shape::rectangle) {
    const double du = std::min(cu1, b_) - std::max(cu0, a_);
    const double dv = std::min(cv1, d_) - std::max(cv0, c_);
    return (du > 0.0 && dv > 0.0) ? du * dv : 0.0;
  }
  const double R = b_;
  const double x0 = cu0 - a_, x1 = cu1 - a_, y0 = cv0 - c_, y1 = cv1 - c_;
  const double area = quadrant_area(x1, y1, R) - quadrant_area(x0, y1, R) - quadrant_area(x1, y0, R) +
                      quadrant_area(x0, y0, R);
  return std::max(area, 0.0);
}

double sphere_area(int m) {
  if (m < 1) throw DimensionError("sphere dimension must be >= 1");
  return 2.0 * std::pow(kPi, 0.5 * m) / std::tgamma(0.5 * m);
}

void gauss_gegenbauer(int n, double lambda, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1) throw std::invalid_argument("Gauss rule needs n >= 1");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + 2.0 * lambda;
    const double b = std::sqrt(k * (k + 2.0 * lambda) / ((s + 1.0) * (s - 1.0)));
    J(k, k - 1) = J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J);
  const double mu0 = std::sqrt(kPi) * std::tgamma(lambda + 1.0) / std::tgamma(lambda + 1.5);
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    x[i] = eig.eigenvalues()(i);
    const double v0 = eig.eigenvectors()(0, i);
    w[i] = mu0 * v0 * v0;
  }
  // symmetrize against eigen-solver roundoff
  for (int i = 0; i < n / 2; ++i) {
    const double xs = 0.5 * (x[n - 1 - i] - x[i]);
    const double ws = 0.5 * (w[i] + w[n - 1 - i]);
    x[i] = -xs; x[n - 1 - i] = xs;
    w[i] = w[n - 1 - i] = ws;
  }
  if (n % 2) x[n / 2] = 0.0;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) { gauss_gegenbauer(n, 0.0, x, w); }

namespace {

struct SphereRule {
  std::vector<std::vector<double>> dirs;
  std::vector<double> sigma;
  std::vector<std::size_t> antipode;
  std::vector<char> upper;
};

// Product rule on S^{m-1}: uniform azimuth on S^1, Gauss in the polar
// coordinate t = <I, e1> for each added dimension (weight (1-t^2)^{(m-3)/2}).
SphereRule sphere_rule(int m, int sphere_n) {
  SphereRule r;
  if (m == 1) {
    r.dirs = {{1.0}, {-1.0}};
    r.sigma = {1.0, 1.0};
    r.antipode = {1, 0};
    r.upper = {1, 0};
    return r;
  }
  if (m == 2) {
    const int n = sphere_n;
    for (int k = 0; k < n; ++k) {
      const double phi = (k + 0.5) * 2.0 * kPi / n;
      r.dirs.push_back({std::cos(phi), std::sin(phi)});
      r.sigma.push_back(2.0 * kPi / n);
      r.antipode.push_back((k + n / 2) % n);
      r.upper.push_back(std::sin(phi) > 0.0);
    }
    return r;
  }
  const SphereRule sub = sphere_rule(m - 1, sphere_n);
  int nt = std::max(2, sphere_n / 2);
  if (nt % 2) ++nt;
  std::vector<double> t, wt;
  gauss_gegenbauer(nt, 0.5 * (m - 3), t, wt);
  const std::size_t ns = sub.sigma.size();
  for (int i = 0; i < nt; ++i) {
    const double s = std::sqrt(std::max(0.0, 1.0 - t[i] * t[i]));
    for (std::size_t k = 0; k < ns; ++k) {
      std::vector<double> d{t[i]};
      for (double c : sub.dirs[k]) d.push_back(s * c);
      r.dirs.push_back(std::move(d));
      r.sigma.push_back(wt[i] * sub.sigma[k]);
      r.antipode.push_back((nt - 1 - i) * ns + sub.antipode[k]);
      r.upper.push_back(t[i] > 0.0);
    }
  }
  return r;
}

}  // namespace

DomainPtr build_domain(const PlanarRegion& region, int m, const Resolution& res) {
  if (m < 1 || m > kMaxDim) throw DimensionError("m must be in 1..6");
  if (res.planar_n < 2 || res.boundary_n < 2 || res.sphere_n < 2)
    throw std::invalid_argument("resolutions must be >= 2");
  if (m >= 2 && res.sphere_n % 2)
    throw std::invalid_argument("sphere_n must be even (antipodal node pairs)");
  std::shared_ptr<AxialDomainQuadrature> d(new AxialDomainQuadrature(region));
  d->m_ = m;
  d->res_ = res;
  d->omega_ = sphere_area(m);

  double lu, hu, lv, hv;
  region.bounds(lu, hu, lv, hv);
  if (!(lv > 0.0)) throw DomainError("region touches the real axis");
  d->nu_ = d->nv_ = res.planar_n;
  d->gu0_ = lu;
  d->gv0_ = lv;
  d->hu_ = (hu - lu) / res.planar_n;
  d->hv_ = (hv - lv) / res.planar_n;
  d->grid_.assign(static_cast<std::size_t>(d->nu_) * d->nv_, -1);
  const double full = d->hu_ * d->hv_;
  for (int b = 0; b < d->nv_; ++b)
    for (int a = 0; a < d->nu_; ++a) {
      const double cu0 = lu + a * d->hu_, cv0 = lv + b * d->hv_;
      double w = region.cell_overlap(cu0, cu0 + d->hu_, cv0, cv0 + d->hv_);
      if (w <= 1e-12 * full) continue;
      if (w > full * (1.0 - 1e-13)) w = full;
      d->grid_[static_cast<std::size_t>(b) * d->nu_ + a] = static_cast<int>(d->cells_.size());
      d->cells_.push_back({a, b, d->cell_center_u(a), d->cell_center_v(b), w});
    }

  const SphereRule sr = sphere_rule(m, res.sphere_n);
  for (std::size_t k = 0; k < sr.sigma.size(); ++k) {
    d->dirs_.push_back(Multivector::vector(m, sr.dirs[k].data()));
    d->dir_comp_.insert(d->dir_comp_.end(), sr.dirs[k].begin(), sr.dirs[k].end());
  }
  d->sigma_ = sr.sigma;
  d->antipode_ = sr.antipode;
  d->upper_ = sr.upper;

  constexpr int kOrder = 6;
  std::vector<double> gx, gw;
  gauss_legendre(kOrder, gx, gw);
  auto add_segment = [&](double ua, double va, double ub, double vb) {
    const double len = std::hypot(ub - ua, vb - va);
    const double nu = (vb - va) / len, nv = -(ub - ua) / len;  // clockwise-right = outward for CCW traversal
    for (int p = 0; p < res.boundary_n; ++p)
      for (int g = 0; g < kOrder; ++g) {
        const double t = (p + 0.5 * (gx[g] + 1.0)) / res.boundary_n;
        d->boundary_.push_back({ua + t * (ub - ua), va + t * (vb - va), nu, nv, 0.5 * gw[g] * len / res.boundary_n});
      }
  };
  if (region.shape() == PlanarRegion::Shape::rectangle) {
    const double u0 = region.u0(), u1 = region.u1(), v0 = region.v0(), v1 = region.v1();
    add_segment(u0, v0, u1, v0);
    add_segment(u1, v0, u1, v1);
    add_segment(u1, v1, u0, v1);
    add_segment(u0, v1, u0, v0);
  } else {
    const double R = region.radius();
    const int panels = 4 * res.boundary_n;
    for (int p = 0; p < panels; ++p)
      for (int g = 0; g < kOrder; ++g) {
        const double psi = (p + 0.5 * (gx[g] + 1.0)) * 2.0 * kPi / panels;
        d->boundary_.push_back({region.uc() + R * std::cos(psi), region.vc() + R * std::sin(psi), std::cos(psi),
                                std::sin(psi), 0.5 * gw[g] * R * 2.0 * kPi / panels});
      }
  }
  return d;
}

int AxialDomainQuadrature::cell_at(int a, int b) const {
  if (a < 0 || b < 0 || a >= nu_ || b >= nv_) return -1;
  return grid_[static_cast<std::size_t>(b) * nu_ + a];
}

bool AxialDomainQuadrature::is_interior(std::size_t j, int margin) const {
  const PlanarCell& c = cells_[j];
  const double full = hu_ * hv_;
  for (int db = -margin; db <= margin; ++db)
    for (int da = -margin; da <= margin; ++da) {
      const int i = cell_at(c.a + da, c.b + db);
      if (i < 0 || cells_[i].w < full) return false;
    }
  return true;
}

int AxialDomainQuadrature::locate(double u, double v) const {
  const int a = static_cast<int>(std::floor((u - gu0_) / hu_));
  const int b = static_cast<int>(std::floor((v - gv0_) / hv_));
  return cell_at(a, b);
}

std::size_t AxialDomainQuadrature::nearest_dir(const Multivector& I) const {
  std::size_t best = 0;
  double bd = -2.0;
  const Algebra& alg = Algebra::get(m_);
  for (std::size_t k = 0; k < sigma_.size(); ++k) {
    double dot = 0.0;
    for (int i = 1; i <= m_; ++i) dot += dir_comp_[k * m_ + i - 1] * I[alg.vector_index(i)];
    if (dot > bd) { bd = dot; best = k; }
  }
  return best;
}

SlicePoint AxialDomainQuadrature::node_point(std::size_t n) const {
  const PlanarCell& c = cells_[node_cell(n)];
  return SlicePoint(c.u, c.v, dirs_[node_dir(n)]);
}

double AxialDomainQuadrature::dV(std::size_t n) const {
  const PlanarCell& c = cells_[node_cell(n)];
  return c.w * std::pow(c.v, m_ - 1) * sigma_[node_dir(n)];
}

double AxialDomainQuadrature::dmu(std::size_t n) const { return cells_[node_cell(n)].w * sigma_[node_dir(n)]; }

std::vector<VolumeNode> AxialDomainQuadrature::volume_nodes() const {
  std::vector<VolumeNode> out;
  out.reserve(num_nodes());
  for (std::size_t n = 0; n < num_nodes(); ++n) out.push_back({node_point(n).point(), dV(n), dmu(n)});
  return out;
}

std::vector<BoundaryNode> AxialDomainQuadrature::boundary_nodes() const {
  std::vector<BoundaryNode> out;
  out.reserve(boundary_.size() * sigma_.size());
  for (const BoundaryPlanarNode& b : boundary_)
    for (std::size_t k = 0; k < sigma_.size(); ++k) {
      Multivector x = dirs_[k] * b.v;
      x[0] = b.u;
      Multivector n = dirs_[k] * b.nv;
      n[0] = b.nu;
      out.push_back({x, n, b.s * std::pow(b.v, m_ - 1) * sigma_[k]});
    }
  return out;
}

}  // namespace slicepi
