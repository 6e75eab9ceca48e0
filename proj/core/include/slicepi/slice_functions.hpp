#pragma once

#include <functional>
#include <vector>

#include "slicepi/clifford.hpp"
#include "slicepi/geometry.hpp"

namespace slicepi {

// f(q) = sum q^n a_n (right coefficients). With `antiholomorphic` set the
// variable is conj(q), giving functions annihilated by Gbar instead of G.
class PolynomialSliceFunction {
public:
  PolynomialSliceFunction() = default;
  PolynomialSliceFunction(int m, std::vector<Multivector> coeffs, bool antiholomorphic = false);

  static PolynomialSliceFunction identity(int m);  // f(q) = q

  int dim() const { return m_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool antiholomorphic() const { return anti_; }
  const std::vector<Multivector>& coeffs() const { return coeffs_; }

  Multivector operator()(const SlicePoint& x) const;
  // value at an arbitrary point u + vI of the plane C_I (v may be <= 0)
  Multivector on_slice(double u, double v, const Multivector& I) const;

private:
  int m_ = 2;
  std::vector<Multivector> coeffs_;
  bool anti_ = false;
};

struct SupportRect {
  double u0, u1, v0, v1;
};

// eta(u, v) c with eta a product of exp(-1/(1-t^2)) profiles in u and v^2.
class BumpSliceFunction {
public:
  BumpSliceFunction(const SupportRect& support, const Multivector& c);

  const SupportRect& support() const { return s_; }
  const Multivector& coefficient() const { return c_; }
  int dim() const { return c_.dim(); }

  double eta(double u, double v) const;
  void eta_gradient(double u, double v, double& du, double& dv) const;
  double peak() const;
  void center(double& u, double& v) const;

  Multivector operator()(const SlicePoint& x) const { return c_ * eta(x.u, x.v); }

private:
  SupportRect s_;
  Multivector c_;
};

BumpSliceFunction make_bump(const SupportRect& support, const Multivector& c, const AxialDomainQuadrature& domain);

// Clifford-valued samples at the volume nodes (j,k) of a domain.
class GridField {
public:
  GridField() = default;
  explicit GridField(DomainPtr domain);

  const DomainPtr& domain_ptr() const { return domain_; }
  const AxialDomainQuadrature& domain() const { return *domain_; }
  std::size_t size() const { return n_; }
  std::size_t blades() const { return nb_; }

  Multivector at(std::size_t node) const { return Multivector::from_coeffs(m_, &values_[node * nb_]); }
  Multivector at(std::size_t j, std::size_t k) const { return at(domain_->node(j, k)); }
  void set(std::size_t node, const Multivector& x);
  const double* data(std::size_t node) const { return &values_[node * nb_]; }
  double* data(std::size_t node) { return &values_[node * nb_]; }
  std::vector<double>& raw() { return values_; }
  const std::vector<double>& raw() const { return values_; }

  GridField& operator+=(const GridField& o);
  GridField& operator-=(const GridField& o);
  GridField& operator*=(double s);
  friend GridField operator+(GridField a, const GridField& b) { return a += b; }
  friend GridField operator-(GridField a, const GridField& b) { return a -= b; }
  friend GridField operator*(double s, GridField a) { return a *= s; }

private:
  DomainPtr domain_;
  int m_ = 2;
  std::size_t nb_ = 0, n_ = 0;
  std::vector<double> values_;
};

using PointFunction = std::function<Multivector(const SlicePoint&)>;

GridField sample(const DomainPtr& domain, const PointFunction& f);
GridField sample(const DomainPtr& domain, const PolynomialSliceFunction& f);
GridField sample(const DomainPtr& domain, const BumpSliceFunction& f);
GridField constant_field(const DomainPtr& domain, const Multivector& c);
// Pointwise left multiplication c(node) * g(node).
GridField left_multiply(const GridField& c, const GridField& g);

// alpha f_plus + beta f_minus, alpha = (1 - I_x I)/2, beta = (1 + I_x I)/2.
Multivector representation_formula(const Multivector& f_plus, const Multivector& f_minus, const Multivector& I,
                                   const Multivector& I_x);

// G = d_u + I d_v, Gbar = d_u - I d_v on slice coordinates.
Multivector apply_G_analytic(const PolynomialSliceFunction& f, const SlicePoint& x, bool conjugated);
Multivector apply_G_analytic(const BumpSliceFunction& f, const SlicePoint& x, bool conjugated);

// Central differences along the slice of sphere node k. With `richardson`
// the h and 2h stencils are combined for fourth-order accuracy.
bool fd_stencil_fits(const AxialDomainQuadrature& d, std::size_t j, bool richardson = false);
Multivector apply_G_fd(const GridField& f, std::size_t j, std::size_t k, bool conjugated, bool richardson = false);
// Whole-field version; `valid` marks planar cells where the stencil fits (others are zero).
GridField apply_G_fd(const GridField& f, bool conjugated, std::vector<char>& valid, bool richardson = false);

// Tensor cubic Lagrange interpolation in (u,v) on the slice of sphere node k.
// Throws if the 4x4 stencil leaves the (optionally masked) grid.
Multivector interpolate(const GridField& f, double u, double v, std::size_t k,
                        const std::vector<char>* valid = nullptr);
bool can_interpolate(const AxialDomainQuadrature& d, double u, double v, const std::vector<char>* valid = nullptr);

PolynomialSliceFunction star_product(const PolynomialSliceFunction& f, const PolynomialSliceFunction& g);

}  // namespace slicepi
