#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "slicepi/clifford.hpp"

namespace slicepi {

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// x = u + v I with v > 0 and I a unit vector.
struct SlicePoint {
  double u = 0.0;
  double v = 1.0;
  Multivector I{2};

  SlicePoint() = default;
  SlicePoint(double u_, double v_, const Multivector& I_);

  static SlicePoint from_paravector(const Multivector& x);

  int dim() const { return I.dim(); }
  Multivector point() const;
};

// Unit-vector checks shared by several modules.
bool is_unit_vector(const Multivector& I, double tol = 1e-12);
void require_unit_vector(const Multivector& I, const char* what);

class PlanarRegion {
public:
  enum class Shape { rectangle, disk };

  static PlanarRegion rectangle(double u0, double u1, double v0, double v1);
  static PlanarRegion disk(double uc, double vc, double radius);

  Shape shape() const { return shape_; }
  std::string shape_name() const { return shape_ == Shape::rectangle ? "rectangle" : "disk"; }

  double u0() const { return a_; }
  double u1() const { return b_; }
  double v0() const { return c_; }
  double v1() const { return d_; }
  double uc() const { return a_; }
  double vc() const { return c_; }
  double radius() const { return b_; }

  double area() const;
  bool contains(double u, double v) const;
  // Distance from an interior point to the region boundary (negative outside).
  double boundary_distance(double u, double v) const;
  // Bounding box [lo_u, hi_u] x [lo_v, hi_v]
  void bounds(double& lo_u, double& hi_u, double& lo_v, double& hi_v) const;
  // Exact area of region intersected with an axis-aligned cell.
  double cell_overlap(double cu0, double cu1, double cv0, double cv1) const;

private:
  PlanarRegion(Shape s, double a, double b, double c, double d) : shape_(s), a_(a), b_(b), c_(c), d_(d) {}
  Shape shape_;
  double a_, b_, c_, d_;
};

struct Resolution {
  int planar_n = 64;    // cells per axis of the bounding box
  int boundary_n = 16;  // Gauss-Legendre panels per edge (rectangle) or quarter arc (disk)
  int sphere_n = 16;    // azimuthal nodes; polar factors use sphere_n/2 Gauss nodes
};

struct PlanarCell {
  int a = 0, b = 0;   // grid column (u) and row (v)
  double u = 0.0, v = 0.0;
  double w = 0.0;     // area of the cell inside D+
};

struct BoundaryPlanarNode {
  double u = 0.0, v = 0.0;
  double nu = 0.0, nv = 0.0;  // outward unit normal in the (u,v) plane
  double s = 0.0;             // arc-length weight
};

struct VolumeNode {
  Multivector point;
  double dV = 0.0;
  double dmu = 0.0;
};

struct BoundaryNode {
  Multivector point;
  Multivector normal;
  double dsigma = 0.0;
};

// Surface area of the unit sphere S^{m-1} in R^m (counting measure 2 for m = 1).
double sphere_area(int m);

class AxialDomainQuadrature;
using DomainPtr = std::shared_ptr<const AxialDomainQuadrature>;

DomainPtr build_domain(const PlanarRegion& region, int m, const Resolution& res);

class AxialDomainQuadrature {
public:
  const PlanarRegion& region() const { return region_; }
  int dim() const { return m_; }
  std::size_t blades() const { return std::size_t{1} << m_; }
  const Resolution& resolution() const { return res_; }
  double omega() const { return omega_; }

  // grid
  int nu() const { return nu_; }
  int nv() const { return nv_; }
  double hu() const { return hu_; }
  double hv() const { return hv_; }
  double grid_u0() const { return gu0_; }
  double grid_v0() const { return gv0_; }
  double cell_center_u(int a) const { return gu0_ + (a + 0.5) * hu_; }
  double cell_center_v(int b) const { return gv0_ + (b + 0.5) * hv_; }
  // planar index of grid cell (a,b), or -1 when the cell does not meet D+
  int cell_at(int a, int b) const;
  // every cell within `margin` grid steps of j is active and uncut
  bool is_interior(std::size_t j, int margin) const;
  // planar index of the cell whose center is nearest to (u,v); -1 if none
  int locate(double u, double v) const;

  const std::vector<PlanarCell>& cells() const { return cells_; }
  std::size_t num_cells() const { return cells_.size(); }

  // sphere rule
  std::size_t num_dirs() const { return sigma_.size(); }
  const Multivector& dir(std::size_t k) const { return dirs_[k]; }
  const double* dir_components(std::size_t k) const { return &dir_comp_[k * m_]; }
  double sigma(std::size_t k) const { return sigma_[k]; }
  std::size_t antipode(std::size_t k) const { return antipode_[k]; }
  bool upper(std::size_t k) const { return upper_[k]; }
  // index of the stored direction closest to I
  std::size_t nearest_dir(const Multivector& I) const;

  const std::vector<BoundaryPlanarNode>& boundary() const { return boundary_; }

  std::size_t num_nodes() const { return cells_.size() * sigma_.size(); }
  std::size_t node(std::size_t j, std::size_t k) const { return j * sigma_.size() + k; }
  std::size_t node_cell(std::size_t n) const { return n / sigma_.size(); }
  std::size_t node_dir(std::size_t n) const { return n % sigma_.size(); }

  SlicePoint node_point(std::size_t n) const;
  double dV(std::size_t n) const;
  double dmu(std::size_t n) const;

  std::vector<VolumeNode> volume_nodes() const;
  std::vector<BoundaryNode> boundary_nodes() const;

private:
  friend DomainPtr build_domain(const PlanarRegion&, int, const Resolution&);
  explicit AxialDomainQuadrature(const PlanarRegion& r) : region_(r) {}

  PlanarRegion region_;
  int m_ = 2;
  Resolution res_;
  double omega_ = 0.0;
  int nu_ = 0, nv_ = 0;
  double hu_ = 0.0, hv_ = 0.0, gu0_ = 0.0, gv0_ = 0.0;
  std::vector<int> grid_;
  std::vector<PlanarCell> cells_;
  std::vector<Multivector> dirs_;
  std::vector<double> dir_comp_;
  std::vector<double> sigma_;
  std::vector<std::size_t> antipode_;
  std::vector<char> upper_;
  std::vector<BoundaryPlanarNode> boundary_;
};

// Gauss-Legendre nodes/weights on [-1,1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);
// Gauss rule for the weight (1-t^2)^lambda on [-1,1], lambda >= 0.
void gauss_gegenbauer(int n, double lambda, std::vector<double>& x, std::vector<double>& w);

}  // namespace slicepi
