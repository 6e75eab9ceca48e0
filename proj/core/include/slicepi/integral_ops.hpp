#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "slicepi/clifford.hpp"
#include "slicepi/geometry.hpp"
#include "slicepi/slice_functions.hpp"

namespace slicepi {

namespace detail {
class PlanarKernelBank;
}

enum class OpKind { T, Tbar, F, Fbar, Pi, PiPlus, Custom };
const char* kind_name(OpKind k);

// Pi+ := G o Tbar. `definition` differentiates the conjugate Cauchy kernel
// exactly (volume kernel 2(alpha d1 conj(alpha) + beta d2 conj(beta)) plus the
// local term (2/omega) int beta conj(alpha) f(q_I) dS). `printed` uses the
// volume kernel conj(k) with the hemisphere correction
// (1/omega) int_{S+} [conj(alpha) f(q_I) + conj(beta) f(q_{-I})] - f(q)/2.
// The two agree on slice inputs with vanishing odd stem part; see README.
enum class PiPlusForm { definition, printed };

enum class Measure { dV, dmu };

struct PointValue {
  Multivector value;
  bool accuracy_warning = false;  // q within one cell of the boundary, or off the collocation grid
};

struct OpOptions {
  PiPlusForm pi_plus_form = PiPlusForm::definition;
  std::size_t max_dense_entries = 4'000'000;  // rows * cols Clifford blocks
};

struct MemoryGuardError : std::length_error {
  using std::length_error::length_error;
};

// Principal value of int dA / z^2 over a centered hu x hv cell (zero for squares).
double self_cell_pv(double hu, double hv);

// ---- pointwise reference path (direct Clifford kernel sums) ----
PointValue teodorescu(const GridField& f, const SlicePoint& q);
PointValue conjugate_teodorescu(const GridField& f, const SlicePoint& q);
PointValue pi_op(const GridField& f, const SlicePoint& q);
// Pi+ at a volume node; the local terms need f on every slice image of q.
PointValue pi_plus_op(const GridField& f, std::size_t node, PiPlusForm form = PiPlusForm::definition);
// F (conjugated = false) or Fbar; f is evaluated at the boundary nodes.
PointValue cauchy_boundary(const PointFunction& f, const AxialDomainQuadrature& d, const SlicePoint& q,
                           bool conjugated);

// Slice operators over Omega_I = D+ union its mirror inside C_I; q = qu + qv I (qv != 0).
PointValue teodorescu_slice(const PointFunction& f, const AxialDomainQuadrature& d, const Multivector& I, double qu,
                            double qv);
PointValue conjugate_teodorescu_slice(const PointFunction& f, const AxialDomainQuadrature& d, const Multivector& I,
                                      double qu, double qv);
PointValue pi_slice(const PointFunction& f, const AxialDomainQuadrature& d, const Multivector& I, double qu,
                    double qv);

// ---- discrete operators over the collocation nodes ----
class DiscreteOperator {
public:
  OpKind kind() const { return kind_; }
  PiPlusForm pi_plus_form() const { return form_; }
  const DomainPtr& domain() const { return domain_; }
  std::size_t rows() const;
  std::size_t cols() const;  // volume nodes, or boundary nodes for F kinds

  GridField apply(const GridField& f) const;
  // F kinds: values at boundary_nodes() order
  GridField apply_boundary(const std::vector<Multivector>& fb) const;
  GridField apply_boundary(const PointFunction& f) const;

  bool has_adjoint() const;
  // adjoint with respect to the dmu-weighted coefficient inner product
  GridField apply_adjoint(const GridField& g) const;

  // Volume/boundary entry A[row][col] (kernel times weight, self cell by the desingularization rule).
  Multivector entry(std::size_t row, std::size_t col) const;
  // Pi+ local block: out(i,k) += sum_l correction(k,l) f(i,l), same for every planar cell.
  const std::vector<Multivector>& correction() const { return correction_; }
  Multivector correction(std::size_t k, std::size_t l) const { return correction_[k * domain_->num_dirs() + l]; }

  void materialize();
  bool materialized() const { return !dense_.empty(); }

  // Header: magic, kind, m, rows, cols, dirs; body: rows*cols*2^m little-endian doubles, then the correction block.
  void dump(const std::string& path) const;
  static DiscreteOperator load(const std::string& path, DomainPtr domain);
  static DiscreteOperator from_dense(DomainPtr domain, const std::vector<Multivector>& entries);

private:
  friend DiscreteOperator assemble(OpKind, DomainPtr, const OpOptions&);
  DiscreteOperator() = default;

  GridField apply_structured(const GridField& f) const;
  GridField apply_dense(const std::vector<double>& in) const;
  void add_correction(const GridField& f, GridField& out) const;
  void build_correction();

  OpKind kind_ = OpKind::Custom;
  PiPlusForm form_ = PiPlusForm::definition;
  DomainPtr domain_;
  OpOptions opts_;
  std::shared_ptr<const detail::PlanarKernelBank> bank_;
  std::vector<Multivector> correction_;
  std::vector<double> dense_;
};

DiscreteOperator assemble(OpKind kind, DomainPtr domain, const OpOptions& opts = {});

// Full-field F / Fbar of a function given pointwise.
GridField cauchy_boundary_field(const PointFunction& f, const DomainPtr& domain, bool conjugated);

// ---- norms, inner products, constants ----
Multivector weighted_inner(const GridField& f, const GridField& g);  // sum conj(f) g dmu
double lp_norm(const GridField& f, double p, Measure measure = Measure::dmu);
double sup_norm(const GridField& f);

// Largest singular value through the spectrum of A*A. Lanczos builds the same
// Krylov space as the power iteration but resolves clustered top singular
// values (Pi is close to an isometry) in far fewer applications.
enum class NormMethod { lanczos, power };

struct NormOptions {
  NormMethod method = NormMethod::lanczos;
  double tol = 1e-8;  // relative change of the top Ritz value / Rayleigh quotient
  int max_iter = 10000;
  unsigned seed = 12345;
};

struct NormResult {
  double value = 0.0;
  int iterations = 0;
};

struct NonConvergenceError : std::runtime_error {
  NonConvergenceError(const std::string& msg, double last) : std::runtime_error(msg), last_value(last) {}
  double last_value;
};

NormResult operator_norm(const DiscreteOperator& op, const NormOptions& opts = {});

double theoretical_C_prime();
double theoretical_C(double p, int m);
double c_prime_integrand(double gamma);

// -(FD G f) + (m-1) (I_k / v) f at an interior cell.
Multivector adjoint_G_star(const GridField& f, std::size_t j, std::size_t k);

}  // namespace slicepi
