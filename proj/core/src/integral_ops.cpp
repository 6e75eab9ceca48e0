#include "slicepi/integral_ops.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>

#include "planar_conv.hpp"
#include "slicepi/kernels.hpp"

namespace slicepi {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;
using detail::KernelFamily;
using detail::PlanarKernelBank;

// y += scale * (sum_d I_d e_d) x
void vec_left_acc(const Algebra& alg, const double* I, const double* x, double* y, double scale) {
  const std::size_t nb = alg.size();
  for (int dd = 1; dd <= alg.dim(); ++dd) {
    const double c = scale * I[dd - 1];
    if (c == 0.0) continue;
    const std::size_t e = alg.vector_index(dd);
    for (std::size_t b = 0; b < nb; ++b) y[alg.product_index(e, b)] += c * alg.product_sign(e, b) * x[b];
  }
}

bool near_boundary(const AxialDomainQuadrature& d, double u, double v) {
  return d.region().boundary_distance(u, v) < std::max(d.hu(), d.hv());
}

// Outward normal n_u + n_v I, or its conjugate for the conjugate Cauchy operator.
Multivector boundary_normal(const BoundaryPlanarNode& b, const Multivector& I, bool conjugated) {
  return slice_element(b.nu, conjugated ? -b.nv : b.nv, I);
}

// Kernel families for the pointwise and dense paths, written through the planar
// alpha/beta coefficients g1 (x against q_I) and g2 (x against q_{-I}).
enum class VolumeKernel { T, Tbar, Pi, PiPlusDefinition, PiPlusPrinted };

KernelFamily family_of(VolumeKernel k) {
  return k == VolumeKernel::T || k == VolumeKernel::Tbar ? KernelFamily::cauchy : KernelFamily::beurling;
}

double volume_scale(VolumeKernel k, double omega) {
  switch (k) {
    case VolumeKernel::T:
    case VolumeKernel::Tbar: return -1.0 / (kPi * omega);
    case VolumeKernel::Pi:
    case VolumeKernel::PiPlusDefinition:
    case VolumeKernel::PiPlusPrinted: return 2.0 / (kPi * omega);
  }
  return 0.0;
}

// T, Pi:          alpha [g1] + beta [g2]
// Tbar, Pi+ (p):  [conj g1] conj(alpha) + [conj g2] conj(beta)
// Pi+ (d):        alpha [conj g1] conj(alpha) + beta [conj g2] conj(beta)
// with [z] the element of C_I. Pi+ (d) is G_q conj(S^-1) = -2 (...) rescaled onto the Pi coefficients.
Multivector kernel_from(VolumeKernel k, const Multivector& alpha, const Multivector& beta, const Multivector& I,
                        cplx g1, cplx g2) {
  auto el = [&I](cplx z) { return slice_element(z.real(), z.imag(), I); };
  switch (k) {
    case VolumeKernel::T:
    case VolumeKernel::Pi: return alpha * el(g1) + beta * el(g2);
    case VolumeKernel::Tbar:
    case VolumeKernel::PiPlusPrinted: return el(std::conj(g1)) * conjugate(alpha) + el(std::conj(g2)) * conjugate(beta);
    case VolumeKernel::PiPlusDefinition:
      return alpha * el(std::conj(g1)) * conjugate(alpha) + beta * el(std::conj(g2)) * conjugate(beta);
  }
  return Multivector(I.dim());
}

PointValue volume_point(VolumeKernel k, const GridField& f, const SlicePoint& q) {
  const AxialDomainQuadrature& d = f.domain();
  if (q.dim() != d.dim()) throw DimensionError("evaluation point dimension mismatch");
  const KernelFamily fam = family_of(k);
  const std::size_t S = d.num_dirs();
  std::vector<Multivector> A, B;
  for (std::size_t l = 0; l < S; ++l) {
    auto [alpha, beta] = alpha_beta(q.I, d.dir(l));
    A.push_back(alpha);
    B.push_back(beta);
  }
  const cplx zq(q.u, q.v);
  Multivector acc(d.dim());
  for (std::size_t j = 0; j < d.num_cells(); ++j) {
    const PlanarCell& c = d.cells()[j];
    const cplx zc(c.u, c.v);
    const cplx g1 = detail::cell_average(fam, zc - zq, d.hu(), d.hv());
    const cplx g2 = detail::cell_average(fam, zc - std::conj(zq), d.hu(), d.hv());
    for (std::size_t l = 0; l < S; ++l)
      acc += kernel_from(k, A[l], B[l], d.dir(l), g1, g2) * f.at(j, l) * (c.w * d.sigma(l));
  }
  return {acc * volume_scale(k, d.omega()), near_boundary(d, q.u, q.v)};
}

VolumeKernel volume_kernel_of(OpKind kind, PiPlusForm form) {
  switch (kind) {
    case OpKind::T: return VolumeKernel::T;
    case OpKind::Tbar: return VolumeKernel::Tbar;
    case OpKind::Pi: return VolumeKernel::Pi;
    case OpKind::PiPlus:
      return form == PiPlusForm::definition ? VolumeKernel::PiPlusDefinition : VolumeKernel::PiPlusPrinted;
    default: throw std::invalid_argument("not a volume operator");
  }
}

// Local Pi+ block C[k][l] (acts on f at the same planar cell).
std::vector<Multivector> pi_plus_block(const AxialDomainQuadrature& d, PiPlusForm form) {
  const std::size_t S = d.num_dirs();
  const int m = d.dim();
  std::vector<Multivector> C(S * S, Multivector(m));
  for (std::size_t k = 0; k < S; ++k) {
    const Multivector& J = d.dir(k);
    if (form == PiPlusForm::definition) {
      for (std::size_t l = 0; l < S; ++l) {
        const auto [alpha, beta] = alpha_beta(J, d.dir(l));
        C[k * S + l] = beta * conjugate(alpha) * (2.0 * d.sigma(l) / d.omega());
      }
    } else {
      for (std::size_t l = 0; l < S; ++l) {
        if (!d.upper(l)) continue;
        const auto [alpha, beta] = alpha_beta(J, d.dir(l));
        C[k * S + l] += conjugate(alpha) * (d.sigma(l) / d.omega());
        C[k * S + d.antipode(l)] += conjugate(beta) * (d.sigma(l) / d.omega());
      }
      C[k * S + k][0] -= 0.5;
    }
  }
  return C;
}

std::mutex& bank_mutex() {
  static std::mutex mtx;
  return mtx;
}

std::shared_ptr<const PlanarKernelBank> kernel_bank(const DomainPtr& d, KernelFamily fam) {
  static std::map<std::pair<const AxialDomainQuadrature*, int>,
                  std::pair<std::weak_ptr<const AxialDomainQuadrature>, std::weak_ptr<const PlanarKernelBank>>>
      cache;
  std::lock_guard<std::mutex> lock(bank_mutex());
  for (auto it = cache.begin(); it != cache.end();)
    it = it->second.first.expired() || it->second.second.expired() ? cache.erase(it) : std::next(it);
  const auto key = std::make_pair(d.get(), static_cast<int>(fam));
  auto it = cache.find(key);
  if (it != cache.end())
    if (auto b = it->second.second.lock()) return b;
  auto b = std::make_shared<const PlanarKernelBank>(*d, fam);
  cache[key] = {d, b};
  return b;
}

// Moment form of the volume operators. Inputs: M0, M1, Mv_1..Mv_m. Outputs: R0, R1, Rd_1..Rd_m, RJd_1..RJd_m.
// Result at (i, J): s (R0 + sum J_d Rd + J (R1 + sum J_d RJd)).
enum class MomentForm { slice_left, conj_right, g_conj };

MomentForm moment_form(OpKind kind, PiPlusForm form) {
  switch (kind) {
    case OpKind::T:
    case OpKind::Pi:
    case OpKind::F: return MomentForm::slice_left;
    case OpKind::Tbar:
    case OpKind::Fbar: return MomentForm::conj_right;
    case OpKind::PiPlus: return form == PiPlusForm::definition ? MomentForm::g_conj : MomentForm::conj_right;
    default: throw std::invalid_argument("no moment form for this operator");
  }
}

std::vector<PlanarKernelBank::Term> moment_terms(MomentForm form, int m) {
  std::vector<PlanarKernelBank::Term> t;
  const int R0 = 0, R1 = 1;
  auto Rd = [](int dd) { return 1 + dd; };
  auto RJd = [m](int dd) { return 1 + m + dd; };
  const int M0 = 0, M1 = 1;
  auto Mv = [](int dd) { return 1 + dd; };
  switch (form) {
    case MomentForm::slice_left:
      t = {{0, M0, R0, 1.0}, {1, M1, R0, 1.0}, {2, M0, R1, 1.0}, {3, M1, R1, 1.0}};
      break;
    case MomentForm::conj_right:
      t = {{0, M0, R0, 1.0}, {1, M1, R0, -1.0}, {2, M0, R1, -1.0}, {3, M1, R1, -1.0}};
      for (int dd = 1; dd <= m; ++dd) t.push_back({3, Mv(dd), Rd(dd), -2.0});
      break;
    case MomentForm::g_conj:
      t = {{0, M0, R0, 1.0}, {2, M0, R1, -1.0}};
      for (int dd = 1; dd <= m; ++dd) {
        t.push_back({3, Mv(dd), Rd(dd), -1.0});
        t.push_back({1, Mv(dd), RJd(dd), -1.0});
      }
      break;
  }
  return t;
}

double moment_scale(OpKind kind, PiPlusForm form, double omega) {
  switch (kind) {
    case OpKind::T:
    case OpKind::Tbar: return -1.0 / (kPi * omega);
    case OpKind::F:
    case OpKind::Fbar: return 1.0 / (kPi * omega);
    case OpKind::Pi: return 2.0 / (kPi * omega);
    case OpKind::PiPlus: return 2.0 / (kPi * omega);  // both forms, in terms of the Pi coefficients
    default: return 0.0;
  }
  (void)form;
}

// M0 = sum sigma h, M1 = sum sigma I h, Mv_d = sum sigma I_d h over the sphere nodes of one planar slot.
void sphere_moments(const AxialDomainQuadrature& d, const Algebra& alg, const double* h, double scale,
                    std::vector<double*>& M) {
  const std::size_t nb = alg.size();
  const int m = d.dim();
  for (std::size_t l = 0; l < d.num_dirs(); ++l) {
    const double* hl = h + l * nb;
    const double sg = d.sigma(l) * scale;
    const double* I = d.dir_components(l);
    for (std::size_t b = 0; b < nb; ++b) M[0][b] += sg * hl[b];
    vec_left_acc(alg, I, hl, M[1], sg);
    for (int dd = 1; dd <= m; ++dd) {
      const double c = sg * I[dd - 1];
      if (c == 0.0) continue;
      for (std::size_t b = 0; b < nb; ++b) M[1 + dd][b] += c * hl[b];
    }
  }
}

// Combine the R arrays of one planar slot into the output at every sphere node.
void emit_outputs(const AxialDomainQuadrature& d, const Algebra& alg, const std::vector<const double*>& R, double s,
                  double* out) {
  const std::size_t nb = alg.size();
  const int m = d.dim();
  std::vector<double> A(nb), B(nb);
  for (std::size_t k = 0; k < d.num_dirs(); ++k) {
    const double* J = d.dir_components(k);
    for (std::size_t b = 0; b < nb; ++b) {
      A[b] = R[0][b];
      B[b] = R[1][b];
    }
    for (int dd = 1; dd <= m; ++dd)
      for (std::size_t b = 0; b < nb; ++b) {
        A[b] += J[dd - 1] * R[1 + dd][b];
        B[b] += J[dd - 1] * R[1 + m + dd][b];
      }
    double* o = out + k * nb;
    for (std::size_t b = 0; b < nb; ++b) o[b] += s * A[b];
    vec_left_acc(alg, J, B.data(), o, s);
  }
}

}  // namespace

const char* kind_name(OpKind k) {
  switch (k) {
    case OpKind::T: return "T";
    case OpKind::Tbar: return "Tbar";
    case OpKind::F: return "F";
    case OpKind::Fbar: return "Fbar";
    case OpKind::Pi: return "Pi";
    case OpKind::PiPlus: return "PiPlus";
    case OpKind::Custom: return "Custom";
  }
  return "?";
}

double self_cell_pv(double hu, double hv) { return kPi - 4.0 * std::atan(hv / hu); }

PointValue teodorescu(const GridField& f, const SlicePoint& q) { return volume_point(VolumeKernel::T, f, q); }

PointValue conjugate_teodorescu(const GridField& f, const SlicePoint& q) {
  return volume_point(VolumeKernel::Tbar, f, q);
}

PointValue pi_op(const GridField& f, const SlicePoint& q) { return volume_point(VolumeKernel::Pi, f, q); }

PointValue pi_plus_op(const GridField& f, std::size_t node, PiPlusForm form) {
  const AxialDomainQuadrature& d = f.domain();
  const SlicePoint q = d.node_point(node);
  PointValue r = volume_point(
      form == PiPlusForm::definition ? VolumeKernel::PiPlusDefinition : VolumeKernel::PiPlusPrinted, f, q);
  const std::vector<Multivector> C = pi_plus_block(d, form);
  const std::size_t j = d.node_cell(node), k = d.node_dir(node), S = d.num_dirs();
  for (std::size_t l = 0; l < S; ++l) r.value += C[k * S + l] * f.at(j, l);
  return r;
}

PointValue cauchy_boundary(const PointFunction& f, const AxialDomainQuadrature& d, const SlicePoint& q,
                           bool conjugated) {
  const Multivector qm = q.point();
  Multivector acc(d.dim());
  for (const BoundaryPlanarNode& b : d.boundary())
    for (std::size_t l = 0; l < d.num_dirs(); ++l) {
      const Multivector& I = d.dir(l);
      const SlicePoint x(b.u, b.v, I);
      const Multivector S = slice_cauchy_kernel(qm, x.point());
      const Multivector n = boundary_normal(b, I, conjugated);
      acc += (conjugated ? conjugate(S) : S) * n * f(x) * (b.s * d.sigma(l));
    }
  return {acc * (1.0 / (kPi * d.omega())), near_boundary(d, q.u, q.v)};
}

namespace {

enum class SliceKernel { T, Tbar, Pi };

PointValue slice_sum(SliceKernel k, const PointFunction& f, const AxialDomainQuadrature& d, const Multivector& I,
                     double qu, double qv) {
  require_unit_vector(I, "slice direction");
  const KernelFamily fam = k == SliceKernel::Pi ? KernelFamily::beurling : KernelFamily::cauchy;
  const cplx zq(qu, qv);
  Multivector acc(d.dim());
  for (const PlanarCell& c : d.cells())
    for (int side : {1, -1}) {
      // the mirror copy u - vI is the point (u, v) of the slice through -I
      const SlicePoint x(c.u, c.v, I * static_cast<double>(side));
      cplx g = detail::cell_average(fam, cplx(c.u, side * c.v) - zq, d.hu(), d.hv());
      if (k == SliceKernel::Tbar) g = std::conj(g);
      acc += slice_element(g.real(), g.imag(), I) * f(x) * c.w;
    }
  const double s = k == SliceKernel::Pi ? 1.0 / kPi : -1.0 / (2.0 * kPi);
  return {acc * s, near_boundary(d, qu, std::abs(qv))};
}

}  // namespace

PointValue teodorescu_slice(const PointFunction& f, const AxialDomainQuadrature& d, const Multivector& I, double qu,
                            double qv) {
  return slice_sum(SliceKernel::T, f, d, I, qu, qv);
}

PointValue conjugate_teodorescu_slice(const PointFunction& f, const AxialDomainQuadrature& d, const Multivector& I,
                                      double qu, double qv) {
  return slice_sum(SliceKernel::Tbar, f, d, I, qu, qv);
}

PointValue pi_slice(const PointFunction& f, const AxialDomainQuadrature& d, const Multivector& I, double qu,
                    double qv) {
  return slice_sum(SliceKernel::Pi, f, d, I, qu, qv);
}

// ---------------------------------------------------------------------------

DiscreteOperator assemble(OpKind kind, DomainPtr domain, const OpOptions& opts) {
  if (!domain) throw std::invalid_argument("assemble needs a domain");
  if (kind == OpKind::Custom) throw std::invalid_argument("custom operators come from DiscreteOperator::from_dense");
  DiscreteOperator op;
  op.kind_ = kind;
  op.form_ = opts.pi_plus_form;
  op.domain_ = std::move(domain);
  op.opts_ = opts;
  if (kind == OpKind::T || kind == OpKind::Tbar)
    op.bank_ = kernel_bank(op.domain_, KernelFamily::cauchy);
  else if (kind == OpKind::Pi || kind == OpKind::PiPlus)
    op.bank_ = kernel_bank(op.domain_, KernelFamily::beurling);
  if (kind == OpKind::PiPlus) op.build_correction();
  return op;
}

void DiscreteOperator::build_correction() { correction_ = pi_plus_block(*domain_, form_); }

std::size_t DiscreteOperator::rows() const { return domain_->num_nodes(); }

std::size_t DiscreteOperator::cols() const {
  if (kind_ == OpKind::F || kind_ == OpKind::Fbar) return domain_->boundary().size() * domain_->num_dirs();
  return domain_->num_nodes();
}

Multivector DiscreteOperator::entry(std::size_t row, std::size_t col) const {
  const AxialDomainQuadrature& d = *domain_;
  if (row >= rows() || col >= cols()) throw std::out_of_range("operator entry out of range");
  if (!dense_.empty()) return Multivector::from_coeffs(d.dim(), &dense_[(row * cols() + col) * d.blades()]);
  if (kind_ == OpKind::Custom) throw std::logic_error("custom operator without entries");
  const SlicePoint q = d.node_point(row);
  if (kind_ == OpKind::F || kind_ == OpKind::Fbar) {
    const std::size_t S = d.num_dirs();
    const BoundaryPlanarNode& b = d.boundary()[col / S];
    const std::size_t l = col % S;
    const Multivector& I = d.dir(l);
    const Multivector Sk = slice_cauchy_kernel(q.point(), slice_element(b.u, b.v, I));
    const bool cj = kind_ == OpKind::Fbar;
    return (cj ? conjugate(Sk) : Sk) * boundary_normal(b, I, cj) * (b.s * d.sigma(l) / (kPi * d.omega()));
  }
  const VolumeKernel vk = volume_kernel_of(kind_, form_);
  const double s = volume_scale(vk, d.omega());
  const std::size_t j = d.node_cell(col), l = d.node_dir(col);
  const PlanarCell& c = d.cells()[j];
  const cplx zq(q.u, q.v), zc(c.u, c.v);
  const KernelFamily fam = family_of(vk);
  const cplx g1 = detail::cell_average(fam, zc - zq, d.hu(), d.hv());
  const cplx g2 = detail::cell_average(fam, zc - std::conj(zq), d.hu(), d.hv());
  const auto [alpha, beta] = alpha_beta(q.I, d.dir(l));
  return kernel_from(vk, alpha, beta, d.dir(l), g1, g2) * (s * c.w * d.sigma(l));
}

void DiscreteOperator::materialize() {
  if (!dense_.empty() || kind_ == OpKind::Custom) return;
  const std::size_t R = rows(), C = cols(), nb = domain_->blades();
  if (R * C > opts_.max_dense_entries)
    throw MemoryGuardError("dense assembly needs " + std::to_string(R * C) + " blocks, cap is " +
                           std::to_string(opts_.max_dense_entries));
  std::vector<double> dense(R * C * nb);
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t c = 0; c < C; ++c) {
      const Multivector e = entry(r, c);
      std::copy(e.data(), e.data() + nb, &dense[(r * C + c) * nb]);
    }
  dense_ = std::move(dense);
}

DiscreteOperator DiscreteOperator::from_dense(DomainPtr domain, const std::vector<Multivector>& entries) {
  DiscreteOperator op;
  op.kind_ = OpKind::Custom;
  op.domain_ = std::move(domain);
  const std::size_t n = op.domain_->num_nodes(), nb = op.domain_->blades();
  if (entries.size() != n * n) throw DimensionError("dense operator needs nodes^2 entries");
  op.dense_.resize(n * n * nb);
  for (std::size_t e = 0; e < entries.size(); ++e) {
    if (entries[e].dim() != op.domain_->dim()) throw DimensionError("entry dimension mismatch");
    std::copy(entries[e].data(), entries[e].data() + nb, &op.dense_[e * nb]);
  }
  return op;
}

GridField DiscreteOperator::apply_dense(const std::vector<double>& in) const {
  const AxialDomainQuadrature& d = *domain_;
  const Algebra& alg = Algebra::get(d.dim());
  const std::size_t nb = alg.size(), C = cols();
  GridField out(domain_);
  for (std::size_t r = 0; r < rows(); ++r) {
    double* o = out.data(r);
    for (std::size_t c = 0; c < C; ++c) {
      const double* a = &dense_[(r * C + c) * nb];
      const double* x = &in[c * nb];
      for (std::size_t p = 0; p < nb; ++p) {
        if (a[p] == 0.0) continue;
        for (std::size_t q = 0; q < nb; ++q) o[alg.product_index(p, q)] += alg.product_sign(p, q) * a[p] * x[q];
      }
    }
  }
  return out;
}

void DiscreteOperator::add_correction(const GridField& f, GridField& out) const {
  if (correction_.empty()) return;
  const AxialDomainQuadrature& d = *domain_;
  const std::size_t S = d.num_dirs();
  for (std::size_t j = 0; j < d.num_cells(); ++j)
    for (std::size_t k = 0; k < S; ++k) {
      Multivector acc = out.at(j, k);
      for (std::size_t l = 0; l < S; ++l) acc += correction_[k * S + l] * f.at(j, l);
      out.set(d.node(j, k), acc);
    }
}

GridField DiscreteOperator::apply(const GridField& f) const {
  if (kind_ == OpKind::F || kind_ == OpKind::Fbar)
    throw std::invalid_argument("boundary operators take boundary values (apply_boundary)");
  if (f.size() != rows() || f.blades() != domain_->blades())
    throw DimensionError("field does not live on the operator's domain");
  GridField out = dense_.empty() ? apply_structured(f) : apply_dense(f.raw());
  add_correction(f, out);
  return out;
}

GridField DiscreteOperator::apply_structured(const GridField& f) const {
  const AxialDomainQuadrature& d = *domain_;
  const Algebra& alg = Algebra::get(d.dim());
  const int m = d.dim();
  const std::size_t nb = alg.size();
  const std::size_t G = static_cast<std::size_t>(d.nu()) * d.nv();
  const MomentForm mf = moment_form(kind_, form_);
  const auto terms = moment_terms(mf, m);

  // cell-weighted sphere moments per grid slot
  const std::size_t nM = 2 + m, nR = 2 + 2 * m;
  std::vector<std::vector<double>> Mw(nM, std::vector<double>(G * nb));
  for (std::size_t j = 0; j < d.num_cells(); ++j) {
    const PlanarCell& c = d.cells()[j];
    const std::size_t g = (static_cast<std::size_t>(c.b) * d.nu() + c.a) * nb;
    std::vector<double*> pw(nM);
    for (std::size_t t = 0; t < nM; ++t) pw[t] = &Mw[t][g];
    sphere_moments(d, alg, f.data(d.node(j, 0)), c.w, pw);
  }
  std::vector<std::vector<double>> R(nR, std::vector<double>(G * nb));
  std::vector<const double*> in(nM);
  std::vector<double*> outp(nR);
  for (std::size_t t = 0; t < nM; ++t) in[t] = Mw[t].data();
  for (std::size_t t = 0; t < nR; ++t) outp[t] = R[t].data();
  bank_->apply(in, nb, terms, outp, false);

  const double s = moment_scale(kind_, form_, d.omega());
  GridField out(domain_);
  for (std::size_t j = 0; j < d.num_cells(); ++j) {
    const PlanarCell& c = d.cells()[j];
    const std::size_t g = (static_cast<std::size_t>(c.b) * d.nu() + c.a) * nb;
    std::vector<const double*> rc(nR);
    for (std::size_t t = 0; t < nR; ++t) rc[t] = &R[t][g];
    emit_outputs(d, alg, rc, s, out.data(d.node(j, 0)));
  }
  return out;
}

bool DiscreteOperator::has_adjoint() const {
  if (kind_ == OpKind::Custom) return true;
  if (kind_ == OpKind::T || kind_ == OpKind::Pi) return true;
  return !dense_.empty() && kind_ == OpKind::Tbar;
}

GridField DiscreteOperator::apply_adjoint(const GridField& g) const {
  if (!has_adjoint()) throw std::logic_error(std::string("no adjoint available for ") + kind_name(kind_));
  const AxialDomainQuadrature& d = *domain_;
  const Algebra& alg = Algebra::get(d.dim());
  const std::size_t nb = alg.size(), S = d.num_dirs();
  if (!dense_.empty()) {
    GridField out(domain_);
    const std::size_t N = rows();
    for (std::size_t r = 0; r < N; ++r) {
      const double* x = g.data(r);
      const double mr = d.dmu(r);
      for (std::size_t c = 0; c < N; ++c) {
        const double* a = &dense_[(r * N + c) * nb];
        double* o = out.data(c);
        const double ratio = mr / d.dmu(c);
        for (std::size_t p = 0; p < nb; ++p) {
          if (a[p] == 0.0) continue;
          const double ap = ratio * alg.conjugation_sign(p) * a[p];
          for (std::size_t q = 0; q < nb; ++q) o[alg.product_index(p, q)] += alg.product_sign(p, q) * ap * x[q];
        }
      }
    }
    return out;
  }
  // slice-left form: A* g (j, I) = s (P0 + I P1),
  // P0 = sum_i w_i (c0 N0 - c2 N1), P1 = sum_i w_i (-c1 N0 + c3 N1), N0 = sum sigma g, N1 = sum sigma J g
  const std::size_t G = static_cast<std::size_t>(d.nu()) * d.nv();
  std::vector<std::vector<double>> Nw(2, std::vector<double>(G * nb));
  for (std::size_t i = 0; i < d.num_cells(); ++i) {
    const PlanarCell& c = d.cells()[i];
    const std::size_t gi = (static_cast<std::size_t>(c.b) * d.nu() + c.a) * nb;
    for (std::size_t k = 0; k < S; ++k) {
      const double* gk = g.data(d.node(i, k));
      const double sg = d.sigma(k) * c.w;
      for (std::size_t b = 0; b < nb; ++b) Nw[0][gi + b] += sg * gk[b];
      vec_left_acc(alg, d.dir_components(k), gk, &Nw[1][gi], sg);
    }
  }
  const std::vector<PlanarKernelBank::Term> terms = {{0, 0, 0, 1.0}, {2, 1, 0, -1.0}, {1, 0, 1, -1.0}, {3, 1, 1, 1.0}};
  std::vector<std::vector<double>> P(2, std::vector<double>(G * nb));
  bank_->apply({Nw[0].data(), Nw[1].data()}, nb, terms, {P[0].data(), P[1].data()}, true);

  const double s = moment_scale(kind_, form_, d.omega());
  GridField out(domain_);
  for (std::size_t j = 0; j < d.num_cells(); ++j) {
    const PlanarCell& c = d.cells()[j];
    const std::size_t gj = (static_cast<std::size_t>(c.b) * d.nu() + c.a) * nb;
    const double* pp[2] = {&P[0][gj], &P[1][gj]};
    for (std::size_t l = 0; l < S; ++l) {
      double* o = out.data(d.node(j, l));
      for (std::size_t b = 0; b < nb; ++b) o[b] += s * pp[0][b];
      vec_left_acc(alg, d.dir_components(l), pp[1], o, s);
    }
  }
  return out;
}

GridField DiscreteOperator::apply_boundary(const std::vector<Multivector>& fb) const {
  if (kind_ != OpKind::F && kind_ != OpKind::Fbar) throw std::invalid_argument("not a boundary operator");
  const AxialDomainQuadrature& d = *domain_;
  const Algebra& alg = Algebra::get(d.dim());
  const int m = d.dim();
  const std::size_t nb = alg.size(), S = d.num_dirs();
  if (fb.size() != cols()) throw DimensionError("boundary value count mismatch");
  if (!dense_.empty()) {
    std::vector<double> in(cols() * nb);
    for (std::size_t c = 0; c < cols(); ++c) std::copy(fb[c].data(), fb[c].data() + nb, &in[c * nb]);
    return apply_dense(in);
  }
  const MomentForm mf = moment_form(kind_, form_);
  const auto terms = moment_terms(mf, m);
  const std::size_t nM = 2 + m, nR = 2 + 2 * m;
  const auto& bnodes = d.boundary();
  // boundary moments of h = n f
  std::vector<double> H(bnodes.size() * nM * nb, 0.0);
  std::vector<double> h(S * nb);
  for (std::size_t bi = 0; bi < bnodes.size(); ++bi) {
    const BoundaryPlanarNode& b = bnodes[bi];
    for (std::size_t l = 0; l < S; ++l) {
      const Multivector hl = boundary_normal(b, d.dir(l), kind_ == OpKind::Fbar) * fb[bi * S + l];
      std::copy(hl.data(), hl.data() + nb, &h[l * nb]);
    }
    std::vector<double*> M(nM);
    for (std::size_t t = 0; t < nM; ++t) M[t] = &H[(bi * nM + t) * nb];
    sphere_moments(d, alg, h.data(), b.s, M);
  }
  const double s = moment_scale(kind_, form_, d.omega());
  GridField out(domain_);
  std::vector<double> R(nR * nb);
  for (std::size_t i = 0; i < d.num_cells(); ++i) {
    const PlanarCell& c = d.cells()[i];
    std::fill(R.begin(), R.end(), 0.0);
    for (std::size_t bi = 0; bi < bnodes.size(); ++bi) {
      const BoundaryPlanarNode& b = bnodes[bi];
      double cf[4];
      detail::split_coefficients(detail::family_value(KernelFamily::cauchy, cplx(b.u - c.u, b.v - c.v)),
                                 detail::family_value(KernelFamily::cauchy, cplx(b.u - c.u, b.v + c.v)), cf);
      for (const auto& t : terms) {
        const double cc = t.sign * cf[t.coef];
        const double* src = &H[(bi * nM + t.input) * nb];
        double* dst = &R[t.output * nb];
        for (std::size_t p = 0; p < nb; ++p) dst[p] += cc * src[p];
      }
    }
    std::vector<const double*> rc(nR);
    for (std::size_t t = 0; t < nR; ++t) rc[t] = &R[t * nb];
    emit_outputs(d, alg, rc, s, out.data(d.node(i, 0)));
  }
  return out;
}

GridField DiscreteOperator::apply_boundary(const PointFunction& f) const {
  const AxialDomainQuadrature& d = *domain_;
  std::vector<Multivector> fb;
  fb.reserve(cols());
  for (const BoundaryPlanarNode& b : d.boundary())
    for (std::size_t l = 0; l < d.num_dirs(); ++l) fb.push_back(f(SlicePoint(b.u, b.v, d.dir(l))));
  return apply_boundary(fb);
}

GridField cauchy_boundary_field(const PointFunction& f, const DomainPtr& domain, bool conjugated) {
  return assemble(conjugated ? OpKind::Fbar : OpKind::F, domain).apply_boundary(f);
}

// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'S', 'L', 'I', 'C', 'E', 'P', 'I', '1'};

template <class T>
void put(std::ofstream& os, T v) {
  if constexpr (std::endian::native == std::endian::big) {
    char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    std::reverse(b, b + sizeof(T));
    os.write(b, sizeof(T));
  } else {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
  }
}

template <class T>
T get(std::ifstream& is) {
  char b[sizeof(T)];
  is.read(b, sizeof(T));
  if (!is) throw std::runtime_error("truncated operator dump");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

}  // namespace

void DiscreteOperator::dump(const std::string& path) const {
  if (dense_.empty()) throw std::logic_error("dump requires a materialized operator");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  os.write(kMagic, sizeof(kMagic));
  put<std::int32_t>(os, static_cast<std::int32_t>(kind_));
  put<std::int32_t>(os, domain_->dim());
  put<std::uint64_t>(os, rows());
  put<std::uint64_t>(os, cols());
  put<std::uint64_t>(os, domain_->num_dirs());
  put<std::int32_t>(os, static_cast<std::int32_t>(form_));
  put<std::uint64_t>(os, correction_.size());
  for (double x : dense_) put<double>(os, x);
  for (const Multivector& c : correction_)
    for (std::size_t b = 0; b < c.size(); ++b) put<double>(os, c[b]);
}

DiscreteOperator DiscreteOperator::load(const std::string& path, DomainPtr domain) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kMagic, 8) != 0) throw std::runtime_error("not an operator dump: " + path);
  DiscreteOperator op;
  op.kind_ = static_cast<OpKind>(get<std::int32_t>(is));
  const int m = get<std::int32_t>(is);
  const auto rows = get<std::uint64_t>(is), cols = get<std::uint64_t>(is), dirs = get<std::uint64_t>(is);
  op.form_ = static_cast<PiPlusForm>(get<std::int32_t>(is));
  const auto ncorr = get<std::uint64_t>(is);
  op.domain_ = std::move(domain);
  if (m != op.domain_->dim() || rows != op.rows() || cols != op.cols() || dirs != op.domain_->num_dirs())
    throw DimensionError("operator dump does not match the domain");
  const std::size_t nb = op.domain_->blades();
  op.dense_.resize(rows * cols * nb);
  for (double& x : op.dense_) x = get<double>(is);
  op.correction_.assign(ncorr, Multivector(m));
  for (Multivector& c : op.correction_)
    for (std::size_t b = 0; b < nb; ++b) c[b] = get<double>(is);
  return op;
}

Multivector adjoint_G_star(const GridField& f, std::size_t j, std::size_t k) {
  const AxialDomainQuadrature& d = f.domain();
  const PlanarCell& c = d.cells()[j];
  return -apply_G_fd(f, j, k, false) + d.dir(k) * f.at(j, k) * ((d.dim() - 1) / c.v);
}

}  // namespace slicepi
