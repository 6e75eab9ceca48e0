#include "planar_conv.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace slicepi::detail {

namespace {

using cplx = std::complex<double>;

std::mutex& planner_mutex() {
  static std::mutex mtx;
  return mtx;
}

// E[w^n] for w uniform on [-a,a] x [-b,b], n even.
double even_moment(int n, double a, double b) {
  double s = 0.0, binom = 1.0;
  for (int k = 0; 2 * k <= n; ++k) {
    const int j = n - 2 * k;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    s += binom * sign * std::pow(a, j) / (j + 1) * std::pow(b, 2 * k) / (2 * k + 1);
    binom = binom * (n - 2 * k) * (n - 2 * k - 1) / ((2 * k + 1) * (2 * k + 2));
  }
  return s;
}

// log(r) - log(p) along the segment p -> r, which must avoid 0
cplx log_step(cplx p, cplx r) { return std::log(r / p); }

}  // namespace

cplx family_value(KernelFamily fam, cplx z) { return fam == KernelFamily::cauchy ? 1.0 / z : -1.0 / (z * z); }

cplx cell_average(KernelFamily fam, cplx z, double hu, double hv) {
  const double a = 0.5 * hu, b = 0.5 * hv;
  if (std::abs(z) > 6.0 * std::max(hu, hv)) {
    // Taylor series of g about the cell centre; odd moments vanish.
    cplx acc = 0.0, zn = fam == KernelFamily::cauchy ? 1.0 / z : 1.0 / (z * z);
    const cplx z2inv = 1.0 / (z * z);
    for (int n = 0; n <= 14; n += 2) {
      const double mom = even_moment(n, a, b);
      acc += (fam == KernelFamily::cauchy ? 1.0 : -(n + 1.0)) * mom * zn;
      zn *= z2inv;
    }
    return acc;
  }
  // Pompeiu: int_R d_wbar F dA = (1/2i) oint F dw with F = conj(w)/w (1/w) or -conj(w)/w^2 (-1/w^2).
  const cplx w[4] = {z + cplx(-a, -b), z + cplx(a, -b), z + cplx(a, b), z + cplx(-a, b)};
  cplx total = 0.0;
  for (int e = 0; e < 4; ++e) {
    const cplx p = w[e], r = w[(e + 1) % 4];
    const bool horizontal = (e % 2 == 0);
    if (horizontal) {
      const double y = p.imag();  // conj(w) = w - 2iy
      if (fam == KernelFamily::cauchy)
        total += (r - p) - (y == 0.0 ? cplx(0.0) : cplx(0.0, 2.0 * y) * log_step(p, r));
      else
        total += -log_step(p, r) - cplx(0.0, 2.0 * y) * (1.0 / r - 1.0 / p);
    } else {
      const double x = p.real();  // conj(w) = 2x - w
      if (fam == KernelFamily::cauchy)
        total += (x == 0.0 ? cplx(0.0) : 2.0 * x * log_step(p, r)) - (r - p);
      else
        total += 2.0 * x * (1.0 / r - 1.0 / p) + log_step(p, r);
    }
  }
  return total / cplx(0.0, 2.0 * hu * hv);
}

void split_coefficients(cplx g1, cplx g2, double c[4]) {
  c[0] = 0.5 * (g1.real() + g2.real());
  c[1] = 0.5 * (g1.imag() + g2.imag());
  c[2] = 0.5 * (g1.imag() - g2.imag());
  c[3] = 0.5 * (g2.real() - g1.real());
}

PlanarKernelBank::PlanarKernelBank(const AxialDomainQuadrature& d, KernelFamily fam)
    : fam_(fam), nu_(d.nu()), nv_(d.nv()), len_(2 * d.nu()), nc_(d.nu() + 1) {
  std::vector<double> buf(len_);
  std::vector<std::complex<double>> out(nc_);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_r2c_1d(len_, buf.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    bwd_ = fftw_plan_dft_c2r_1d(len_, reinterpret_cast<fftw_complex*>(out.data()), buf.data(),
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  spectra_.assign(static_cast<std::size_t>(4) * nv_ * nv_ * nc_, {});
  std::vector<double> coef(static_cast<std::size_t>(4) * len_);
  for (int iv = 0; iv < nv_; ++iv)
    for (int jv = 0; jv < nv_; ++jv) {
      const double vi = d.cell_center_v(iv), vj = d.cell_center_v(jv);
      std::fill(coef.begin(), coef.end(), 0.0);
      for (int dd = -(nu_ - 1); dd <= nu_ - 1; ++dd) {
        const double du = -dd * d.hu();  // u_j - u_i for offset i - j = dd
        double c[4];
        split_coefficients(cell_average(fam, {du, vj - vi}, d.hu(), d.hv()),
                           cell_average(fam, {du, vj + vi}, d.hu(), d.hv()), c);
        const int slot = (dd + len_) % len_;
        for (int t = 0; t < 4; ++t) coef[static_cast<std::size_t>(t) * len_ + slot] = c[t];
      }
      for (int t = 0; t < 4; ++t) {
        auto* dst = &spectra_[((static_cast<std::size_t>(t) * nv_ + iv) * nv_ + jv) * nc_];
        fftw_execute_dft_r2c(static_cast<fftw_plan>(fwd_), &coef[static_cast<std::size_t>(t) * len_],
                             reinterpret_cast<fftw_complex*>(dst));
      }
    }
}

PlanarKernelBank::~PlanarKernelBank() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (fwd_) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  if (bwd_) fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void PlanarKernelBank::apply(const std::vector<const double*>& inputs, std::size_t nb, const std::vector<Term>& terms,
                             const std::vector<double*>& outputs, bool transpose) const {
  const std::size_t nc = nc_;
  std::vector<double> buf(len_);
  // row spectra of every input: [input][row][blade][nc]
  std::vector<std::complex<double>> xh(inputs.size() * nv_ * nb * nc);
  for (std::size_t x = 0; x < inputs.size(); ++x)
    for (int r = 0; r < nv_; ++r)
      for (std::size_t b = 0; b < nb; ++b) {
        std::fill(buf.begin(), buf.end(), 0.0);
        bool any = false;
        for (int a = 0; a < nu_; ++a) {
          buf[a] = inputs[x][(static_cast<std::size_t>(r) * nu_ + a) * nb + b];
          any = any || buf[a] != 0.0;
        }
        auto* dst = &xh[((x * nv_ + r) * nb + b) * nc];
        if (any)
          fftw_execute_dft_r2c(static_cast<fftw_plan>(fwd_), buf.data(), reinterpret_cast<fftw_complex*>(dst));
      }

  std::vector<std::complex<double>> yh(outputs.size() * nv_ * nb * nc);
  for (const Term& t : terms)
    for (int o = 0; o < nv_; ++o)
      for (int n = 0; n < nv_; ++n) {
        const std::size_t pair = transpose ? (static_cast<std::size_t>(t.coef) * nv_ + n) * nv_ + o
                                           : (static_cast<std::size_t>(t.coef) * nv_ + o) * nv_ + n;
        const std::complex<double>* ck = &spectra_[pair * nc];
        for (std::size_t b = 0; b < nb; ++b) {
          const std::complex<double>* xs = &xh[((t.input * nv_ + n) * nb + b) * nc];
          std::complex<double>* ys = &yh[((t.output * nv_ + o) * nb + b) * nc];
          if (transpose)
            for (std::size_t w = 0; w < nc; ++w) ys[w] += t.sign * std::conj(ck[w]) * xs[w];
          else
            for (std::size_t w = 0; w < nc; ++w) ys[w] += t.sign * ck[w] * xs[w];
        }
      }

  const double scale = 1.0 / len_;
  for (std::size_t y = 0; y < outputs.size(); ++y)
    for (int r = 0; r < nv_; ++r)
      for (std::size_t b = 0; b < nb; ++b) {
        auto* src = &yh[((y * nv_ + r) * nb + b) * nc];
        fftw_execute_dft_c2r(static_cast<fftw_plan>(bwd_), reinterpret_cast<fftw_complex*>(src), buf.data());
        for (int a = 0; a < nu_; ++a) outputs[y][(static_cast<std::size_t>(r) * nu_ + a) * nb + b] += scale * buf[a];
      }
}

}  // namespace slicepi::detail
