#pragma once

// Convolution engine for the planar part of the volume operators.
//
// Every volume kernel splits into an alpha part (x - q_I) and a beta part
// (x - q_{-I}) whose complex coefficients g1, g2 depend only on the planar
// offset u_j - u_i and on the two rows v_i, v_j.  g1, g2 are exact means of the
// planar kernel over the source cell (product integration), which also covers
// the principal value on the self cell.  The four real combinations
//   c0 = (g1r + g2r)/2, c1 = (g1i + g2i)/2, c2 = (g1i - g2i)/2, c3 = (g2r - g1r)/2
// are therefore Toeplitz in u and are applied row pair by row pair with FFTs.

#include <complex>
#include <cstddef>
#include <vector>

#include "slicepi/geometry.hpp"

namespace slicepi::detail {

enum class KernelFamily { cauchy, beurling };  // g(z) = 1/z  or  g(z) = -1/z^2

std::complex<double> family_value(KernelFamily fam, std::complex<double> z);
// Mean of g(z + w) over w in [-hu/2, hu/2] x [-hv/2, hv/2]; principal value when the cell contains 0.
std::complex<double> cell_average(KernelFamily fam, std::complex<double> z, double hu, double hv);
// c0..c3 from the alpha and beta coefficients.
void split_coefficients(std::complex<double> g1, std::complex<double> g2, double c[4]);

class PlanarKernelBank {
public:
  PlanarKernelBank(const AxialDomainQuadrature& d, KernelFamily fam);
  ~PlanarKernelBank();
  PlanarKernelBank(const PlanarKernelBank&) = delete;
  PlanarKernelBank& operator=(const PlanarKernelBank&) = delete;

  KernelFamily family() const { return fam_; }

  struct Term {
    int coef;     // 0..3
    int input;
    int output;
    double sign;
  };

  // Inputs and outputs are grid arrays [(b*nu + a)*nb + blade]. Outputs are accumulated into.
  // Forward:   Y_out(i) += sign * sum_j c(u_j - u_i; v_i, v_j) X_in(j)
  // Transpose: Y_out(j) += sign * sum_i c(u_j - u_i; v_i, v_j) X_in(i)
  void apply(const std::vector<const double*>& inputs, std::size_t nb, const std::vector<Term>& terms,
             const std::vector<double*>& outputs, bool transpose) const;

private:
  KernelFamily fam_;
  int nu_, nv_, len_, nc_;
  std::vector<std::complex<double>> spectra_;  // [coef][iv][jv][nc]
  void* fwd_ = nullptr;
  void* bwd_ = nullptr;
};

}  // namespace slicepi::detail
