#pragma once

#include <stdexcept>
#include <utility>

#include "slicepi/clifford.hpp"
#include "slicepi/geometry.hpp"

namespace slicepi {

struct SingularKernelError : std::domain_error {
  using std::domain_error::domain_error;
};

struct KernelValue {
  Multivector value;
  bool singular_flag = false;
};

// x in [q]: same real part and same vector modulus, relative to max(1,|q|,|x|).
bool on_singular_sphere(const Multivector& q, const Multivector& x, double tol = 1e-12);

// -(q^2 - 2 x0 q + |x|^2)^{-1} (q - conj x)
Multivector slice_cauchy_kernel(const Multivector& q, const Multivector& x);
// 2 S^{-1}(q,x) / (omega_{m-1} v^{m-1})
Multivector cauchy_kernel_K(const Multivector& q, const SlicePoint& x);
// a^{-2} (-q^2 + 2 q conj(x) - 2 x0 conj(x) + |x|^2), a = q^2 - 2 x0 q + |x|^2.
// Gbar_q S^{-1}(q,x) = -2 k(q,x); on a common slice k = -(x-q)^{-2}.
Multivector pi_kernel(const Multivector& q, const Multivector& x);
// (-conj(q)^2 + 2 x conj(q) - 2 x0 x + |x|^2) a0^{-2}, a0 = conj(q)^2 - 2 x0 conj(q) + |x|^2; equals conj(k).
Multivector pi_plus_kernel(const Multivector& q, const Multivector& x);
// G_q conj(S^{-1}(q,x)) = 2 (alpha d1 conj(alpha) + beta d2 conj(beta)),
// d1 = conj((x - q_I)^{-2}), d2 = conj((x - q_{-I})^{-2}), I = I_x. Requires q off the real axis.
Multivector g_conj_cauchy_kernel(const Multivector& q, const Multivector& x);

// Non-throwing variants carrying the singular flag.
KernelValue try_slice_cauchy_kernel(const Multivector& q, const Multivector& x);
KernelValue try_pi_kernel(const Multivector& q, const Multivector& x);

// alpha = (1 - I_q I)/2, beta = (1 + I_q I)/2
std::pair<Multivector, Multivector> alpha_beta(const Multivector& I_q, const Multivector& I);
std::pair<Multivector, Multivector> alpha_beta(const SlicePoint& q, const Multivector& I);

// Element a + b I of the slice C_I.
Multivector slice_element(double a, double b, const Multivector& I);

}  // namespace slicepi
