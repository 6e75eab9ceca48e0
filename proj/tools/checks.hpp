#pragma once

// Measurements shared by the CLI suites and the acceptance binary. Every
// function returns raw errors; pass/fail thresholds belong to the caller.

#include <cstdint>
#include <random>
#include <vector>

#include "slicepi/beltrami.hpp"
#include "slicepi/integral_ops.hpp"
#include "slicepi/kernels.hpp"
#include "slicepi/slice_functions.hpp"

namespace slicepi::checks {

// max |value - ref| / max |ref| over the samples added
class RelErr {
public:
  void add(const Multivector& value, const Multivector& ref);
  double value() const;

private:
  double num_ = 0.0, den_ = 0.0;
};

// Ratio test under grid doubling. Errors at round-off level carry no rate and pass.
bool refines(double coarse, double fine, double min_ratio, double floor = 1e-10);

struct CheckPoint {
  double u, v;
  std::size_t k;  // sphere node
};

// Random interior points at least `margin` from the planar boundary, each on a random sphere node.
std::vector<CheckPoint> interior_points(const AxialDomainQuadrature& d, int count, double margin,
                                        std::uint64_t seed);

Multivector random_multivector(int m, std::mt19937_64& rng);
Multivector random_paravector(int m, std::mt19937_64& rng);
Multivector random_unit_vector(int m, std::mt19937_64& rng);

// Inputs reused across resolutions so refinement studies compare like with like.
struct TestFunctions {
  PolynomialSliceFunction poly;   // degree 3, random Clifford coefficients
  PolynomialSliceFunction anti;   // same coefficients in conj(q)
  SupportRect bump_support;
  SupportRect bump_support2;
  Multivector bump_coeff;
  Multivector bump_coeff2;
};
TestFunctions make_test_functions(int m, const PlanarRegion& region, std::uint64_t seed);

// ---- exact algebra ----
struct AlgebraErrors {
  double associativity = 0.0;
  double anti_automorphism = 0.0;
  double paravector_inverse = 0.0;  // x x^{-1} = x^{-1} x = 1 and x conj(x) = |x|^2
};
AlgebraErrors algebra_errors(int m, int cases, std::uint64_t seed);
double representation_error(int m, int pairs, std::uint64_t seed);
// (f * g)(q) against f(q) g(q) for real-coefficient f, where the product is pointwise.
double star_product_error(int m, int points, std::uint64_t seed);
// |conj(S^{-1}(q,x)) - S^{-1}(x,q)| / |S^{-1}(x,q)|, worst case
double kernel_symmetry_error(int m, int pairs, std::uint64_t seed);
// Gbar_q S^{-1}(q,x) by central differences against -2 k(q,x)
double pi_kernel_error(int m, int pairs, std::uint64_t seed);
// |k+(q,x) - conj(k(q,x))| / |k(q,x)|, worst case
double pi_plus_conj_error(int m, int pairs, std::uint64_t seed);

// ---- slice oracles on the disk pair D+ and its mirror inside C_I ----
struct SliceOracleErrors {
  double T = 0.0;   // T_{Omega_I} 1 against conj(q-c)/2 + R^2/(2(q-cbar))
  double Pi = 0.0;  // Pi_{Omega_I} 1 against -R^2/(q-cbar)^2
};
SliceOracleErrors slice_oracle_errors(const DomainPtr& disk_domain, int points, std::uint64_t seed);

// ---- identities on a full axial domain ----
struct BpfErrors {
  double bpf1_poly = 0.0, bpf1_bump = 0.0;
  double bpf2_poly = 0.0, bpf2_bump = 0.0;
};
BpfErrors bpf_errors(const DomainPtr& d, const TestFunctions& fn, const std::vector<CheckPoint>& pts);

struct InverseErrors {
  double gt_poly = 0.0, gt_bump = 0.0;  // G(T f) = f
  double pi_path = 0.0;                 // kernel-path Pi f = FD Gbar(T f)
  double pi_path_flipped = 0.0;         // same with the opposite kernel sign
};
InverseErrors inverse_errors(const DomainPtr& d, const TestFunctions& fn, const std::vector<CheckPoint>& pts);

struct IdentityErrors {
  double g_pi = 0.0;         // G(Pi f) = Gbar f, polynomial f
  double pi_g = 0.0;         // Pi(G f) = Gbar f, bump f
  double gbar_piplus = 0.0;  // Gbar(Pi+ f) = G f, polynomial f in conj(q)
  double ker_g = 0.0;        // G(Pi f) = 0 for f in ker Gbar, relative to |Pi f|
};
IdentityErrors identity_errors(const DomainPtr& d, const TestFunctions& fn, const std::vector<CheckPoint>& pts,
                               PiPlusForm form = PiPlusForm::definition);

struct PiInverseErrors {
  double piplus_pi = 0.0;  // Pi+(Pi f) = f, bump f
  double pi_piplus = 0.0;  // Pi(Pi+ f) = f, bump f
};
PiInverseErrors pi_inverse_errors(const DomainPtr& d, const TestFunctions& fn, const std::vector<CheckPoint>& pts,
                                  PiPlusForm form = PiPlusForm::definition);

struct AdjointErrors {
  double t_self = 0.0;  // <T f, g> = <f, T g>
  double g_star = 0.0;  // <G f, g> = <f, G* g>
};
AdjointErrors adjoint_errors(const DomainPtr& d, const TestFunctions& fn);

// ---- Beltrami runs ----
struct BeltramiCheck {
  double pi_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  double max_ratio = 0.0;       // largest measured step ratio
  double residual = 0.0;
  double restart_gap = 0.0;     // relative L2(dmu) distance of h from a random restart
  double zero_residual = 0.0;   // f = 0 run
  int zero_iterations = 0;
  double zero_h = 0.0;          // sup |h| for f = 0
  double zero_phi_gap = 0.0;    // sup |omega - phi| for f = 0
};
// Real constant f with sup|f| ||Pi|| = product, phi(q) = q.
BeltramiCheck beltrami_check(const DomainPtr& d, double product, std::uint64_t seed, double norm_tol = 1e-8);

}  // namespace slicepi::checks
