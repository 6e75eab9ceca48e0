#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "slicepi/integral_ops.hpp"
#include "slicepi/slice_functions.hpp"

namespace slicepi {

using BeltramiCoefficient = std::variant<Multivector, PolynomialSliceFunction, BumpSliceFunction>;

GridField sample(const DomainPtr& domain, const BeltramiCoefficient& f);

struct ConditionReport {
  double sup_f = 0.0;
  double pi_norm = 0.0;       // discrete ||Pi|| in L^2(dmu)
  double product = 0.0;       // sup|f| * ||Pi||
  bool contractive = false;   // product < 1
  double theoretical_C = 0.0; // C(2, m)
  double f_l2_mu = 0.0;       // ||f||_{L^2(dmu)}, the quantity in the printed condition
  double printed_product = 0.0;
};

ConditionReport check_contraction(const GridField& f, double pi_norm);
ConditionReport check_contraction(const BeltramiCoefficient& f, const DomainPtr& domain,
                                  const NormOptions& opts = {});

struct BeltramiProblem {
  BeltramiCoefficient f = Multivector(2);
  PolynomialSliceFunction phi;
  DomainPtr domain;
  double tol = 1e-10;
  int max_iter = 200;
  std::optional<GridField> h0;   // default start is zero
  double pi_norm = -1.0;         // reuse a measured ||Pi||; negative means measure it
  NormOptions norm_options{};
};

struct BeltramiSolution {
  GridField h;
  GridField omega;
  int iterations = 0;
  bool converged = false;
  std::vector<double> step_norms;             // ||h_k - h_{k-1}||, k = 1..K
  std::vector<double> contraction_estimates;  // step_k / step_{k-1}, k = 2..K
  double residual = 0.0;
  ConditionReport condition;
};

BeltramiSolution solve(const BeltramiProblem& problem);

// Relative L^2(dmu) residual of G w = f Gbar w over cells two steps from the grid edge.
double beltrami_residual(const GridField& omega, const GridField& f);

}  // namespace slicepi
