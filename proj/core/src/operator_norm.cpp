#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "slicepi/integral_ops.hpp"

namespace slicepi {

namespace {

void check_same_domain(const GridField& f, const GridField& g) {
  if (f.size() != g.size() || f.blades() != g.blades()) throw DimensionError("grid fields live on different domains");
}

double weighted_dot(const GridField& f, const GridField& g) {
  const AxialDomainQuadrature& d = f.domain();
  const std::size_t nb = f.blades();
  const std::vector<double>& a = f.raw();
  const std::vector<double>& b = g.raw();
  double s = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    double t = 0.0;
    for (std::size_t k = n * nb; k < (n + 1) * nb; ++k) t += a[k] * b[k];
    s += d.dmu(n) * t;
  }
  return s;
}

double weighted_sq(const GridField& f) {
  const AxialDomainQuadrature& d = f.domain();
  double s = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double* p = f.data(n);
    double a = 0.0;
    for (std::size_t b = 0; b < f.blades(); ++b) a += p[b] * p[b];
    s += d.dmu(n) * a;
  }
  return s;
}

}  // namespace

Multivector weighted_inner(const GridField& f, const GridField& g) {
  check_same_domain(f, g);
  const AxialDomainQuadrature& d = f.domain();
  Multivector acc(d.dim());
  for (std::size_t n = 0; n < f.size(); ++n) acc += conjugate(f.at(n)) * g.at(n) * d.dmu(n);
  return acc;
}

double lp_norm(const GridField& f, double p, Measure measure) {
  if (!(p >= 1.0)) throw std::invalid_argument("L^p norm needs p >= 1");
  if (std::isinf(p)) return sup_norm(f);
  const AxialDomainQuadrature& d = f.domain();
  double s = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double w = measure == Measure::dmu ? d.dmu(n) : d.dV(n);
    s += w * std::pow(norm(f.at(n)), p);
  }
  return std::pow(s, 1.0 / p);
}

double sup_norm(const GridField& f) {
  double s = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) s = std::max(s, norm(f.at(n)));
  return s;
}

namespace {

GridField random_unit(const DiscreteOperator& op, unsigned seed) {
  GridField x(op.domain());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (double& v : x.raw()) v = uni(rng);
  x *= 1.0 / std::sqrt(weighted_sq(x));
  return x;
}

NormResult power_norm(const DiscreteOperator& op, const NormOptions& opts) {
  GridField x = random_unit(op, opts.seed);
  double lambda = 0.0, prev = -1.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    const GridField y = op.apply(x);
    lambda = weighted_sq(y);  // <x, A*A x> with |x| = 1
    if (lambda == 0.0) return {0.0, it};
    if (prev >= 0.0 && std::abs(lambda - prev) <= opts.tol * lambda) return {std::sqrt(lambda), it};
    prev = lambda;
    x = op.apply_adjoint(y);
    x *= 1.0 / std::sqrt(weighted_sq(x));
  }
  throw NonConvergenceError("power iteration did not converge", std::sqrt(lambda));
}

// Lanczos on A*A without reorthogonalization: only the top Ritz value is
// needed and ghost copies of converged values do not move it.
NormResult lanczos_norm(const DiscreteOperator& op, const NormOptions& opts) {
  GridField q = random_unit(op, opts.seed);
  GridField q_prev(op.domain());
  std::vector<double> alpha, beta;
  double theta = 0.0, prev = -1.0;
  int stable = 0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    GridField w = op.apply_adjoint(op.apply(q));
    const double a = weighted_dot(q, w);
    alpha.push_back(a);
    w -= a * q;
    if (!beta.empty()) w -= beta.back() * q_prev;
    const double b = std::sqrt(std::max(weighted_sq(w), 0.0));

    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), static_cast<Eigen::Index>(alpha.size()));
    Eigen::VectorXd sub = Eigen::Map<Eigen::VectorXd>(beta.data(), static_cast<Eigen::Index>(beta.size()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const Eigen::Index top = diag.size() - 1;
    theta = std::max(es.eigenvalues()(top), 0.0);
    const double resid = b * std::abs(es.eigenvectors()(top, top));

    if (theta == 0.0 && b == 0.0) return {0.0, it};
    if (b <= 1e-14 * std::max(theta, 1e-300)) return {std::sqrt(theta), it};
    // residual bound plus a few consecutive steps without movement of the top value
    const bool still = prev >= 0.0 && std::abs(theta - prev) <= opts.tol * theta;
    stable = still ? stable + 1 : 0;
    if (stable >= 3 && resid <= std::sqrt(opts.tol) * theta) return {std::sqrt(theta), it};
    prev = theta;

    beta.push_back(b);
    q_prev = std::move(q);
    q = std::move(w);
    q *= 1.0 / b;
  }
  throw NonConvergenceError("Lanczos iteration did not converge", std::sqrt(theta));
}

}  // namespace

NormResult operator_norm(const DiscreteOperator& op, const NormOptions& opts) {
  if (op.kind() == OpKind::F || op.kind() == OpKind::Fbar)
    throw std::invalid_argument("operator norm is defined for volume operators");
  if (!op.has_adjoint()) throw std::invalid_argument(std::string("no adjoint for ") + kind_name(op.kind()));
  return opts.method == NormMethod::power ? power_norm(op, opts) : lanczos_norm(op, opts);
}

double c_prime_integrand(double gamma) {
  const double c = std::abs(std::cos(gamma));
  const double l = std::log(1.0 / c);
  const double s = l * l + 0.25 * std::numbers::pi * std::numbers::pi;
  return s * s;
}

double theoretical_C_prime() {
  // Four symmetric quarters; in t = pi/2 - gamma the log singularity sits at t = 0.
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto f = [](double t) {
    const double l = -std::log(std::sin(t));
    const double s = l * l + 0.25 * std::numbers::pi * std::numbers::pi;
    return s * s;
  };
  const double quarter = integrator.integrate(f, 0.0, 0.5 * std::numbers::pi);
  return std::sqrt(4.0 * quarter);
}

double theoretical_C(double p, int m) {
  if (!(p > 1.0)) throw std::invalid_argument("theoretical_C needs p > 1");
  static const double cp = theoretical_C_prime();
  const double base = 4.0 * std::pow(2.0 * std::numbers::pi, 0.25) * std::sqrt(cp) / (sphere_area(m) * std::numbers::pi);
  return std::pow(base, 1.0 / p);
}

}  // namespace slicepi
