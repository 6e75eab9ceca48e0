#include "slicepi/clifford.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <ostream>
#include <sstream>

namespace slicepi {

namespace {

void check_dim(int m) {
  if (m < 1 || m > kMaxDim) throw DimensionError("Clifford dimension must be in 1..6, got " + std::to_string(m));
}

void check_same(const Multivector& a, const Multivector& b) {
  if (a.dim() != b.dim()) throw DimensionError("multivector dimension mismatch");
}

double reorder_sign(std::uint32_t a, std::uint32_t b) {
  int swaps = 0;
  for (std::uint32_t s = a >> 1; s != 0; s >>= 1) swaps += std::popcount(s & b);
  swaps += std::popcount(a & b);  // each shared e_i squares to -1
  return (swaps & 1) ? -1.0 : 1.0;
}

}  // namespace

Algebra::Algebra(int m) : m_(m), n_(std::size_t{1} << m) {
  mask_.resize(n_);
  for (std::uint32_t k = 0; k < n_; ++k) mask_[k] = k;
  // grade first, then lexicographic on the sorted index lists
  std::sort(mask_.begin(), mask_.end(), [](std::uint32_t a, std::uint32_t b) {
    const int ga = std::popcount(a), gb = std::popcount(b);
    if (ga != gb) return ga < gb;
    for (int bit = 0; bit < kMaxDim; ++bit) {
      const bool ia = a & (1u << bit), ib = b & (1u << bit);
      if (ia != ib) return ia;
    }
    return false;
  });
  index_.assign(n_, 0);
  grade_.assign(n_, 0);
  conj_sign_.assign(n_, 1.0);
  for (std::size_t k = 0; k < n_; ++k) {
    index_[mask_[k]] = k;
    const int g = std::popcount(mask_[k]);
    grade_[k] = g;
    conj_sign_[k] = ((g * (g + 1) / 2) % 2) ? -1.0 : 1.0;
  }
  prod_idx_.resize(n_ * n_);
  prod_sign_.resize(n_ * n_);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) {
      prod_idx_[a * n_ + b] = static_cast<std::uint16_t>(index_[mask_[a] ^ mask_[b]]);
      prod_sign_[a * n_ + b] = reorder_sign(mask_[a], mask_[b]);
    }
}

const Algebra& Algebra::get(int m) {
  check_dim(m);
  static std::array<std::once_flag, kMaxDim + 1> flags;
  static std::array<const Algebra*, kMaxDim + 1> table{};
  std::call_once(flags[m], [m] { table[m] = new Algebra(m); });
  return *table[m];
}

std::string Algebra::blade_name(std::size_t index) const {
  const std::uint32_t mk = mask_[index];
  if (mk == 0) return "1";
  std::string s = "e";
  for (int bit = 0; bit < m_; ++bit)
    if (mk & (1u << bit)) s += static_cast<char>('1' + bit);
  return s;
}

std::size_t Algebra::parse_blade(const std::string& name) const {
  if (name == "1") return 0;
  if (name.size() < 2 || name[0] != 'e') throw std::invalid_argument("bad blade name '" + name + "'");
  std::uint32_t mk = 0;
  int last = 0;
  for (std::size_t p = 1; p < name.size(); ++p) {
    const int d = name[p] - '0';
    if (d < 1 || d > m_ || d <= last)
      throw std::invalid_argument("bad blade name '" + name + "' for m=" + std::to_string(m_));
    mk |= 1u << (d - 1);
    last = d;
  }
  return index_[mk];
}

Multivector::Multivector(int m) : m_(static_cast<std::uint8_t>(m)) { check_dim(m); }

Multivector::Multivector(int m, std::initializer_list<double> coeffs) : Multivector(m) {
  if (coeffs.size() != size()) throw DimensionError("coefficient count must equal 2^m");
  std::copy(coeffs.begin(), coeffs.end(), c_.begin());
}

Multivector Multivector::scalar(int m, double s) {
  Multivector r(m);
  r.c_[0] = s;
  return r;
}

Multivector Multivector::basis(int m, int i) {
  if (i < 1 || i > m) throw DimensionError("basis index out of range");
  return blade(m, std::uint32_t{1} << (i - 1));
}

Multivector Multivector::blade(int m, std::uint32_t mask, double c) {
  Multivector r(m);
  r.c_[Algebra::get(m).index(mask)] = c;
  return r;
}

Multivector Multivector::from_coeffs(int m, const double* coeffs) {
  Multivector r(m);
  std::copy(coeffs, coeffs + r.size(), r.c_.begin());
  return r;
}

Multivector Multivector::vector(int m, const double* components) {
  Multivector r(m);
  const Algebra& alg = Algebra::get(m);
  for (int i = 1; i <= m; ++i) r.c_[alg.vector_index(i)] = components[i - 1];
  return r;
}

double Multivector::coeff(std::uint32_t mask) const { return c_[Algebra::get(m_).index(mask)]; }

bool Multivector::is_paravector(double tol) const {
  const Algebra& alg = Algebra::get(m_);
  for (std::size_t k = 0; k < size(); ++k)
    if (alg.grade(k) >= 2 && std::abs(c_[k]) > tol) return false;
  return true;
}

bool Multivector::is_vector(double tol) const {
  return std::abs(c_[0]) <= tol && is_paravector(tol);
}

Multivector& Multivector::operator+=(const Multivector& o) {
  check_same(*this, o);
  for (std::size_t k = 0; k < size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  check_same(*this, o);
  for (std::size_t k = 0; k < size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (std::size_t k = 0; k < size(); ++k) c_[k] *= s;
  return *this;
}

Multivector operator*(const Multivector& a, const Multivector& b) {
  check_same(a, b);
  const Algebra& alg = Algebra::get(a.dim());
  const std::size_t n = alg.size();
  Multivector r(a.dim());
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = a.c_[i];
    if (ai == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const double bj = b.c_[j];
      if (bj == 0.0) continue;
      r.c_[alg.product_index(i, j)] += alg.product_sign(i, j) * ai * bj;
    }
  }
  return r;
}

bool Multivector::operator==(const Multivector& o) const {
  return m_ == o.m_ && std::equal(c_.begin(), c_.begin() + size(), o.c_.begin());
}

Multivector mul(const Multivector& a, const Multivector& b) { return a * b; }

Multivector conjugate(const Multivector& a) {
  const Algebra& alg = Algebra::get(a.dim());
  Multivector r = a;
  for (std::size_t k = 0; k < a.size(); ++k) r[k] *= alg.conjugation_sign(k);
  return r;
}

double norm2(const Multivector& a) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * a[k];
  return s;
}

double norm(const Multivector& a) { return std::sqrt(norm2(a)); }

double max_abs(const Multivector& a) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s = std::max(s, std::abs(a[k]));
  return s;
}

double coeff_dot(const Multivector& a, const Multivector& b) {
  check_same(a, b);
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

std::ostream& operator<<(std::ostream& os, const Multivector& a) {
  const Algebra& alg = Algebra::get(a.dim());
  std::ostringstream ss;
  ss.precision(os.precision());
  bool first = true;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0.0) continue;
    if (!first) ss << " + ";
    ss << a[k];
    if (k != 0) ss << '*' << alg.blade_name(k);
    first = false;
  }
  if (first) ss << 0;
  return os << ss.str();
}

Paravector::Paravector(int m) : m_(static_cast<std::uint8_t>(m)) { check_dim(m); }

Paravector::Paravector(double x0, std::initializer_list<double> vec)
    : x0_(x0), m_(static_cast<std::uint8_t>(vec.size())) {
  check_dim(m_);
  std::copy(vec.begin(), vec.end(), v_.begin());
}

Paravector::Paravector(double x0, const std::vector<double>& vec)
    : x0_(x0), m_(static_cast<std::uint8_t>(vec.size())) {
  check_dim(m_);
  std::copy(vec.begin(), vec.end(), v_.begin());
}

Paravector Paravector::from_multivector(const Multivector& x, double tol) {
  if (!x.is_paravector(tol)) throw std::invalid_argument("multivector has grade >= 2 components");
  const Algebra& alg = Algebra::get(x.dim());
  Paravector p(x.dim());
  p.x0_ = x[0];
  for (int i = 1; i <= x.dim(); ++i) p.v_[i - 1] = x[alg.vector_index(i)];
  return p;
}

double Paravector::vec_norm() const {
  double s = 0.0;
  for (int i = 0; i < m_; ++i) s += v_[i] * v_[i];
  return std::sqrt(s);
}

double Paravector::norm() const { return std::hypot(x0_, vec_norm()); }

Multivector Paravector::to_multivector() const {
  Multivector r = Multivector::vector(m_, v_.data());
  r[0] = x0_;
  return r;
}

Paravector Paravector::conj() const {
  Paravector r = *this;
  for (int i = 0; i < m_; ++i) r.v_[i] = -r.v_[i];
  return r;
}

Paravector paravector_inverse(const Paravector& x) {
  double n2 = x.x0() * x.x0();
  for (int i = 1; i <= x.dim(); ++i) n2 += x.x(i) * x.x(i);
  if (n2 == 0.0) throw SingularElementError("inverse of zero paravector");
  Paravector r = x.conj();
  r.x0() /= n2;
  for (int i = 1; i <= x.dim(); ++i) r.x(i) /= n2;
  return r;
}

Multivector paravector_inverse(const Multivector& x) {
  return paravector_inverse(Paravector::from_multivector(x)).to_multivector();
}

}  // namespace slicepi
