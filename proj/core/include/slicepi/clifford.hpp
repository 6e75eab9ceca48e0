#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace slicepi {

inline constexpr int kMaxDim = 6;
inline constexpr std::size_t kMaxBlades = std::size_t{1} << kMaxDim;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularElementError : std::domain_error {
  using std::domain_error::domain_error;
};

// Blade bookkeeping and the product table of Cl_m (e_i^2 = -1).
// Blades are sorted subsets of {1..m}, ordered by grade, then lexicographically.
// One instance per m is built lazily and shared read-only.
class Algebra {
public:
  static const Algebra& get(int m);

  int dim() const { return m_; }
  std::size_t size() const { return n_; }

  std::uint32_t mask(std::size_t index) const { return mask_[index]; }
  std::size_t index(std::uint32_t mask) const { return index_[mask]; }
  int grade(std::size_t index) const { return grade_[index]; }

  // e_A e_B = sign * e_{A xor B}
  std::size_t product_index(std::size_t a, std::size_t b) const { return prod_idx_[a * n_ + b]; }
  double product_sign(std::size_t a, std::size_t b) const { return prod_sign_[a * n_ + b]; }

  // (-1)^{k(k+1)/2} for a blade of grade k
  double conjugation_sign(std::size_t index) const { return conj_sign_[index]; }

  // Index of the basis vector e_i, i in 1..m.
  std::size_t vector_index(int i) const { return index_[std::uint32_t{1} << (i - 1)]; }

  std::string blade_name(std::size_t index) const;
  // Accepts "1", "e1", "e13", ... ; throws on malformed names or indices > m.
  std::size_t parse_blade(const std::string& name) const;

private:
  explicit Algebra(int m);

  int m_;
  std::size_t n_;
  std::vector<std::uint32_t> mask_;
  std::vector<std::size_t> index_;
  std::vector<int> grade_;
  std::vector<std::uint16_t> prod_idx_;
  std::vector<double> prod_sign_;
  std::vector<double> conj_sign_;
};

class Multivector {
public:
  explicit Multivector(int m = 2);
  Multivector(int m, std::initializer_list<double> coeffs);

  static Multivector scalar(int m, double s);
  static Multivector basis(int m, int i);                       // e_i
  static Multivector blade(int m, std::uint32_t mask, double c = 1.0);
  static Multivector from_coeffs(int m, const double* coeffs);
  static Multivector vector(int m, const double* components);  // sum_i c_i e_i

  int dim() const { return m_; }
  std::size_t size() const { return std::size_t{1} << m_; }

  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }
  const double* data() const { return c_.data(); }
  double* data() { return c_.data(); }

  double scalar_part() const { return c_[0]; }
  double coeff(std::uint32_t mask) const;

  bool is_paravector(double tol = 0.0) const;
  bool is_vector(double tol = 0.0) const;

  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(double s);

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator-(Multivector a) { return a *= -1.0; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator/(Multivector a, double s) { return a *= 1.0 / s; }
  friend Multivector operator*(const Multivector& a, const Multivector& b);

  bool operator==(const Multivector& o) const;

private:
  std::array<double, kMaxBlades> c_{};
  std::uint8_t m_;
};

Multivector mul(const Multivector& a, const Multivector& b);
Multivector conjugate(const Multivector& a);
double norm(const Multivector& a);
double norm2(const Multivector& a);
double max_abs(const Multivector& a);

// Scalar part of conj(a) b, i.e. the Euclidean inner product of coefficient vectors.
double coeff_dot(const Multivector& a, const Multivector& b);

std::ostream& operator<<(std::ostream& os, const Multivector& a);

class Paravector {
public:
  explicit Paravector(int m = 2);
  Paravector(double x0, std::initializer_list<double> vec);
  Paravector(double x0, const std::vector<double>& vec);

  static Paravector from_multivector(const Multivector& x, double tol = 1e-12);

  int dim() const { return m_; }
  double x0() const { return x0_; }
  double& x0() { return x0_; }
  double x(int i) const { return v_[i - 1]; }   // i in 1..m
  double& x(int i) { return v_[i - 1]; }

  double vec_norm() const;
  double norm() const;
  Multivector to_multivector() const;
  operator Multivector() const { return to_multivector(); }

  Paravector conj() const;

private:
  std::array<double, kMaxDim> v_{};
  double x0_ = 0.0;
  std::uint8_t m_;
};

Paravector paravector_inverse(const Paravector& x);
Multivector paravector_inverse(const Multivector& x);

}  // namespace slicepi
