#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace spinmod {

class CycloField;
using Field = std::shared_ptr<const CycloField>;

/// Raised when two cyclotomic numbers from different fields meet.
class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The cyclotomic field Q(zeta_N), presented as Q[x] / Phi_N(x).
///
/// Fields are interned: `CycloField::get(N)` always returns the same instance
/// for a given order, so identity comparison of `Field` pointers is field
/// equality.
class CycloField {
 public:
  static Field get(int order);

  int order() const { return order_; }
  int degree() const { return degree_; }

  /// Coefficients of Phi_N, lowest degree first, length degree + 1.
  const std::vector<int64_t>& phi() const { return phi_; }

  /// Reduction of x^k mod Phi_N for k in [0, order); row k has length degree.
  const std::vector<int64_t>& power_reduction(int k) const { return powers_[k]; }

  explicit CycloField(int order);

 private:
  int order_;
  int degree_;
  std::vector<int64_t> phi_;
  std::vector<std::vector<int64_t>> powers_;
};

/// Coefficients of the N-th cyclotomic polynomial (lowest degree first).
std::vector<int64_t> cyclotomic_polynomial(int n);

int euler_phi(int n);

/// An element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^{deg-1}.
///
/// Stored as an integer numerator vector over one positive common
/// denominator, with gcd(content, denominator) = 1. The representation is
/// canonical, so equality is coefficient-wise. Machine-word storage is used
/// while everything fits in int64; otherwise values silently move to GMP.
class CycloNumber {
 public:
  CycloNumber() = default;
  explicit CycloNumber(Field field);

  static CycloNumber integer(Field field, long value);
  static CycloNumber rational(Field field, const mpq_class& value);
  /// zeta_N^k for the field's N, any integer k.
  static CycloNumber root(Field field, long k);
  static CycloNumber from_coefficients(Field field, const std::vector<mpq_class>& coeffs);

  const Field& field() const { return field_; }
  bool valid() const { return static_cast<bool>(field_); }

  bool is_zero() const;
  bool is_one() const;
  /// Rational coefficient of zeta^i, i < degree.
  mpq_class coefficient(int i) const;
  std::vector<mpq_class> coefficients() const;
  /// True when the value lies in Q (all non-constant coefficients vanish).
  bool is_rational() const;

  CycloNumber operator-() const;
  CycloNumber& operator+=(const CycloNumber& o);
  CycloNumber& operator-=(const CycloNumber& o);
  CycloNumber& operator*=(const CycloNumber& o);

  friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
  friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
  friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator/(const CycloNumber& a, const CycloNumber& b) { return a * b.inverse(); }
  friend bool operator==(const CycloNumber& a, const CycloNumber& b);
  friend bool operator!=(const CycloNumber& a, const CycloNumber& b) { return !(a == b); }

  CycloNumber scaled(long factor) const;
  CycloNumber scaled(const mpq_class& factor) const;

  /// Multiplicative inverse; throws std::domain_error on zero.
  CycloNumber inverse() const;
  /// Complex conjugation, zeta -> zeta^{N-1}.
  CycloNumber conj() const;
  CycloNumber pow(long e) const;

  /// Re-express in Q(zeta_M) for a multiple M of the current order.
  CycloNumber lift(const Field& target) const;

  /// Value at zeta_N = exp(2 pi i / N). Diagnostics only.
  std::complex<double> embed_complex() const;

  /// Smallest k > 0 with this^k == 1, or 0 when this is not a root of unity
  /// inside the field.
  int root_order() const;
  /// Exponent j in [0, N) with this == zeta_N^j, or -1.
  int root_exponent() const;

  std::string to_string() const;

 private:
  struct Big {
    std::vector<mpz_class> num;
    mpz_class den;
  };

  void require_same_field(const CycloNumber& o) const;
  void set_from_big(std::vector<mpz_class> num, mpz_class den);
  void set_from_wide(std::vector<__int128> num, __int128 den);
  std::vector<mpz_class> big_num() const;
  mpz_class big_den() const;

  Field field_;
  std::vector<int64_t> num_;
  int64_t den_ = 1;
  std::shared_ptr<const Big> big_;
};

/// zeta_N^k in Q(zeta_N).
CycloNumber make_root(int n, long k);

/// Sum of xi^{i^2} over i in Z_m.
CycloNumber gauss_sum(long m, const CycloNumber& xi);

}  // namespace spinmod
