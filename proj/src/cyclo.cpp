#include "spinmod/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <numbers>
#include <sstream>

namespace spinmod {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(i128 v) {
  return v >= static_cast<i128>(std::numeric_limits<int64_t>::min() + 1) &&
         v <= static_cast<i128>(std::numeric_limits<int64_t>::max());
}

mpz_class to_mpz(int64_t v) {
  mpz_class r;
  mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
  return r;
}

std::vector<int64_t> poly_exact_div(const std::vector<int64_t>& num, const std::vector<int64_t>& monic) {
  std::vector<int64_t> rem = num;
  const size_t dn = num.size() - 1;
  const size_t dd = monic.size() - 1;
  std::vector<int64_t> quo(dn - dd + 1, 0);
  for (size_t k = dn + 1; k-- > dd;) {
    int64_t c = rem[k];
    quo[k - dd] = c;
    for (size_t i = 0; i <= dd; ++i) rem[k - dd + i] -= c * monic[i];
  }
  return quo;
}

}  // namespace

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<int64_t> cyclotomic_polynomial(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: order must be positive");
  // x^n - 1 divided by Phi_k for every proper divisor k of n.
  std::vector<int64_t> p(static_cast<size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<size_t>(n)] = 1;
  for (int k = 1; k < n; ++k) {
    if (n % k == 0) p = poly_exact_div(p, cyclotomic_polynomial(k));
  }
  return p;
}

CycloField::CycloField(int order) : order_(order) {
  if (order < 1) throw std::invalid_argument("CycloField: order must be positive");
  phi_ = cyclotomic_polynomial(order);
  degree_ = static_cast<int>(phi_.size()) - 1;
  powers_.assign(static_cast<size_t>(order), std::vector<int64_t>(static_cast<size_t>(degree_), 0));
  std::vector<int64_t> cur(static_cast<size_t>(degree_), 0);
  cur[0] = 1;
  if (degree_ == 1 && order == 1) cur[0] = 1;
  for (int k = 0; k < order; ++k) {
    powers_[static_cast<size_t>(k)] = cur;
    // multiply by x and reduce
    std::vector<int64_t> next(static_cast<size_t>(degree_), 0);
    int64_t top = cur[static_cast<size_t>(degree_ - 1)];
    for (int i = degree_ - 1; i > 0; --i) next[static_cast<size_t>(i)] = cur[static_cast<size_t>(i - 1)];
    next[0] = 0;
    for (int i = 0; i < degree_; ++i) next[static_cast<size_t>(i)] -= top * phi_[static_cast<size_t>(i)];
    cur = std::move(next);
  }
}

Field CycloField::get(int order) {
  static std::mutex mu;
  static std::map<int, Field> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(order);
  if (it != registry.end()) return it->second;
  auto f = std::make_shared<const CycloField>(order);
  registry.emplace(order, f);
  return f;
}

// ---------------------------------------------------------------------------

CycloNumber::CycloNumber(Field field) : field_(std::move(field)) {
  if (!field_) throw std::invalid_argument("CycloNumber: null field");
  num_.assign(static_cast<size_t>(field_->degree()), 0);
}

CycloNumber CycloNumber::integer(Field field, long value) {
  CycloNumber r(std::move(field));
  r.num_[0] = value;
  return r;
}

CycloNumber CycloNumber::rational(Field field, const mpq_class& value) {
  std::vector<mpq_class> c(static_cast<size_t>(field->degree()), 0);
  c[0] = value;
  return from_coefficients(std::move(field), c);
}

CycloNumber CycloNumber::root(Field field, long k) {
  CycloNumber r(field);
  long n = field->order();
  long e = ((k % n) + n) % n;
  r.num_ = field->power_reduction(static_cast<int>(e));
  return r;
}

CycloNumber CycloNumber::from_coefficients(Field field, const std::vector<mpq_class>& coeffs) {
  if (static_cast<int>(coeffs.size()) != field->degree())
    throw std::invalid_argument("CycloNumber: coefficient count does not match field degree");
  mpz_class den = 1;
  for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> num(coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i) num[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
  CycloNumber r(std::move(field));
  r.set_from_big(std::move(num), std::move(den));
  return r;
}

void CycloNumber::require_same_field(const CycloNumber& o) const {
  if (!field_ || !o.field_) throw std::invalid_argument("CycloNumber: uninitialised value");
  if (field_ != o.field_)
    throw FieldMismatch("CycloNumber: field mismatch (Q(zeta_" + std::to_string(field_->order()) +
                        ") vs Q(zeta_" + std::to_string(o.field_->order()) + "))");
}

std::vector<mpz_class> CycloNumber::big_num() const {
  if (big_) return big_->num;
  std::vector<mpz_class> out(num_.size());
  for (size_t i = 0; i < num_.size(); ++i) out[i] = to_mpz(num_[i]);
  return out;
}

mpz_class CycloNumber::big_den() const { return big_ ? big_->den : to_mpz(den_); }

void CycloNumber::set_from_big(std::vector<mpz_class> num, mpz_class den) {
  if (den < 0) {
    den = -den;
    for (auto& v : num) v = -v;
  }
  mpz_class g = den;
  for (const auto& v : num) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  bool all_zero = std::all_of(num.begin(), num.end(), [](const mpz_class& v) { return v == 0; });
  if (all_zero) {
    den = 1;
  } else if (g != 1) {
    den /= g;
    for (auto& v : num) v /= g;
  }
  bool small = den.fits_slong_p();
  const mpz_class lowest = to_mpz(std::numeric_limits<int64_t>::min());
  for (const auto& v : num) small = small && v.fits_slong_p() && v != lowest;
  if (small) {
    big_.reset();
    num_.resize(num.size());
    for (size_t i = 0; i < num.size(); ++i) num_[i] = num[i].get_si();
    den_ = den.get_si();
  } else {
    num_.clear();
    den_ = 1;
    big_ = std::make_shared<const Big>(Big{std::move(num), std::move(den)});
  }
}

void CycloNumber::set_from_wide(std::vector<i128> num, i128 den) {
  if (den < 0) {
    den = -den;
    for (auto& v : num) v = -v;
  }
  bool all_zero = true;
  u128 g = static_cast<u128>(den);
  for (i128 v : num) {
    if (v != 0) all_zero = false;
    if (g != 1 && v != 0) g = gcd128(g, uabs(v));
  }
  if (all_zero) {
    den = 1;
  } else if (g > 1) {
    den /= static_cast<i128>(g);
    for (auto& v : num) v /= static_cast<i128>(g);
  }
  bool small = fits64(den);
  for (i128 v : num) small = small && fits64(v);
  if (small) {
    big_.reset();
    num_.resize(num.size());
    for (size_t i = 0; i < num.size(); ++i) num_[i] = static_cast<int64_t>(num[i]);
    den_ = static_cast<int64_t>(den);
    return;
  }
  auto to_big = [](i128 v) {
    bool neg = v < 0;
    u128 u = uabs(v);
    mpz_class hi, lo;
    mpz_set_ui(hi.get_mpz_t(), static_cast<unsigned long>(u >> 64));
    mpz_set_ui(lo.get_mpz_t(), static_cast<unsigned long>(u & ~static_cast<uint64_t>(0)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  };
  std::vector<mpz_class> bn(num.size());
  for (size_t i = 0; i < num.size(); ++i) bn[i] = to_big(num[i]);
  set_from_big(std::move(bn), to_big(den));
}

bool CycloNumber::is_zero() const {
  if (big_) return std::all_of(big_->num.begin(), big_->num.end(), [](const mpz_class& v) { return v == 0; });
  return std::all_of(num_.begin(), num_.end(), [](int64_t v) { return v == 0; });
}

bool CycloNumber::is_one() const {
  if (big_ || den_ != 1 || num_.empty() || num_[0] != 1) return false;
  for (size_t i = 1; i < num_.size(); ++i)
    if (num_[i] != 0) return false;
  return true;
}

bool CycloNumber::is_rational() const {
  if (big_) {
    for (size_t i = 1; i < big_->num.size(); ++i)
      if (big_->num[i] != 0) return false;
    return true;
  }
  for (size_t i = 1; i < num_.size(); ++i)
    if (num_[i] != 0) return false;
  return true;
}

mpq_class CycloNumber::coefficient(int i) const {
  mpq_class q;
  if (big_) {
    q = mpq_class(big_->num[static_cast<size_t>(i)], big_->den);
  } else {
    q = mpq_class(to_mpz(num_[static_cast<size_t>(i)]), to_mpz(den_));
  }
  q.canonicalize();
  return q;
}

std::vector<mpq_class> CycloNumber::coefficients() const {
  std::vector<mpq_class> out;
  for (int i = 0; i < field_->degree(); ++i) out.push_back(coefficient(i));
  return out;
}

CycloNumber CycloNumber::operator-() const {
  CycloNumber r = *this;
  if (big_) {
    auto num = big_->num;
    for (auto& v : num) v = -v;
    r.set_from_big(std::move(num), big_->den);
  } else {
    for (auto& v : r.num_) v = -v;
  }
  return r;
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& o) {
  require_same_field(o);
  if (!big_ && !o.big_) {
    const size_t n = num_.size();
    if (den_ == o.den_) {
      bool ok = true;
      std::vector<int64_t> out(n);
      for (size_t i = 0; i < n && ok; ++i) ok = !__builtin_add_overflow(num_[i], o.num_[i], &out[i]);
      if (ok) {
        if (den_ == 1) {
          bool fits = std::all_of(out.begin(), out.end(),
                                  [](int64_t v) { return v != std::numeric_limits<int64_t>::min(); });
          if (fits) {
            num_ = std::move(out);
            return *this;
          }
        }
        std::vector<i128> w(out.begin(), out.end());
        set_from_wide(std::move(w), den_);
        return *this;
      }
    }
    u128 g = gcd128(static_cast<u128>(den_), static_cast<u128>(o.den_));
    i128 fa = o.den_ / static_cast<i128>(g);
    i128 fb = den_ / static_cast<i128>(g);
    std::vector<i128> w(n);
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) {
      i128 x = static_cast<i128>(num_[i]) * fa;
      i128 y = static_cast<i128>(o.num_[i]) * fb;
      ok = !__builtin_add_overflow(x, y, &w[i]);
    }
    if (ok) {
      set_from_wide(std::move(w), fb * static_cast<i128>(o.den_));
      return *this;
    }
  }
  auto an = big_num();
  auto bn = o.big_num();
  mpz_class ad = big_den(), bd = o.big_den();
  for (size_t i = 0; i < an.size(); ++i) an[i] = an[i] * bd + bn[i] * ad;
  set_from_big(std::move(an), ad * bd);
  return *this;
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& o) { return *this += -o; }

CycloNumber& CycloNumber::operator*=(const CycloNumber& o) {
  *this = *this * o;
  return *this;
}

CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
  a.require_same_field(b);
  const CycloField& f = *a.field_;
  const int d = f.degree();
  const auto& phi = f.phi();
  CycloNumber r(a.field_);
  if (!a.big_ && !b.big_) {
    if (b.is_one()) return a;
    if (a.is_one()) return b;
    std::vector<i128> conv(static_cast<size_t>(2 * d - 1), 0);
    bool ok = true;
    for (int i = 0; i < d && ok; ++i) {
      int64_t x = a.num_[static_cast<size_t>(i)];
      if (x == 0) continue;
      for (int j = 0; j < d; ++j) {
        int64_t y = b.num_[static_cast<size_t>(j)];
        if (y == 0) continue;
        i128 p = static_cast<i128>(x) * static_cast<i128>(y);
        if (__builtin_add_overflow(conv[static_cast<size_t>(i + j)], p, &conv[static_cast<size_t>(i + j)])) {
          ok = false;
          break;
        }
      }
    }
    for (int k = 2 * d - 2; k >= d && ok; --k) {
      i128 c = conv[static_cast<size_t>(k)];
      if (c == 0) continue;
      conv[static_cast<size_t>(k)] = 0;
      for (int i = 0; i < d; ++i) {
        int64_t p = phi[static_cast<size_t>(i)];
        if (p == 0) continue;
        i128 t;
        if (__builtin_mul_overflow(c, static_cast<i128>(p), &t) ||
            __builtin_sub_overflow(conv[static_cast<size_t>(k - d + i)], t, &conv[static_cast<size_t>(k - d + i)])) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      conv.resize(static_cast<size_t>(d));
      r.set_from_wide(std::move(conv), static_cast<i128>(a.den_) * static_cast<i128>(b.den_));
      return r;
    }
  }
  auto an = a.big_num();
  auto bn = b.big_num();
  std::vector<mpz_class> conv(static_cast<size_t>(2 * d - 1), 0);
  for (int i = 0; i < d; ++i) {
    if (an[static_cast<size_t>(i)] == 0) continue;
    for (int j = 0; j < d; ++j) conv[static_cast<size_t>(i + j)] += an[static_cast<size_t>(i)] * bn[static_cast<size_t>(j)];
  }
  for (int k = 2 * d - 2; k >= d; --k) {
    mpz_class c = conv[static_cast<size_t>(k)];
    if (c == 0) continue;
    for (int i = 0; i < d; ++i) conv[static_cast<size_t>(k - d + i)] -= c * to_mpz(phi[static_cast<size_t>(i)]);
  }
  conv.resize(static_cast<size_t>(d));
  r.set_from_big(std::move(conv), a.big_den() * b.big_den());
  return r;
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
  a.require_same_field(b);
  if (!a.big_ && !b.big_) return a.den_ == b.den_ && a.num_ == b.num_;
  if (static_cast<bool>(a.big_) != static_cast<bool>(b.big_)) return false;  // canonical storage
  return a.big_->den == b.big_->den && a.big_->num == b.big_->num;
}

CycloNumber CycloNumber::scaled(long factor) const {
  return *this * CycloNumber::integer(field_, factor);
}

CycloNumber CycloNumber::scaled(const mpq_class& factor) const {
  auto num = big_num();
  mpz_class den = big_den() * factor.get_den();
  for (auto& v : num) v *= factor.get_num();
  CycloNumber r(field_);
  r.set_from_big(std::move(num), std::move(den));
  return r;
}

CycloNumber CycloNumber::inverse() const {
  if (!field_) throw std::invalid_argument("CycloNumber: uninitialised value");
  if (is_zero()) throw std::domain_error("CycloNumber: division by zero");
  const int d = field_->degree();
  if (is_rational()) {
    mpq_class c = coefficient(0);
    return CycloNumber::rational(field_, 1 / c);
  }
  // Column j of the multiplication matrix is this * zeta^j.
  std::vector<std::vector<mpq_class>> m(static_cast<size_t>(d), std::vector<mpq_class>(static_cast<size_t>(d) + 1));
  for (int j = 0; j < d; ++j) {
    auto col = (*this * CycloNumber::root(field_, j)).coefficients();
    for (int i = 0; i < d; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = col[static_cast<size_t>(i)];
  }
  m[0][static_cast<size_t>(d)] = 1;
  for (int c = 0; c < d; ++c) {
    int piv = -1;
    for (int r = c; r < d; ++r) {
      if (m[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw std::domain_error("CycloNumber: singular multiplication matrix");
    std::swap(m[static_cast<size_t>(c)], m[static_cast<size_t>(piv)]);
    mpq_class inv = 1 / m[static_cast<size_t>(c)][static_cast<size_t>(c)];
    for (int k = c; k <= d; ++k) m[static_cast<size_t>(c)][static_cast<size_t>(k)] *= inv;
    for (int r = 0; r < d; ++r) {
      if (r == c) continue;
      mpq_class f = m[static_cast<size_t>(r)][static_cast<size_t>(c)];
      if (f == 0) continue;
      for (int k = c; k <= d; ++k)
        m[static_cast<size_t>(r)][static_cast<size_t>(k)] -= f * m[static_cast<size_t>(c)][static_cast<size_t>(k)];
    }
  }
  std::vector<mpq_class> x(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) x[static_cast<size_t>(i)] = m[static_cast<size_t>(i)][static_cast<size_t>(d)];
  return from_coefficients(field_, x);
}

CycloNumber CycloNumber::conj() const {
  const int n = field_->order();
  const int d = field_->degree();
  auto num = big_num();
  std::vector<mpz_class> out(static_cast<size_t>(d), 0);
  for (int i = 0; i < d; ++i) {
    if (num[static_cast<size_t>(i)] == 0) continue;
    const auto& row = field_->power_reduction((n - i) % n);
    for (int k = 0; k < d; ++k)
      if (row[static_cast<size_t>(k)] != 0) out[static_cast<size_t>(k)] += num[static_cast<size_t>(i)] * to_mpz(row[static_cast<size_t>(k)]);
  }
  CycloNumber r(field_);
  r.set_from_big(std::move(out), big_den());
  return r;
}

CycloNumber CycloNumber::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycloNumber result = CycloNumber::integer(field_, 1);
  CycloNumber base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

CycloNumber CycloNumber::lift(const Field& target) const {
  if (target == field_) return *this;
  if (target->order() % field_->order() != 0)
    throw FieldMismatch("CycloNumber::lift: target order " + std::to_string(target->order()) +
                        " is not a multiple of " + std::to_string(field_->order()));
  const int step = target->order() / field_->order();
  const int d = field_->degree();
  const int td = target->degree();
  auto num = big_num();
  std::vector<mpz_class> out(static_cast<size_t>(td), 0);
  for (int i = 0; i < d; ++i) {
    if (num[static_cast<size_t>(i)] == 0) continue;
    const auto& row = target->power_reduction((i * step) % target->order());
    for (int k = 0; k < td; ++k)
      if (row[static_cast<size_t>(k)] != 0) out[static_cast<size_t>(k)] += num[static_cast<size_t>(i)] * to_mpz(row[static_cast<size_t>(k)]);
  }
  CycloNumber r(target);
  r.set_from_big(std::move(out), big_den());
  return r;
}

std::complex<double> CycloNumber::embed_complex() const {
  const int n = field_->order();
  std::complex<double> acc = 0;
  for (int i = 0; i < field_->degree(); ++i) {
    double c = coefficient(i).get_d();
    if (c == 0.0) continue;
    double ang = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    acc += c * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return acc;
}

int CycloNumber::root_exponent() const {
  const int n = field_->order();
  for (int j = 0; j < n; ++j)
    if (*this == CycloNumber::root(field_, j)) return j;
  return -1;
}

int CycloNumber::root_order() const {
  const int n = field_->order();
  int j = root_exponent();
  if (j >= 0) return n / std::gcd(j, n);
  j = (-*this).root_exponent();
  if (j >= 0) return std::lcm(2, n / std::gcd(j, n));
  return 0;
}

std::string CycloNumber::to_string() const {
  if (!field_) return "<invalid>";
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < field_->degree(); ++i) {
    mpq_class c = coefficient(i);
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    mpq_class a = abs(c);
    if (i == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

CycloNumber make_root(int n, long k) {
  if (n < 1) throw std::invalid_argument("make_root: order must be positive");
  return CycloNumber::root(CycloField::get(n), k);
}

CycloNumber gauss_sum(long m, const CycloNumber& xi) {
  if (m < 1) throw std::invalid_argument("gauss_sum: m must be positive");
  CycloNumber total = CycloNumber::integer(xi.field(), 0);
  CycloNumber term = CycloNumber::integer(xi.field(), 1);  // xi^{i^2}
  CycloNumber step = xi;                                   // xi^{2i+1}
  const CycloNumber xi2 = xi * xi;
  for (long i = 0; i < m; ++i) {
    total += term;
    term = term * step;
    step = step * xi2;
  }
  return total;
}

}  // namespace spinmod
