#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "spinmod/cyclo.hpp"

using namespace spinmod;

namespace {

// Integer polynomials, lowest degree first.
using Poly = std::vector<long>;

Poly trim(Poly p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  return p;
}

// Exact division of a by a monic b over Z.
Poly divide(Poly a, const Poly& b) {
  const long db = static_cast<long>(b.size()) - 1;
  Poly q(a.size() - static_cast<size_t>(db), 0);
  for (long i = static_cast<long>(a.size()) - 1; i >= db; --i) {
    const long c = a[static_cast<size_t>(i)];
    q[static_cast<size_t>(i - db)] = c;
    for (long j = 0; j <= db; ++j) a[static_cast<size_t>(i - db + j)] -= c * b[static_cast<size_t>(j)];
  }
  for (long r : a) REQUIRE(r == 0);
  return trim(q);
}

// Φ_n by dividing x^n - 1 by Φ_k for the proper divisors k of n.
Poly phi_oracle(int n) {
  Poly p(static_cast<size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<size_t>(n)] = 1;
  for (int k = 1; k < n; ++k)
    if (n % k == 0) p = divide(p, phi_oracle(k));
  return p;
}

int totient_oracle(int n) {
  int c = 0;
  for (int k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) ++c;
  return c;
}

// x^k mod Φ_n by schoolbook reduction.
std::vector<long> reduce_power(int n, int k) {
  Poly phi = phi_oracle(n);
  const size_t deg = phi.size() - 1;
  Poly x(static_cast<size_t>(k) + 1, 0);
  x[static_cast<size_t>(k)] = 1;
  for (size_t i = x.size(); i-- > deg;) {
    long c = x[i];
    for (size_t j = 0; j <= deg; ++j) x[i - deg + j] -= c * phi[j];
  }
  x.resize(deg, 0);
  return x;
}

CycloNumber random_number(std::mt19937_64& rng, const Field& f) {
  std::vector<mpq_class> c;
  for (int i = 0; i < f->degree(); ++i) c.emplace_back(static_cast<long>(rng() % 11) - 5, static_cast<unsigned long>(1 + rng() % 3));
  for (auto& x : c) x.canonicalize();
  return CycloNumber::from_coefficients(f, c);
}

}  // namespace

TEST_CASE("cyclotomic polynomials match the divisor-quotient oracle") {
  for (int n = 1; n <= 60; ++n) {
    Poly expect = phi_oracle(n);
    auto got = cyclotomic_polynomial(n);
    REQUIRE(got.size() == expect.size());
    for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == expect[i]);
    CHECK(CycloField::get(n)->degree() == totient_oracle(n));
    CHECK(euler_phi(n) == totient_oracle(n));
  }
}

TEST_CASE("roots of unity") {
  CHECK((make_root(4, 1) + make_root(4, 3)).is_zero());
  CHECK(make_root(8, 2).pow(2) == CycloNumber::integer(CycloField::get(8), -1));
  CHECK(make_root(5, 0).is_one());
  CHECK((make_root(8, 1) * make_root(8, 7)).is_one());
  CHECK(make_root(12, -3) == make_root(12, 9));
}

TEST_CASE("canonical form of zeta_12^4 by long division") {
  auto expect = reduce_power(12, 4);
  CycloNumber z = make_root(12, 4);
  for (int i = 0; i < 4; ++i) CHECK(z.coefficient(i) == expect[static_cast<size_t>(i)]);
  CHECK(z.root_order() == 3);
}

TEST_CASE("product (1 + z5)(1 + z5^4)") {
  Field f = CycloField::get(5);
  CycloNumber one = CycloNumber::integer(f, 1);
  CycloNumber lhs = (one + make_root(5, 1)) * (one + make_root(5, 4));
  CycloNumber rhs = CycloNumber::integer(f, 2) + make_root(5, 1) + make_root(5, 4);
  CHECK(lhs == rhs);
  // Coordinates from the reduction of x^4 mod Φ_5: 2 + x + x^4 = 1 - x^2 - x^3.
  auto x4 = reduce_power(5, 4);
  std::vector<long> expect{2 + x4[0], 1 + x4[1], x4[2], x4[3]};
  for (int i = 0; i < 4; ++i) CHECK(lhs.coefficient(i) == expect[static_cast<size_t>(i)]);
}

TEST_CASE("inversion") {
  for (int n : {3, 7, 12, 20})
    for (int k = 0; k < n; ++k) CHECK(make_root(n, k).inverse() == make_root(n, n - k));
  Field f4 = CycloField::get(4);
  CHECK(CycloNumber::integer(f4, 2).inverse() == CycloNumber::rational(f4, mpq_class(1, 2)));
  CycloNumber x = CycloNumber::integer(f4, 1) + make_root(4, 1);
  CycloNumber expect = (CycloNumber::integer(f4, 1) - make_root(4, 1)).scaled(mpq_class(1, 2));
  CHECK(x.inverse() == expect);
  CHECK_THROWS_AS(CycloNumber(f4).inverse(), std::domain_error);
}

TEST_CASE("inverse is two-sided on random elements") {
  std::mt19937_64 rng(3);
  const int orders[] = {5, 8, 12, 16, 20, 24, 32, 36};
  int done = 0;
  while (done < 1000) {
    Field f = CycloField::get(orders[rng() % 8]);
    CycloNumber a = random_number(rng, f);
    if (a.is_zero()) continue;
    CycloNumber b = a.inverse();
    REQUIRE((a * b).is_one());
    REQUIRE((b * a).is_one());
    ++done;
  }
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 200; ++it) {
    int n = 1 + static_cast<int>(rng() % 120);
    Field f = CycloField::get(n);
    CycloNumber a = random_number(rng, f), b = random_number(rng, f), c = random_number(rng, f);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + CycloNumber(f) == a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("field mismatch is an error") {
  CHECK_THROWS_AS(make_root(4, 1) + make_root(8, 1), FieldMismatch);
  CHECK(make_root(4, 1).lift(CycloField::get(8)) == make_root(8, 2));
}

TEST_CASE("Gauss sums") {
  CHECK(gauss_sum(1, make_root(7, 3)).is_one());
  CHECK(gauss_sum(4, make_root(8, 1)) == make_root(8, 1).scaled(2));
  for (int m : {3, 5, 7, 11}) {
    for (int k = 1; k < m; ++k) {
      CycloNumber g = gauss_sum(m, make_root(m, k));
      CHECK(g * g.conj() == CycloNumber::integer(g.field(), m));
    }
  }
}

TEST_CASE("complex embedding") {
  auto z = CycloNumber(CycloField::get(6)).embed_complex();
  CHECK(std::abs(z) == 0.0);
  auto i = make_root(4, 1).embed_complex();
  CHECK(std::abs(i - std::complex<double>(0, 1)) < 1e-12);
  auto w = (CycloNumber::integer(CycloField::get(8), 1) + make_root(8, 1)).embed_complex();
  CHECK(std::abs(w - std::complex<double>(1 + std::sqrt(2.0) / 2, std::sqrt(2.0) / 2)) < 1e-12);
}

TEST_CASE("embedding is a ring homomorphism") {
  std::mt19937_64 rng(9);
  for (int it = 0; it < 200; ++it) {
    Field f = CycloField::get(3 + static_cast<int>(rng() % 60));
    CycloNumber a = random_number(rng, f), b = random_number(rng, f);
    CHECK(std::abs((a * b).embed_complex() - a.embed_complex() * b.embed_complex()) < 1e-10 * (1 + std::abs(a.embed_complex() * b.embed_complex())));
    CHECK(std::abs((a + b).embed_complex() - a.embed_complex() - b.embed_complex()) < 1e-10);
  }
}

TEST_CASE("conjugation") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 200; ++it) {
    Field f = CycloField::get(3 + static_cast<int>(rng() % 40));
    CycloNumber a = random_number(rng, f), b = random_number(rng, f);
    CHECK(a.conj().conj() == a);
    CHECK((a * b).conj() == a.conj() * b.conj());
    CHECK(std::abs(a.conj().embed_complex() - std::conj(a.embed_complex())) < 1e-9);
  }
}

TEST_CASE("large values stay exact") {
  Field f = CycloField::get(7);
  CycloNumber x = CycloNumber::integer(f, 3) + make_root(7, 1).scaled(mpq_class(5, 7));
  CycloNumber p = x.pow(60);
  CHECK((p * x.pow(-60)).is_one());
  CHECK(p.pow(2) == x.pow(120));
}

TEST_CASE("root order and exponent") {
  CHECK(make_root(24, 4).root_order() == 6);
  CHECK(make_root(24, 5).root_exponent() == 5);
  CHECK((-make_root(24, 0)).root_order() == 2);
  CHECK(CycloNumber::integer(CycloField::get(24), 2).root_order() == 0);
}
