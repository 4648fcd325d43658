#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "spinmod/category.hpp"

using namespace spinmod;
using cd = std::complex<double>;

namespace {

cd A(int r, double k) { return std::polar(1.0, 2 * std::numbers::pi * k / (4.0 * r)); }
cd qint(int r, int n) { return (A(r, 2 * n) - A(r, -2 * n)) / (A(r, 2) - A(r, -2)); }
double sgn(int k) { return k % 2 == 0 ? 1.0 : -1.0; }

bool cg(int r, int i, int j, int k) {
  return std::abs(i - j) <= k && k <= std::min(i + j, 2 * (r - 2) - i - j) && (i + j + k) % 2 == 0;
}

bool close(const CycloNumber& x, cd z) { return std::abs(x.embed_complex() - z) < 1e-9; }

// θ_a θ_b S̃_ab = Σ_c N^c_ab θ_c ⟨c⟩
bool ribbon_relation(const CategoryData& c) {
  for (int a = 0; a < c.size(); ++a)
    for (int b = 0; b < c.size(); ++b) {
      CycloNumber rhs(c.field);
      for (int k = 0; k < c.size(); ++k)
        if (int n = c.N(a, b, k)) rhs += (c.twist[static_cast<size_t>(k)] * c.qdim[static_cast<size_t>(k)]).scaled(n);
      if (!(c.twist[static_cast<size_t>(a)] * c.twist[static_cast<size_t>(b)] * c.smatrix[static_cast<size_t>(a)][static_cast<size_t>(b)] == rhs))
        return false;
    }
  return true;
}

}  // namespace

TEST_CASE("sl2 data agrees with the closed-form formulas") {
  for (int r = 3; r <= 9; ++r) {
    CategoryData c = sl2_category(r);
    REQUIRE(c.size() == r - 1);
    for (int i = 0; i < r - 1; ++i) {
      CHECK(close(c.qdim[static_cast<size_t>(i)], sgn(i) * qint(r, i + 1)));
      CHECK(close(c.twist[static_cast<size_t>(i)], sgn(i) * A(r, i * i + 2 * i)));
      for (int j = 0; j < r - 1; ++j) {
        CHECK(close(c.smatrix[static_cast<size_t>(i)][static_cast<size_t>(j)], sgn(i + j) * qint(r, (i + 1) * (j + 1))));
        for (int k = 0; k < r - 1; ++k) CHECK(c.N(i, j, k) == (cg(r, i, j, k) ? 1 : 0));
      }
    }
  }
}

TEST_CASE("sl2(3) S matrix") {
  CategoryData c = sl2_category(3);
  CHECK(c.smatrix[0][0].is_one());
  CHECK(c.smatrix[0][1] == c.qdim[1]);
  CHECK(close(c.smatrix[1][1], qint(3, 4)));
  CHECK(check_axioms(c).modular);
}

TEST_CASE("sl2(r) is modular for r = 3..12") {
  for (int r = 3; r <= 12; ++r) {
    AxiomReport a = check_axioms(sl2_category(r));
    CHECK(a.premodular);
    CHECK(a.modular);
    CHECK(a.transparent == std::vector<int>{0});
    CHECK(a.violations.empty());
    CHECK(a.smatrix_rank == r - 1);
    CHECK(ribbon_relation(sl2_category(r)));
  }
}

TEST_CASE("the unsigned sl2 convention changes twists by the grading sign") {
  for (int r : {4, 5, 8}) {
    CategoryData u = sl2_category(r, Sl2Convention::Unsigned), k = sl2_category(r);
    AxiomReport a = check_axioms(u);
    CHECK(a.premodular);
    CHECK(a.modular);
    for (int i = 0; i < u.size(); ++i) {
      const size_t x = static_cast<size_t>(i);
      CHECK(u.qdim[x] == k.qdim[x]);
      CHECK(u.twist[x] == (i % 2 ? -k.twist[x] : k.twist[x]));
    }
  }
}

TEST_CASE("invertible objects of sl2") {
  for (int r = 3; r <= 12; ++r) {
    CategoryData c = sl2_category(r);
    InvertibleGroup g = invertibles(c);
    CHECK(g.elements == std::vector<int>{0, r - 2});
    REQUIRE(g.generator);
    CHECK(*g.generator == r - 2);
    CycloNumber t = c.qdim[static_cast<size_t>(r - 2)];
    CHECK((t.is_one() || (-t).is_one()));
  }
}

TEST_CASE("refinability of sl2") {
  for (int r = 4; r <= 12; ++r) {
    CategoryData c = sl2_category(r);
    InvertibleGroup g = invertibles(c);
    Grading gr = default_grading(c, g);
    auto rs = refinable_structures(c, g, gr);
    if (r % 2 == 0) {
      REQUIRE(rs.size() == 2);
      CHECK(rs[1].order == 2);
      CHECK(rs[1].is_spin == (r % 4 == 0));
    } else {
      REQUIRE(rs.size() == 1);
      CHECK(rs[0].order == 1);
      CHECK(gr.degree[static_cast<size_t>(r - 2)] == 1);
    }
  }
}

TEST_CASE("grading is additive under fusion and characters have the right order") {
  for (int r : {5, 6, 8}) {
    CategoryData c = sl2_category(r);
    InvertibleGroup g = invertibles(c);
    Grading gr = default_grading(c, g);
    for (int a = 0; a < c.size(); ++a)
      for (int b = 0; b < c.size(); ++b)
        for (int k = 0; k < c.size(); ++k)
          if (c.N(a, b, k)) CHECK((gr.degree[static_cast<size_t>(a)] + gr.degree[static_cast<size_t>(b)]) % gr.modulus == gr.degree[static_cast<size_t>(k)]);
    for (int a = 0; a < c.size(); ++a)
      for (int t : g.elements) CHECK(character(c, a, t).pow(g.order_of(t)).is_one());
    CHECK(gr.degree[0] == 0);
  }
}

TEST_CASE("Kirby colors") {
  CategoryData c = sl2_category(8);
  Grading gr = default_grading(c, invertibles(c));
  auto plain = kirby_color(c, KirbyKind::Plain).weights;
  CHECK(plain == c.qdim);
  auto g1 = kirby_color(c, KirbyKind::Graded, 1, &gr).weights;
  for (int l = 0; l < c.size(); ++l) CHECK(g1[static_cast<size_t>(l)].is_zero() == (l % 2 == 0));
  auto g0 = kirby_color(c, KirbyKind::Graded, 0, &gr).weights;
  for (int l = 0; l < c.size(); ++l) CHECK(g0[static_cast<size_t>(l)] + g1[static_cast<size_t>(l)] == plain[static_cast<size_t>(l)]);
  CHECK(kirby_color(c, KirbyKind::Dual, 0, &gr).weights == plain);
  auto d1 = kirby_color(c, KirbyKind::Dual, 1, &gr).weights;
  for (int l = 0; l < c.size(); ++l) CHECK(d1[static_cast<size_t>(l)] == (l % 2 ? -plain[static_cast<size_t>(l)] : plain[static_cast<size_t>(l)]));
}

TEST_CASE("abelian categories") {
  CategoryData semion = abelian_category(2, make_root(4, 1));
  CHECK(check_axioms(semion).modular);
  CHECK(semion.twist[1] == make_root(4, 1));
  CategoryData z3 = abelian_category(3, make_root(3, 1));
  AxiomReport a3 = check_axioms(z3);
  CHECK(a3.modular);
  CHECK(z3.smatrix[1][2] == make_root(3, 4));
  AxiomReport flat = check_axioms(abelian_category(3, make_root(1, 0)));
  CHECK(flat.premodular);
  CHECK_FALSE(flat.modular);
  CHECK(flat.transparent == std::vector<int>{0, 1, 2});
  CHECK(invertibles(z3).order() == 3);
  CHECK_THROWS(abelian_category(2, make_root(8, 1)));
}

TEST_CASE("products") {
  CategoryData a = sl2_category(4);
  CategoryData p = product_category(a, trivial_category());
  CHECK(p.size() == a.size());
  CHECK(check_axioms(p).modular);
  CHECK(product_category(sl2_category(4), sl2_category(5)).size() == 12);
  CategoryData q = product_category(sl2_category(4), abelian_category(3, make_root(3, 1)));
  AxiomReport rq = check_axioms(q);
  CHECK(rq.premodular);
  CHECK(rq.modular);
  InvertibleGroup g = invertibles(product_category(sl2_category(4), sl2_category(6)));
  CHECK(g.order() == 4);
  CHECK_FALSE(g.generator.has_value());
  CHECK(check_axioms(trivial_category()).modular);
}

TEST_CASE("reduced subcategories") {
  for (int r : {5, 7, 9}) {
    CategoryData c = sl2_category(r);
    Grading gr = default_grading(c, invertibles(c));
    CategoryData red = reduced_subcategory(c, gr, 2);
    CHECK(red.size() == (r - 1) / 2);
    CHECK(check_axioms(red).modular);
    CHECK(reduced_subcategory(c, gr, 1) == c);
  }
}

TEST_CASE("extension followed by modularization") {
  CategoryData c = sl2_category(5);
  Grading gr = default_grading(c, invertibles(c));
  CategoryData same = extend_category(c, gr, 1, make_root(4, 0), gr.degree);
  CHECK(same.qdim == c.qdim);
  CHECK(same.twist == c.twist);
  CHECK(same.smatrix == c.smatrix);
  CHECK(same.fusion == c.fusion);
  CategoryData reg = sign_regauge(c, gr);
  CHECK(reg.qdim[3].is_one());
  Grading rg = default_grading(reg, invertibles(reg));
  CategoryData ext = extend_category(reg, rg, 1, make_root(4, 3), rg.degree);
  AxiomReport a = check_axioms(ext);
  REQUIRE(a.premodular);
  CHECK(a.transparent.size() == 2);
  CategoryData m = modularize(ext);
  CHECK(m.size() == 2);
  AxiomReport am = check_axioms(m);
  CHECK(am.modular);
  CHECK(am.transparent == std::vector<int>{0});
  CHECK(extend_category(c, gr, 3, make_root(12, 1), {0, 1, 0, 1}).size() == 12);
}

TEST_CASE("spin-case parameters need alpha and m of equal parity") {
  CHECK_THROWS(spin_case_xi(1, 1, 2));
  CycloNumber xi = spin_case_xi(1, 1, 1);
  CHECK(xi.pow(2).is_one());
}

TEST_CASE("validation rejects broken data") {
  CategoryData c = sl2_category(4);
  c.twist[2] = c.twist[2] * make_root(16, 1);
  CHECK_FALSE(check_axioms(c).premodular);
  CategoryData d = sl2_category(4);
  d.dual[1] = 2;
  CHECK_FALSE(check_axioms(d).violations.empty());
}
