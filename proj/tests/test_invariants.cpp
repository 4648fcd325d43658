#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "spinmod/invariants.hpp"
#include "spinmod/verify.hpp"

using namespace spinmod;
using cd = std::complex<double>;

namespace {

// Floating-point sl2(r) data straight from the closed-form formulas.
struct FloatSl2 {
  int r;
  std::vector<cd> dim, twist;
  std::vector<std::vector<cd>> S;
  explicit FloatSl2(int r_) : r(r_) {
    auto A = [&](double k) { return std::polar(1.0, 2 * std::numbers::pi * k / (4.0 * r)); };
    auto q = [&](int n) { return (A(2 * n) - A(-2 * n)) / (A(2) - A(-2)); };
    auto sg = [](int k) { return k % 2 ? -1.0 : 1.0; };
    for (int i = 0; i < r - 1; ++i) {
      dim.push_back(sg(i) * q(i + 1));
      twist.push_back(sg(i) * A(i * i + 2 * i));
      S.emplace_back();
      for (int j = 0; j < r - 1; ++j) S.back().push_back(sg(i + j) * q((i + 1) * (j + 1)));
    }
  }
  // Unrooted coloring sum with weights ⟨λ⟩ at every vertex.
  cd numerator(const PlumbingForest& f) const {
    const int n = f.size(), G = r - 1;
    std::vector<int> c(static_cast<size_t>(n), 0);
    cd total = 0;
    while (true) {
      cd v = 1;
      for (int i = 0; i < n; ++i) {
        const size_t l = static_cast<size_t>(c[static_cast<size_t>(i)]);
        v *= dim[l] * std::pow(twist[l], static_cast<double>(f.framing(i))) * std::pow(dim[l], 1.0 - f.degree(i));
      }
      for (const Edge& e : f.edges()) v *= S[static_cast<size_t>(c[static_cast<size_t>(e.u)])][static_cast<size_t>(c[static_cast<size_t>(e.v)])];
      total += v;
      int k = n - 1;
      while (k >= 0 && ++c[static_cast<size_t>(k)] == G) c[static_cast<size_t>(k--)] = 0;
      if (k < 0) break;
    }
    return total;
  }
  cd wrt(const PlumbingForest& f) const {
    SignaturePair s = signature(linking_matrix(f));
    cd up = numerator(chain_forest({1})), down = numerator(chain_forest({-1}));
    return numerator(f) / (std::pow(up, s.b_plus) * std::pow(down, s.b_minus));
  }
};

CycloNumber sum_dim_squares(const CategoryData& c, const std::function<bool(int)>& keep) {
  CycloNumber s(c.field);
  for (int l = 0; l < c.size(); ++l)
    if (keep(l)) s += c.qdim[static_cast<size_t>(l)] * c.qdim[static_cast<size_t>(l)];
  return s;
}

Grading grading(const CategoryData& c) { return default_grading(c, invertibles(c)); }

const SpinExtension& four_spin() {
  static const SpinExtension ext = *find_spin_extension({});
  return ext;
}

}  // namespace

TEST_CASE("colored evaluation") {
  Evaluator ev(sl2_category(6));
  const auto& c = ev.category();
  PlumbingForest hopf = chain_forest({0, 0});
  for (int a = 0; a < c.size(); ++a) {
    for (int b = 0; b < c.size(); ++b) CHECK(ev.eval_colored(hopf, {a, b}) == c.smatrix[static_cast<size_t>(a)][static_cast<size_t>(b)]);
    for (long m : {-3L, 0L, 2L}) CHECK(ev.eval_colored(chain_forest({m}), {a}) == c.twist[static_cast<size_t>(a)].pow(m) * c.qdim[static_cast<size_t>(a)]);
  }
  CHECK(ev.eval_colored(e8_forest(), std::vector<int>(8, 0)).is_one());
  Evaluator z3(abelian_category(3, make_root(3, 1)));
  PlumbingForest neg({0, 0}, {{0, 1, -1}});
  CHECK(z3.eval_colored(neg, {1, 1}) == z3.category().smatrix[2][1]);
}

TEST_CASE("weighted evaluation") {
  Evaluator ev(sl2_category(8));
  const auto& c = ev.category();
  CHECK(ev.eval_weighted(chain_forest({0}), {ev.plain_weights()}) == sum_dim_squares(c, [](int) { return true; }));
  Grading g = grading(c);
  CHECK(ev.unknot(1, kirby_color(c, KirbyKind::Graded, 0, &g).weights).is_zero());
  CHECK(ev.unknot(-1, kirby_color(c, KirbyKind::Graded, 0, &g).weights).is_zero());
  Weights da(static_cast<size_t>(c.size()), CycloNumber(c.field)), db = da;
  da[2] = CycloNumber::integer(c.field, 1);
  db[5] = CycloNumber::integer(c.field, 1);
  CHECK(ev.eval_weighted(chain_forest({0, 0}), {da, db}) == c.smatrix[2][5]);
}

TEST_CASE("message passing matches brute force") {
  std::mt19937_64 rng(51);
  std::vector<CategoryData> cats{sl2_category(3), sl2_category(5), sl2_category(6), abelian_category(4, make_root(8, 3))};
  for (int it = 0; it < 200; ++it) {
    Evaluator ev(cats[rng() % cats.size()]);
    PlumbingForest f = random_forest(rng, 4, 5);
    std::vector<Weights> w;
    for (int v = 0; v < f.size(); ++v) {
      Weights x;
      for (int l = 0; l < ev.category().size(); ++l) x.push_back(CycloNumber::integer(ev.field(), static_cast<long>(rng() % 5) - 2));
      w.push_back(x);
    }
    CHECK(ev.eval_weighted(f, w) == ev.eval_weighted_brute(f, w));
  }
}

TEST_CASE("root choice does not matter") {
  std::mt19937_64 rng(53);
  Evaluator ev(sl2_category(7));
  for (int it = 0; it < 100; ++it) {
    PlumbingForest f = random_forest(rng, 10, 5);
    std::vector<int> colors;
    for (int v = 0; v < f.size(); ++v) colors.push_back(static_cast<int>(rng() % 6));
    CHECK(ev.eval_colored(f, colors, 0) == ev.eval_colored(f, colors, static_cast<int>(rng() % f.size())));
  }
}

TEST_CASE("zero dimensions on internal vertices are reported") {
  CategoryData c = sl2_category(4);
  c.qdim[1] = CycloNumber(c.field);
  Evaluator ev(c);
  CHECK_THROWS_AS(ev.eval_colored(chain_forest({0, 0, 0}), {0, 1, 0}), std::domain_error);
}

TEST_CASE("wrt basics") {
  Evaluator ev(sl2_category(5));
  CHECK(wrt(ev, PlumbingForest()).exact.is_one());
  CHECK(wrt(ev, chain_forest({1})).exact.is_one());
  CHECK(wrt(ev, chain_forest({-1})).exact.is_one());
  CHECK(wrt(ev, chain_forest({0})).exact == sum_dim_squares(ev.category(), [](int) { return true; }));
  InvariantValue v = wrt(ev, e8_forest());
  CHECK(v.b_plus == 8);
  CHECK(std::abs(v.approx - v.exact.embed_complex()) < 1e-9);
}

TEST_CASE("wrt agrees with a floating-point evaluation of the closed-form data") {
  std::mt19937_64 rng(57);
  for (int r : {4, 5, 7}) {
    Evaluator ev(sl2_category(r));
    FloatSl2 fl(r);
    for (int it = 0; it < 25; ++it) {
      PlumbingForest f = random_forest(rng, 4, 4);
      cd expect = fl.wrt(f);
      CHECK(std::abs(wrt(ev, f).exact.embed_complex() - expect) < 1e-7 * (1 + std::abs(expect)));
    }
    CHECK(std::abs(wrt(ev, lens_chain(7, 3)).exact.embed_complex() - fl.wrt(lens_chain(7, 3))) < 1e-8);
  }
}

TEST_CASE("spin refinement on sl2(8)") {
  Evaluator ev(sl2_category(8));
  Grading g = grading(ev.category());
  auto t = wrt_spin(ev, chain_forest({1}), g);
  REQUIRE(t.keys == std::vector<IntVector>{{1}});
  CHECK(t.values[0].exact.is_one());
  auto z = wrt_spin(ev, chain_forest({0}), g);
  REQUIRE(z.keys.size() == 2);
  CHECK(z.values[0].exact == sum_dim_squares(ev.category(), [](int l) { return l % 2 == 0; }));
  CHECK(z.values[1].exact == sum_dim_squares(ev.category(), [](int l) { return l % 2 == 1; }));
  CHECK(z.sum() == wrt(ev, chain_forest({0})).exact);
  CHECK_THROWS_AS(wrt_cohomology(ev, chain_forest({1}), g), HypothesisError);
}

TEST_CASE("cohomological refinement on sl2(6)") {
  Evaluator ev(sl2_category(6));
  Grading g = grading(ev.category());
  auto t = wrt_cohomology(ev, chain_forest({1}), g);
  REQUIRE(t.keys == std::vector<IntVector>{{0}});
  CHECK(t.values[0].exact.is_one());
  auto z = wrt_cohomology(ev, chain_forest({0}), g);
  REQUIRE(z.keys.size() == 2);
  CHECK(z.values[0].exact == sum_dim_squares(ev.category(), [](int l) { return l % 2 == 0; }));
  CHECK(z.values[1].exact == sum_dim_squares(ev.category(), [](int l) { return l % 2 == 1; }));
  CHECK_THROWS_AS(wrt_spin(ev, chain_forest({1}), g), HypothesisError);
  Evaluator odd(sl2_category(5));
  CHECK_THROWS_AS(wrt_cohomology(odd, chain_forest({1}), grading(odd.category())), HypothesisError);
}

TEST_CASE("sum formulas on random forests") {
  std::mt19937_64 rng(59);
  Evaluator e8(sl2_category(8)), e6(sl2_category(6));
  Grading g8 = grading(e8.category()), g6 = grading(e6.category());
  for (int it = 0; it < 30; ++it) {
    PlumbingForest f = random_forest(rng, 6, 5);
    auto s = wrt_spin(e8, f, g8);
    if (!s.values.empty()) CHECK(s.sum() == wrt(e8, f).exact);
    else CHECK(wrt(e8, f).exact.is_zero());
    CHECK(wrt_cohomology(e6, f, g6).sum() == wrt(e6, f).exact);
  }
}

TEST_CASE("homology refinement") {
  Evaluator ev(sl2_category(6));
  const auto& c = ev.category();
  Grading g = grading(c);
  auto u = wrt_homology(ev, chain_forest({1}), g);
  REQUIRE(u.values.size() == 1);
  CHECK(u.values[0].exact.is_one());
  auto z = wrt_homology(ev, chain_forest({0}), g);
  REQUIRE(z.keys.size() == 2);
  // Class e: (1/2) Σ_λ (-1)^{e deg λ} ⟨λ⟩²
  CycloNumber even = sum_dim_squares(c, [](int l) { return l % 2 == 0; });
  CycloNumber odd = sum_dim_squares(c, [](int l) { return l % 2 == 1; });
  CHECK(z.values[0].exact == (even + odd).scaled(mpq_class(1, 2)));
  CHECK(z.values[1].exact == (even - odd).scaled(mpq_class(1, 2)));
}

TEST_CASE("homology classes partition the full dual-color sum") {
  std::mt19937_64 rng(61);
  Evaluator ev(sl2_category(6));
  Grading g = grading(ev.category());
  for (int it = 0; it < 15; ++it) {
    PlumbingForest f = random_forest(rng, 4, 4);
    const int n = f.size();
    CycloNumber total(ev.field());
    IntVector e(static_cast<size_t>(n), 0);
    while (true) {
      std::vector<Weights> w;
      for (long x : e) w.push_back(kirby_color(ev.category(), KirbyKind::Dual, static_cast<int>(x), &g).weights);
      total += ev.eval_weighted(f, w);
      int k = n - 1;
      while (k >= 0 && ++e[static_cast<size_t>(k)] == 2) e[static_cast<size_t>(k--)] = 0;
      if (k < 0) break;
    }
    total = normalize(ev, linking_matrix(f), total.scaled(mpq_class(1, 1L << n))).exact;
    CHECK(wrt_homology(ev, f, g).sum() == total);
  }
}

TEST_CASE("factored coset sums equal enumeration") {
  std::mt19937_64 rng(67);
  Evaluator ev(sl2_category(6));
  Grading g = grading(ev.category());
  const SpinExtension& ext = four_spin();
  Evaluator ex(ext.category);
  for (int it = 0; it < 20; ++it) {
    PlumbingForest f = random_forest(rng, 5, 5);
    auto a = wrt_homology(ev, f, g), b = wrt_homology(ev, f, g, CosetRoute::Enumerated);
    REQUIRE(a.keys == b.keys);
    for (size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i].exact == b.values[i].exact);
    auto c = wrt_spinc(ex, f, ext.grading), d = wrt_spinc(ex, f, ext.grading, false, CosetRoute::Enumerated);
    REQUIRE(c.keys == d.keys);
    for (size_t i = 0; i < c.values.size(); ++i) CHECK(c.values[i].exact == d.values[i].exact);
  }
}

TEST_CASE("complex-spin refinement") {
  const SpinExtension& ext = four_spin();
  Evaluator ev(ext.category);
  CHECK(ext.grading.modulus % 4 == 0);
  auto u = wrt_spinc(ev, chain_forest({1}), ext.grading);
  REQUIRE(u.values.size() == 1);
  CHECK(u.values[0].exact.is_one());
  auto um = wrt_spinc(ev, chain_forest({-1}), ext.grading);
  CHECK(um.values[0].exact.is_one());
  Evaluator e8(sl2_category(8));
  Grading g8 = grading(e8.category());
  CHECK_THROWS_AS(wrt_spinc(e8, chain_forest({1}), g8), HypothesisError);
  CHECK_NOTHROW(wrt_spinc(e8, chain_forest({1}), g8, true));
}

TEST_CASE("dual colors on a reversed vertex") {
  std::mt19937_64 rng(71);
  Evaluator ev(abelian_category(4, make_root(8, 1)));
  Grading g = grading(ev.category());
  for (int it = 0; it < 30; ++it) {
    PlumbingForest f = random_forest(rng, 4, 4);
    const int v = static_cast<int>(rng() % f.size());
    const int x = static_cast<int>(rng() % g.modulus);
    std::vector<Weights> w(static_cast<size_t>(f.size()), ev.plain_weights()), wr = w;
    w[static_cast<size_t>(v)] = kirby_color(ev.category(), KirbyKind::Dual, x, &g).weights;
    wr[static_cast<size_t>(v)] = kirby_color(ev.category(), KirbyKind::Dual, (g.modulus - x) % g.modulus, &g).weights;
    CHECK(ev.eval_weighted(f, w) == ev.eval_weighted(apply_move(f, Move::reverse(v)), wr));
  }
}

TEST_CASE("Gauss-sum invariants") {
  for (int m : {2, 3, 4, 5}) {
    MooParams p{m, make_root(m % 2 ? m : 2 * m, 1), std::nullopt};
    CHECK(moo({{1}}, p).exact.is_one());
    CHECK(moo({{0}}, p).exact == CycloNumber::integer(p.xi.field(), m));
  }
  // Hyperbolic plane with m = 2, xi = i: four-term brute force.
  CycloNumber i = make_root(4, 1);
  CycloNumber num(i.field());
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) num += i.pow(2 * a * b);
  CycloNumber g = CycloNumber::integer(i.field(), 1) + i;
  InvariantValue h = moo({{0, 1}, {1, 0}}, {2, i, std::nullopt});
  CHECK(h.exact == num / (g * g.conj()));
  CHECK(h.exact.is_one());
  CHECK_THROWS(moo({{1}}, {3, make_root(5, 1), std::nullopt}));
}

TEST_CASE("refined Gauss-sum invariants") {
  CycloNumber xi = make_root(3, 1);
  MooParams plain{3, xi, std::nullopt};
  MooParams r1{3, xi, MooRefinement{1, 1, {0}, false}};
  IntMatrix L{{2, 1}, {1, -3}};
  r1.refinement->c = {0, 0};
  CHECK(moo_refined(L, r1).exact == moo(L, plain).exact);
  MooParams sp{3, xi, MooRefinement{2, 1, {1}, true}};
  CHECK(moo_refined({{1}}, sp).exact.is_one());
  CHECK_THROWS(moo_refined({{1}}, plain));
}

TEST_CASE("decomposition formula") {
  for (int r : {5, 7, 9}) {
    CategoryData c = sl2_category(r);
    DecompositionSetup s = decomposition_setup(c);
    CHECK(s.d == 2);
    CHECK(s.delta == 1);
    CHECK(s.m == 2);
    CHECK(s.reduced.size() == (r - 1) / 2);
    Evaluator full(c), red(s.reduced);
    CHECK(check_decomposition(full, red, s, chain_forest({1})).equal);
    CHECK(wrt(full, chain_forest({0})).exact == wrt(red, chain_forest({0})).exact.scaled(2));
    CHECK(check_decomposition(full, red, s, chain_forest({0})).equal);
    CHECK(check_decomposition(full, red, s, e8_forest()).equal);
  }
  CHECK_THROWS_AS(decomposition_setup(product_category(sl2_category(4), sl2_category(6))), HypothesisError);
}
