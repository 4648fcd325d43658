#include <doctest.h>

#include <cmath>
#include <random>

#include "spinmod/surgery.hpp"

using namespace spinmod;

namespace {

// Eigenvalue signs by cyclic Jacobi rotations in double precision.
SignaturePair jacobi_signature(const IntMatrix& m) {
  const size_t n = m.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = static_cast<double>(m[i][j]);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (i != j) off += a[i][j] * a[i][j];
    if (off < 1e-22) break;
    for (size_t p = 0; p < n; ++p)
      for (size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (size_t k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (size_t k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  SignaturePair s;
  for (size_t i = 0; i < n; ++i) {
    if (a[i][i] > 1e-7) ++s.b_plus;
    else if (a[i][i] < -1e-7) ++s.b_minus;
    else ++s.nullity;
  }
  return s;
}

PlumbingForest random_tree(std::mt19937_64& rng, int n) {
  std::vector<long> fr;
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) fr.push_back(static_cast<long>(rng() % 11) - 5);
  for (int i = 1; i < n; ++i) es.push_back({static_cast<int>(rng() % static_cast<unsigned>(i)), i, rng() % 2 ? 1 : -1});
  return PlumbingForest(fr, es);
}

}  // namespace

TEST_CASE("linking matrices") {
  CHECK(linking_matrix(chain_forest({7})) == IntMatrix{{7}});
  CHECK(linking_matrix(chain_forest({0, 0})) == IntMatrix{{0, 1}, {1, 0}});
  CHECK(linking_matrix(chain_forest({2, 3, 4})) == IntMatrix{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
  PlumbingForest f({1, 1}, {{0, 1, -1}});
  CHECK(linking_matrix(f) == IntMatrix{{1, -1}, {-1, 1}});
}

TEST_CASE("signatures") {
  CHECK(signature({{0, 1}, {1, 0}}) == SignaturePair{1, 1, 0});
  CHECK(signature({{5}}) == SignaturePair{1, 0, 0});
  CHECK(signature({{0}}) == SignaturePair{0, 0, 1});
  CHECK(signature(linking_matrix(e8_forest())) == SignaturePair{8, 0, 0});
  CHECK(signature({}) == SignaturePair{0, 0, 0});
}

TEST_CASE("signature agrees with Jacobi eigenvalues") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 300; ++it) {
    PlumbingForest f = random_tree(rng, 1 + static_cast<int>(rng() % 8));
    IntMatrix L = linking_matrix(f);
    CHECK(signature(L) == jacobi_signature(L));
  }
}

TEST_CASE("forest validation") {
  CHECK_THROWS(PlumbingForest({0, 0, 0}, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}));
  CHECK_THROWS(PlumbingForest({0, 0}, {{0, 1, 1}, {1, 0, -1}}));
  CHECK_THROWS(PlumbingForest({0}, {{0, 0, 1}}));
  CHECK_THROWS(PlumbingForest({0, 0}, {{0, 1, 2}}));
  CHECK_THROWS(PlumbingForest({0, 0}, {{0, 3, 1}}));
}

TEST_CASE("moves") {
  PlumbingForest iso({1}, {});
  CHECK(apply_move(iso, Move::blow_down(0)).size() == 0);
  PlumbingForest chain = chain_forest({3, 1});
  PlumbingForest down = apply_move(chain, Move::blow_down(1));
  CHECK(down == chain_forest({2}));
  CHECK_FALSE(move_is_legal(chain_forest({3, 2}), Move::blow_down(1)));
  CHECK_FALSE(move_is_legal(chain_forest({1, 1, 1}), Move::blow_down(1)));
  PlumbingForest f = chain_forest({2, -3, 4});
  for (int eps : {1, -1})
    for (int sign : {1, -1}) {
      PlumbingForest up = apply_move(f, Move::blow_up(1, eps, sign));
      CHECK(up.size() == 4);
      CHECK(up.framing(1) == -3 + eps);
      CHECK(apply_move(up, Move::blow_down(3)) == f);
    }
  PlumbingForest r = apply_move(f, Move::reverse(1));
  for (const Edge& e : r.edges()) CHECK(e.sign == -1);
  CHECK(apply_move(r, Move::reverse(1)) == f);
  CHECK(apply_move(f, Move::stabilize(-1)).framing(3) == -1);
}

TEST_CASE("moves preserve |det| and shift the signature") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 100; ++it) {
    PlumbingForest f = random_tree(rng, 1 + static_cast<int>(rng() % 6));
    SignaturePair s = signature(linking_matrix(f));
    int eps = rng() % 2 ? 1 : -1;
    SignaturePair t = signature(linking_matrix(apply_move(f, Move::blow_up(static_cast<int>(rng() % f.size()), eps, 1))));
    CHECK(t.nullity == s.nullity);
    CHECK(t.b_plus == s.b_plus + (eps > 0));
    CHECK(t.b_minus == s.b_minus + (eps < 0));
  }
}

TEST_CASE("forest text format") {
  PlumbingForest f = parse_forest("# a comment\nvertex 10 framing -2\nvertex 3 framing 5\nedge 10 3 -1\n\n");
  CHECK(f.size() == 2);
  CHECK(f.framing(0) == 5);
  CHECK(f.framing(1) == -2);
  CHECK(f.edges()[0].sign == -1);
  CHECK(parse_forest(format_forest(e8_forest())) == e8_forest());
  CHECK_THROWS(parse_forest("vertex 0 framing x\n"));
  CHECK_THROWS(parse_forest("vertex 0 framing 1\nvertex 0 framing 2\n"));
  CHECK_THROWS(parse_forest("vertex 0 framing 1\nedge 0 1 1\n"));
  CHECK_THROWS(parse_forest("knot 0\n"));
  CHECK_THROWS(parse_forest("vertex 0 framing 1 extra\n"));
}
