#include "spinmod/category.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace spinmod {

namespace {

long mod(long a, long m) { return ((a % m) + m) % m; }

std::string label_of(const CategoryData& cat, int i) { return cat.labels[static_cast<size_t>(i)]; }

CycloNumber zero(const Field& f) { return CycloNumber(f); }
CycloNumber one(const Field& f) { return CycloNumber::integer(f, 1); }

// Extended gcd, returns g with a*x + b*y = g.
long ext_gcd(long a, long b, long& x, long& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::abs(a);
  }
  long x1, y1;
  long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace

void CategoryData::validate_shape() const {
  if (!field) throw std::invalid_argument("category: missing field");
  const size_t n = labels.size();
  if (n == 0) throw std::invalid_argument("category: no labels");
  if (dual.size() != n || qdim.size() != n || twist.size() != n || smatrix.size() != n)
    throw std::invalid_argument("category: per-label arrays have inconsistent lengths");
  for (const auto& row : smatrix)
    if (row.size() != n) throw std::invalid_argument("category: S matrix is not square");
  if (fusion.size() != n * n * n) throw std::invalid_argument("category: fusion tensor has wrong size");
  auto same = [&](const CycloNumber& x) {
    if (!x.valid() || x.field() != field) throw std::invalid_argument("category: value outside the category field");
  };
  for (size_t i = 0; i < n; ++i) {
    same(qdim[i]);
    same(twist[i]);
    for (const auto& v : smatrix[i]) same(v);
    if (dual[i] < 0 || static_cast<size_t>(dual[i]) >= n) throw std::invalid_argument("category: dual out of range");
  }
  for (int c : fusion)
    if (c < 0) throw std::invalid_argument("category: negative fusion coefficient");
}

bool operator==(const CategoryData& a, const CategoryData& b) {
  return a.field == b.field && a.labels == b.labels && a.dual == b.dual && a.qdim == b.qdim &&
         a.twist == b.twist && a.smatrix == b.smatrix && a.fusion == b.fusion;
}

int matrix_rank(CycloMatrix m) {
  const size_t rows = m.size();
  if (rows == 0) return 0;
  const size_t cols = m[0].size();
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t piv = rows;
    for (size_t r = rank; r < rows; ++r) {
      if (!m[r][c].is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv == rows) continue;
    std::swap(m[rank], m[piv]);
    CycloNumber inv = m[rank][c].inverse();
    for (size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c].is_zero()) continue;
      CycloNumber f = m[r][c] * inv;
      for (size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

AxiomReport check_axioms(const CategoryData& cat) {
  cat.validate_shape();
  AxiomReport rep;
  const int n = cat.size();
  const Field& F = cat.field;
  auto fail = [&](const std::string& msg) { rep.violations.push_back(msg); };

  if (cat.dual[0] != 0) fail("dual of the unit is not the unit");
  if (!cat.qdim[0].is_one()) fail("unit has dimension != 1");
  if (!cat.twist[0].is_one()) fail("unit has twist != 1");
  if (!cat.smatrix[0][0].is_one()) fail("S[0][0] != 1");
  for (int a = 0; a < n; ++a) {
    int da = cat.dual[static_cast<size_t>(a)];
    if (cat.dual[static_cast<size_t>(da)] != a) fail("dual is not an involution at " + label_of(cat, a));
    if (cat.qdim[static_cast<size_t>(a)] != cat.qdim[static_cast<size_t>(da)])
      fail("dimension of " + label_of(cat, a) + " differs from its dual");
    if (cat.twist[static_cast<size_t>(a)] != cat.twist[static_cast<size_t>(da)])
      fail("twist of " + label_of(cat, a) + " differs from its dual");
    if (cat.smatrix[static_cast<size_t>(a)][0] != cat.qdim[static_cast<size_t>(a)])
      fail("S[" + label_of(cat, a) + "][0] != dimension");
    for (int b = 0; b < n; ++b) {
      if (cat.smatrix[static_cast<size_t>(a)][static_cast<size_t>(b)] !=
          cat.smatrix[static_cast<size_t>(b)][static_cast<size_t>(a)])
        fail("S is not symmetric at (" + label_of(cat, a) + "," + label_of(cat, b) + ")");
    }
  }

  // Fusion: unit, duality, commutativity, associativity.
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      if (cat.N(a, 0, c) != (a == c ? 1 : 0) || cat.N(0, a, c) != (a == c ? 1 : 0))
        fail("unit fusion rule broken at " + label_of(cat, a));
    }
    for (int b = 0; b < n; ++b) {
      if (cat.N(a, b, 0) != (b == cat.dual[static_cast<size_t>(a)] ? 1 : 0))
        fail("N^0 rule broken at (" + label_of(cat, a) + "," + label_of(cat, b) + ")");
      for (int c = 0; c < n; ++c)
        if (cat.N(a, b, c) != cat.N(b, a, c)) fail("fusion not commutative at (" + label_of(cat, a) + "," + label_of(cat, b) + ")");
    }
  }
  bool assoc_ok = true;
  for (int a = 0; a < n && assoc_ok; ++a)
    for (int b = 0; b < n && assoc_ok; ++b)
      for (int c = 0; c < n && assoc_ok; ++c)
        for (int s = 0; s < n && assoc_ok; ++s) {
          long lhs = 0, rhs = 0;
          for (int r = 0; r < n; ++r) {
            lhs += static_cast<long>(cat.N(a, b, r)) * cat.N(r, c, s);
            rhs += static_cast<long>(cat.N(b, c, r)) * cat.N(a, r, s);
          }
          if (lhs != rhs) {
            fail("fusion not associative at (" + label_of(cat, a) + "," + label_of(cat, b) + "," + label_of(cat, c) + ")");
            assoc_ok = false;
          }
        }

  // Dimensions are multiplicative and the ribbon relation θ_a θ_b S_ab = Σ N θ_c ⟨c⟩ holds.
  std::vector<CycloNumber> td(static_cast<size_t>(n));
  for (int c = 0; c < n; ++c) td[static_cast<size_t>(c)] = cat.twist[static_cast<size_t>(c)] * cat.qdim[static_cast<size_t>(c)];
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      CycloNumber dims = zero(F), rib = zero(F);
      for (int c = 0; c < n; ++c) {
        int k = cat.N(a, b, c);
        if (k == 0) continue;
        dims += cat.qdim[static_cast<size_t>(c)].scaled(static_cast<long>(k));
        rib += td[static_cast<size_t>(c)].scaled(static_cast<long>(k));
      }
      if (dims != cat.qdim[static_cast<size_t>(a)] * cat.qdim[static_cast<size_t>(b)])
        fail("dimensions not multiplicative at (" + label_of(cat, a) + "," + label_of(cat, b) + ")");
      if (cat.twist[static_cast<size_t>(a)] * cat.twist[static_cast<size_t>(b)] *
              cat.smatrix[static_cast<size_t>(a)][static_cast<size_t>(b)] != rib)
        fail("ribbon relation fails at (" + label_of(cat, a) + "," + label_of(cat, b) + ")");
    }
  }
  rep.premodular = rep.violations.empty();

  for (int a = 0; a < n; ++a) {
    bool transparent = true;
    for (int b = 0; b < n && transparent; ++b)
      transparent = cat.smatrix[static_cast<size_t>(a)][static_cast<size_t>(b)] ==
                    cat.qdim[static_cast<size_t>(a)] * cat.qdim[static_cast<size_t>(b)];
    if (transparent) rep.transparent.push_back(a);
  }
  rep.smatrix_rank = matrix_rank(cat.smatrix);
  rep.modular = rep.premodular && rep.smatrix_rank == n;
  rep.global_dimension = zero(F);
  for (const auto& q : cat.qdim) rep.global_dimension += q * q;
  if (!rep.global_dimension.is_zero())
    rep.criteria_agree = (rep.smatrix_rank == n) == (rep.transparent.size() == 1);
  if (rep.premodular && !rep.criteria_agree)
    rep.violations.push_back("rank test and transparency test disagree");
  return rep;
}

// ---------------------------------------------------------------------------

int InvertibleGroup::index_of(int label) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), label);
  if (it == elements.end() || *it != label) return -1;
  return static_cast<int>(it - elements.begin());
}

int InvertibleGroup::multiply(int a, int b) const {
  int i = index_of(a), j = index_of(b);
  if (i < 0 || j < 0) throw std::invalid_argument("InvertibleGroup: label is not invertible");
  return table[static_cast<size_t>(i)][static_cast<size_t>(j)];
}

int InvertibleGroup::power(int a, long k) const {
  int o = order_of(a);
  long e = mod(k, o);
  int r = 0;
  for (long i = 0; i < e; ++i) r = multiply(r, a);
  return r;
}

int InvertibleGroup::order_of(int label) const {
  int i = index_of(label);
  if (i < 0) throw std::invalid_argument("InvertibleGroup: label is not invertible");
  return element_orders[static_cast<size_t>(i)];
}

InvertibleGroup invertibles(const CategoryData& cat) {
  const int n = cat.size();
  InvertibleGroup g;
  for (int a = 0; a < n; ++a) {
    bool inv = cat.N(a, cat.dual[static_cast<size_t>(a)], 0) == 1;
    for (int b = 0; b < n && inv; ++b) {
      long total = 0;
      for (int c = 0; c < n; ++c) total += cat.N(a, b, c);
      inv = total == 1;
    }
    if (inv) g.elements.push_back(a);
  }
  for (int a : g.elements) {
    std::vector<int> row;
    for (int b : g.elements) {
      int prod = -1;
      for (int c = 0; c < n; ++c)
        if (cat.N(a, b, c) == 1) prod = c;
      row.push_back(prod);
    }
    g.table.push_back(row);
  }
  for (size_t i = 0; i < g.elements.size(); ++i) {
    int x = g.elements[i], k = 1;
    while (x != 0) {
      x = g.table[i][static_cast<size_t>(g.index_of(x))];
      ++k;
      if (k > g.order() + 1) throw std::runtime_error("invertibles: group table is inconsistent");
    }
    g.element_orders.push_back(k);
  }
  for (size_t i = 0; i < g.elements.size(); ++i) {
    if (g.element_orders[i] == g.order()) {
      g.generator = g.elements[i];
      break;
    }
  }
  return g;
}

CycloNumber character(const CategoryData& cat, int lambda, int g) {
  return cat.smatrix[static_cast<size_t>(lambda)][static_cast<size_t>(g)] /
         (cat.qdim[static_cast<size_t>(lambda)] * cat.qdim[static_cast<size_t>(g)]);
}

CycloMatrix character_table(const CategoryData& cat, const InvertibleGroup& group) {
  CycloMatrix t(static_cast<size_t>(cat.size()));
  for (int l = 0; l < cat.size(); ++l)
    for (int g : group.elements) t[static_cast<size_t>(l)].push_back(character(cat, l, g));
  return t;
}

CycloNumber primitive_root(const Field& field, int d, int k) {
  if (d < 1) throw std::invalid_argument("primitive_root: modulus must be positive");
  if (field->order() % d != 0)
    throw std::invalid_argument("primitive_root: Q(zeta_" + std::to_string(field->order()) +
                                ") has no primitive " + std::to_string(d) + "-th root");
  if (std::gcd(mod(k, d), static_cast<long>(d)) != 1 && d > 1)
    throw std::invalid_argument("primitive_root: exponent " + std::to_string(k) + " is not a unit mod " + std::to_string(d));
  return CycloNumber::root(field, static_cast<long>(field->order() / d) * k);
}

Grading make_grading(const CategoryData& cat, const InvertibleGroup& group, int t, std::optional<CycloNumber> e_d) {
  if (!group.contains(t)) throw std::invalid_argument("grading: generator is not invertible");
  Grading gr;
  gr.modulus = group.order_of(t);
  gr.generator = t;
  gr.primitive_root = e_d ? *e_d : primitive_root(cat.field, gr.modulus);
  if (gr.primitive_root.field() != cat.field) throw FieldMismatch("grading: e_d lies in a different field");
  // Powers of e_d, checking primitivity on the way.
  std::vector<CycloNumber> powers;
  CycloNumber p = one(cat.field);
  for (int k = 0; k < gr.modulus; ++k) {
    if (k > 0 && p.is_one()) throw std::invalid_argument("grading: e_d is not a primitive root of the required order");
    powers.push_back(p);
    p = p * gr.primitive_root;
  }
  if (!p.is_one()) throw std::invalid_argument("grading: e_d has the wrong order");
  for (int l = 0; l < cat.size(); ++l) {
    CycloNumber chi = character(cat, l, t);
    int found = -1;
    for (int k = 0; k < gr.modulus; ++k)
      if (powers[static_cast<size_t>(k)] == chi) found = k;
    if (found < 0)
      throw std::runtime_error("grading: character value of " + label_of(cat, l) + " at t is not a power of e_d");
    gr.degree.push_back(found);
  }
  return gr;
}

Grading default_grading(const CategoryData& cat, const InvertibleGroup& group) {
  if (!group.generator) throw std::invalid_argument("grading: group of invertibles is not cyclic; pass a generator");
  return make_grading(cat, group, *group.generator);
}

Grading grading_of_order(const CategoryData& cat, const InvertibleGroup& group, int modulus, int e_d_power) {
  if (!group.generator) throw std::invalid_argument("grading: group of invertibles is not cyclic");
  if (modulus < 1 || group.order() % modulus != 0)
    throw std::invalid_argument("grading: modulus " + std::to_string(modulus) + " does not divide |G| = " +
                                std::to_string(group.order()));
  const int t = group.power(*group.generator, group.order() / modulus);
  return make_grading(cat, group, t, primitive_root(cat.field, modulus, e_d_power));
}

std::vector<RefinableStructure> refinable_structures(const CategoryData& cat, const InvertibleGroup& group,
                                                     const Grading& grading) {
  std::vector<int> zero_degree;
  for (int g : group.elements)
    if (grading.degree[static_cast<size_t>(g)] == 0) zero_degree.push_back(g);
  // Enumerate subgroups of the degree-zero part by closing under generated joins.
  auto close = [&](std::set<int> s) {
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> cur(s.begin(), s.end());
      for (int a : cur)
        for (int b : cur)
          if (s.insert(group.multiply(a, b)).second) grew = true;
    }
    return s;
  };
  std::set<std::set<int>> subgroups{{0}};
  bool grew = true;
  while (grew) {
    grew = false;
    auto snapshot = subgroups;
    for (const auto& h : snapshot) {
      for (int g : zero_degree) {
        if (h.count(g)) continue;
        std::set<int> s = h;
        s.insert(g);
        if (subgroups.insert(close(s)).second) grew = true;
      }
    }
  }
  std::vector<RefinableStructure> out;
  for (const auto& h : subgroups) {
    RefinableStructure rs;
    rs.subgroup.assign(h.begin(), h.end());
    rs.order = static_cast<int>(h.size());
    for (int x : rs.subgroup) {
      const CycloNumber& th = cat.twist[static_cast<size_t>(x)];
      int sign = th.is_one() ? 1 : ((-th).is_one() ? -1 : 0);
      if (sign == -1) rs.is_spin = true;
      rs.spin_character.push_back(sign);
    }
    out.push_back(rs);
  }
  std::sort(out.begin(), out.end(), [](const RefinableStructure& a, const RefinableStructure& b) {
    return a.order != b.order ? a.order < b.order : a.subgroup < b.subgroup;
  });
  return out;
}

KirbyColor kirby_color(const CategoryData& cat, KirbyKind kind, int parameter, const Grading* grading) {
  KirbyColor k;
  k.kind = kind;
  k.parameter = parameter;
  if (kind != KirbyKind::Plain) {
    if (!grading) throw std::invalid_argument("kirby_color: graded and dual colors need a grading");
    if (parameter < 0 || parameter >= grading->modulus)
      throw std::invalid_argument("kirby_color: parameter out of range [0, d)");
  }
  for (int l = 0; l < cat.size(); ++l) {
    const CycloNumber& q = cat.qdim[static_cast<size_t>(l)];
    switch (kind) {
      case KirbyKind::Plain:
        k.weights.push_back(q);
        break;
      case KirbyKind::Graded:
        k.weights.push_back(grading->degree[static_cast<size_t>(l)] == parameter ? q : zero(cat.field));
        break;
      case KirbyKind::Dual:
        k.weights.push_back(grading->primitive_root.pow(static_cast<long>(parameter) * grading->degree[static_cast<size_t>(l)]) * q);
        break;
    }
  }
  return k;
}

// ---------------------------------------------------------------------------

CategoryData sl2_category(int r, Sl2Convention convention) {
  if (r < 3) throw std::invalid_argument("sl2_category: r must be at least 3");
  CategoryData c;
  c.name = "sl2(" + std::to_string(r) + ")";
  c.field = CycloField::get(4 * r);
  const int n = r - 1;
  const Field& F = c.field;
  auto A = [&](long k) { return CycloNumber::root(F, k); };
  const CycloNumber denom_inv = (A(2) - A(-2)).inverse();
  auto qint = [&](long k) { return (A(2 * k) - A(-2 * k)) * denom_inv; };
  auto sign = [](long k) { return (k % 2 == 0) ? 1L : -1L; };
  for (int i = 0; i < n; ++i) {
    c.labels.push_back(std::to_string(i));
    c.dual.push_back(i);
    c.qdim.push_back(qint(i + 1).scaled(sign(i)));
    CycloNumber th = A(static_cast<long>(i) * i + 2L * i);
    if (convention == Sl2Convention::Kauffman) th = th.scaled(sign(i));
    c.twist.push_back(th);
  }
  c.smatrix.assign(static_cast<size_t>(n), std::vector<CycloNumber>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      c.smatrix[static_cast<size_t>(i)][static_cast<size_t>(j)] = qint(static_cast<long>(i + 1) * (j + 1)).scaled(sign(i + j));
  c.fusion.assign(static_cast<size_t>(n * n * n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = std::abs(i - j); k <= std::min(i + j, 2 * (r - 2) - i - j); k += 2) c.N(i, j, k) = 1;
  return c;
}

CategoryData abelian_category(int n, const CycloNumber& q) {
  if (n < 1) throw std::invalid_argument("abelian_category: N must be positive");
  if (!q.valid()) throw std::invalid_argument("abelian_category: q is uninitialised");
  if (!q.pow(2L * n).is_one()) throw std::invalid_argument("abelian_category: q^{2N} != 1");
  CategoryData c;
  c.name = "abelian(" + std::to_string(n) + ")";
  c.field = q.field();
  for (int j = 0; j < n; ++j) {
    c.labels.push_back(std::to_string(j));
    c.dual.push_back(static_cast<int>(mod(-j, n)));
    c.qdim.push_back(one(c.field));
    c.twist.push_back(q.pow(static_cast<long>(j) * j));
  }
  c.smatrix.assign(static_cast<size_t>(n), std::vector<CycloNumber>(static_cast<size_t>(n)));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) c.smatrix[static_cast<size_t>(j)][static_cast<size_t>(k)] = q.pow(2L * j * k);
  c.fusion.assign(static_cast<size_t>(n) * n * n, 0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) c.N(j, k, (j + k) % n) = 1;
  return c;
}

CategoryData trivial_category() {
  CategoryData c;
  c.name = "trivial";
  c.field = CycloField::get(1);
  c.labels = {"1"};
  c.dual = {0};
  c.qdim = {one(c.field)};
  c.twist = {one(c.field)};
  c.smatrix = {{one(c.field)}};
  c.fusion = {1};
  return c;
}

Field common_field(const Field& a, const Field& b) { return CycloField::get(std::lcm(a->order(), b->order())); }

CategoryData lift_field(const CategoryData& cat, const Field& target) {
  if (target == cat.field) return cat;
  CategoryData c = cat;
  c.field = target;
  for (auto& v : c.qdim) v = v.lift(target);
  for (auto& v : c.twist) v = v.lift(target);
  for (auto& row : c.smatrix)
    for (auto& v : row) v = v.lift(target);
  return c;
}

CategoryData product_category(const CategoryData& a0, const CategoryData& b0) {
  Field F = common_field(a0.field, b0.field);
  CategoryData a = lift_field(a0, F), b = lift_field(b0, F);
  const int na = a.size(), nb = b.size(), n = na * nb;
  CategoryData c;
  c.name = a.name + "*" + b.name;
  c.field = F;
  auto idx = [nb](int i, int j) { return i * nb + j; };
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      c.labels.push_back("(" + a.labels[static_cast<size_t>(i)] + "," + b.labels[static_cast<size_t>(j)] + ")");
      c.dual.push_back(idx(a.dual[static_cast<size_t>(i)], b.dual[static_cast<size_t>(j)]));
      c.qdim.push_back(a.qdim[static_cast<size_t>(i)] * b.qdim[static_cast<size_t>(j)]);
      c.twist.push_back(a.twist[static_cast<size_t>(i)] * b.twist[static_cast<size_t>(j)]);
    }
  c.smatrix.assign(static_cast<size_t>(n), std::vector<CycloNumber>(static_cast<size_t>(n)));
  c.fusion.assign(static_cast<size_t>(n) * n * n, 0);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < na; ++k)
        for (int l = 0; l < nb; ++l) {
          c.smatrix[static_cast<size_t>(idx(i, j))][static_cast<size_t>(idx(k, l))] =
              a.smatrix[static_cast<size_t>(i)][static_cast<size_t>(k)] * b.smatrix[static_cast<size_t>(j)][static_cast<size_t>(l)];
          for (int p = 0; p < na; ++p) {
            int x = a.N(i, k, p);
            if (x == 0) continue;
            for (int q = 0; q < nb; ++q) c.N(idx(i, j), idx(k, l), idx(p, q)) = x * b.N(j, l, q);
          }
        }
  return c;
}

CategoryData reduced_subcategory(const CategoryData& cat, const Grading& grading, int m) {
  if (m < 1 || grading.modulus % m != 0)
    throw std::invalid_argument("reduced_subcategory: m must divide the grading modulus");
  std::vector<int> keep;
  for (int l = 0; l < cat.size(); ++l)
    if (grading.degree[static_cast<size_t>(l)] % m == 0) keep.push_back(l);
  std::vector<int> pos(static_cast<size_t>(cat.size()), -1);
  for (size_t i = 0; i < keep.size(); ++i) pos[static_cast<size_t>(keep[i])] = static_cast<int>(i);
  for (int a : keep)
    for (int b : keep)
      for (int c = 0; c < cat.size(); ++c)
        if (cat.N(a, b, c) != 0 && pos[static_cast<size_t>(c)] < 0)
          throw std::runtime_error("reduced_subcategory: label set is not closed under fusion");
  CategoryData r;
  r.name = cat.name + "~" + std::to_string(m);
  r.field = cat.field;
  const size_t n = keep.size();
  for (int a : keep) {
    r.labels.push_back(cat.labels[static_cast<size_t>(a)]);
    r.dual.push_back(pos[static_cast<size_t>(cat.dual[static_cast<size_t>(a)])]);
    r.qdim.push_back(cat.qdim[static_cast<size_t>(a)]);
    r.twist.push_back(cat.twist[static_cast<size_t>(a)]);
  }
  r.smatrix.assign(n, std::vector<CycloNumber>(n));
  r.fusion.assign(n * n * n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      r.smatrix[i][j] = cat.smatrix[static_cast<size_t>(keep[i])][static_cast<size_t>(keep[j])];
      for (size_t k = 0; k < n; ++k) r.N(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)) = cat.N(keep[i], keep[j], keep[k]);
    }
  return r;
}

CategoryData sign_regauge(const CategoryData& cat, const Grading& grading) {
  if (grading.modulus % 2 != 0) throw std::invalid_argument("sign_regauge: grading modulus must be even");
  CategoryData c = cat;
  c.name = cat.name + "'";
  auto s = [&](int l) { return (grading.degree[static_cast<size_t>(l)] % 2 == 0) ? 1L : -1L; };
  for (int l = 0; l < c.size(); ++l) {
    c.qdim[static_cast<size_t>(l)] = c.qdim[static_cast<size_t>(l)].scaled(s(l));
    c.twist[static_cast<size_t>(l)] = c.twist[static_cast<size_t>(l)].scaled(s(l));
    for (int m = 0; m < c.size(); ++m)
      c.smatrix[static_cast<size_t>(l)][static_cast<size_t>(m)] = c.smatrix[static_cast<size_t>(l)][static_cast<size_t>(m)].scaled(s(l) * s(m));
  }
  return c;
}

CategoryData extend_category(const CategoryData& cat0, const Grading& grading, int alpha, const CycloNumber& xi0,
                             const std::vector<int>& f) {
  const int d = grading.modulus;
  if (alpha < 1) throw std::invalid_argument("extend_category: alpha must be positive");
  if (static_cast<int>(f.size()) != cat0.size()) throw std::invalid_argument("extend_category: f has wrong length");
  const long ad = static_cast<long>(alpha) * d;
  for (int l = 0; l < cat0.size(); ++l) {
    long v = f[static_cast<size_t>(l)];
    if (v < 0 || v >= ad) throw std::invalid_argument("extend_category: f values must lie in [0, alpha*d)");
    if (mod(v - grading.degree[static_cast<size_t>(l)], d) != 0)
      throw std::invalid_argument("extend_category: f is not congruent to deg mod d at " + label_of(cat0, l));
  }
  Field F = common_field(cat0.field, xi0.field());
  CategoryData cat = lift_field(cat0, F);
  CycloNumber xi = xi0.lift(F);
  const long xi_order = (d % 2 == 0) ? 2 * ad : ad;
  if (!xi.pow(xi_order).is_one())
    throw std::invalid_argument("extend_category: xi^" + std::to_string(xi_order) + " != 1");
  const CycloNumber xinv = xi.inverse();

  const int n = cat.size();
  const int nn = n * alpha;
  auto idx = [alpha](int v, int k) { return v * alpha + k; };
  auto fval = [&](int v, int k) { return mod(f[static_cast<size_t>(v)] + static_cast<long>(d) * k, ad); };
  CategoryData c;
  c.name = cat.name + "^ext" + std::to_string(alpha);
  c.field = F;
  for (int v = 0; v < n; ++v)
    for (int k = 0; k < alpha; ++k) {
      c.labels.push_back("(" + cat.labels[static_cast<size_t>(v)] + "," + std::to_string(k) + ")");
      int vd = cat.dual[static_cast<size_t>(v)];
      long target = mod(-fval(v, k) - f[static_cast<size_t>(vd)], ad);
      if (target % d != 0) throw std::runtime_error("extend_category: no dual lift for " + label_of(cat, v));
      c.dual.push_back(idx(vd, static_cast<int>(mod(target / d, alpha))));
      c.qdim.push_back(cat.qdim[static_cast<size_t>(v)]);
      long fv = fval(v, k);
      c.twist.push_back(xinv.pow(fv * fv) * cat.twist[static_cast<size_t>(v)]);
    }
  c.smatrix.assign(static_cast<size_t>(nn), std::vector<CycloNumber>(static_cast<size_t>(nn)));
  for (int v = 0; v < n; ++v)
    for (int k = 0; k < alpha; ++k)
      for (int w = 0; w < n; ++w)
        for (int l = 0; l < alpha; ++l)
          c.smatrix[static_cast<size_t>(idx(v, k))][static_cast<size_t>(idx(w, l))] =
              xinv.pow(2 * fval(v, k) * fval(w, l)) * cat.smatrix[static_cast<size_t>(v)][static_cast<size_t>(w)];
  c.fusion.assign(static_cast<size_t>(nn) * nn * nn, 0);
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w)
      for (int u = 0; u < n; ++u) {
        int mult = cat.N(v, w, u);
        if (mult == 0) continue;
        long shift = f[static_cast<size_t>(v)] + f[static_cast<size_t>(w)] - f[static_cast<size_t>(u)];
        if (shift % d != 0)
          throw std::runtime_error("extend_category: cocycle shift is not integral for (" + label_of(cat, v) + "," +
                                   label_of(cat, w) + "," + label_of(cat, u) + ")");
        long chi = shift / d;
        for (int k = 0; k < alpha; ++k)
          for (int l = 0; l < alpha; ++l) c.N(idx(v, k), idx(w, l), idx(u, static_cast<int>(mod(k + l + chi, alpha)))) = mult;
      }
  return c;
}

CategoryData modularize(const CategoryData& cat) {
  AxiomReport rep = check_axioms(cat);
  if (!rep.premodular) throw std::runtime_error("modularize: input is not premodular: " + rep.violations.front());
  const int n = cat.size();
  InvertibleGroup g = invertibles(cat);
  for (int t : rep.transparent) {
    if (!g.contains(t)) throw std::runtime_error("modularize: transparent object " + label_of(cat, t) + " is not invertible");
    if (!cat.twist[static_cast<size_t>(t)].is_one())
      throw std::runtime_error("modularize: transparent object " + label_of(cat, t) + " has nontrivial twist");
    if (!cat.qdim[static_cast<size_t>(t)].is_one())
      throw std::runtime_error("modularize: transparent object " + label_of(cat, t) + " has dimension != 1");
  }
  const auto& T = rep.transparent;
  auto act = [&](int t, int l) {
    for (int c = 0; c < n; ++c)
      if (cat.N(t, l, c) == 1) return c;
    throw std::runtime_error("modularize: fusion with an invertible object is not simple");
  };
  std::vector<int> orbit_of(static_cast<size_t>(n), -1);
  std::vector<int> reps;
  for (int l = 0; l < n; ++l) {
    if (orbit_of[static_cast<size_t>(l)] >= 0) continue;
    std::set<int> orbit;
    for (int t : T) orbit.insert(act(t, l));
    if (orbit.size() != T.size()) throw std::runtime_error("modularize: action on " + label_of(cat, l) + " is not free");
    for (int x : orbit) {
      if (orbit_of[static_cast<size_t>(x)] >= 0) throw std::runtime_error("modularize: orbits overlap");
      orbit_of[static_cast<size_t>(x)] = static_cast<int>(reps.size());
    }
    reps.push_back(l);
  }
  // Re-verify that the data is constant on orbits.
  for (int l = 0; l < n; ++l) {
    int rl = reps[static_cast<size_t>(orbit_of[static_cast<size_t>(l)])];
    if (cat.qdim[static_cast<size_t>(l)] != cat.qdim[static_cast<size_t>(rl)] ||
        cat.twist[static_cast<size_t>(l)] != cat.twist[static_cast<size_t>(rl)])
      throw std::runtime_error("modularize: dimension or twist not constant on the orbit of " + label_of(cat, l));
    for (int m = 0; m < n; ++m) {
      int rm = reps[static_cast<size_t>(orbit_of[static_cast<size_t>(m)])];
      if (cat.smatrix[static_cast<size_t>(l)][static_cast<size_t>(m)] != cat.smatrix[static_cast<size_t>(rl)][static_cast<size_t>(rm)])
        throw std::runtime_error("modularize: S is not well defined on orbits (" + label_of(cat, l) + "," + label_of(cat, m) + ")");
    }
  }
  const size_t k = reps.size();
  CategoryData c;
  c.name = cat.name + "/T";
  c.field = cat.field;
  for (int r : reps) {
    c.labels.push_back("[" + cat.labels[static_cast<size_t>(r)] + "]");
    c.dual.push_back(orbit_of[static_cast<size_t>(cat.dual[static_cast<size_t>(r)])]);
    c.qdim.push_back(cat.qdim[static_cast<size_t>(r)]);
    c.twist.push_back(cat.twist[static_cast<size_t>(r)]);
  }
  c.smatrix.assign(k, std::vector<CycloNumber>(k));
  c.fusion.assign(k * k * k, 0);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      c.smatrix[i][j] = cat.smatrix[static_cast<size_t>(reps[i])][static_cast<size_t>(reps[j])];
      for (int m = 0; m < n; ++m) c.N(static_cast<int>(i), static_cast<int>(j), orbit_of[static_cast<size_t>(m)]) += cat.N(reps[i], reps[j], m);
    }
  return c;
}

CycloNumber spin_case_xi(int alpha, int beta, int m) {
  if (alpha < 1 || beta < 1 || m < 1) throw std::invalid_argument("spin_case_xi: parameters must be positive");
  if ((alpha - m) % 2 != 0) throw std::invalid_argument("spin_case_xi: alpha and m must have the same parity");
  if (std::gcd(static_cast<long>(beta), static_cast<long>(alpha) * m) != 1)
    throw std::invalid_argument("spin_case_xi: beta must be coprime to alpha*m");
  const long M = 2L * alpha * alpha * m;
  const long b2 = mod(static_cast<long>(beta) * beta, M);
  const long rhs = mod(1 + static_cast<long>(alpha) * alpha * m, M);
  long x, y;
  long g = ext_gcd(b2, M, x, y);
  if (rhs % g != 0) throw std::invalid_argument("spin_case_xi: congruence for l has no solution");
  const long Mg = M / g;
  long l = mod(mod(x, Mg) * ((rhs / g) % Mg), Mg);
  return make_root(static_cast<int>(M), l);
}

}  // namespace spinmod
