#include "spinmod/structures.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

#include <gmpxx.h>

namespace spinmod {

namespace {

using ZMatrix = std::vector<std::vector<mpz_class>>;

long mod(long a, long m) { return ((a % m) + m) % m; }

void require_square(const IntMatrix& L) {
  for (const auto& row : L)
    if (row.size() != L.size()) throw std::invalid_argument("linking matrix is not square");
}

void require_modulus(long d) {
  if (d < 1) throw std::invalid_argument("modulus d must be positive");
}

ZMatrix identity(size_t n) {
  ZMatrix m(n, std::vector<mpz_class>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

struct ZSmith {
  std::vector<mpz_class> diagonal;
  ZMatrix U, V;
};

ZSmith smith_mpz(const IntMatrix& a0) {
  const size_t m = a0.size();
  const size_t n = m ? a0[0].size() : 0;
  ZMatrix a(m, std::vector<mpz_class>(n));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = a0[i][j];
  ZMatrix U = identity(m), V = identity(n);
  auto swap_rows = [&](size_t i, size_t k) {
    std::swap(a[i], a[k]);
    std::swap(U[i], U[k]);
  };
  auto swap_cols = [&](size_t j, size_t k) {
    for (auto& row : a) std::swap(row[j], row[k]);
    for (auto& row : V) std::swap(row[j], row[k]);
  };
  auto row_add = [&](size_t dst, size_t src, const mpz_class& q) {  // row dst += q row src
    for (size_t k = 0; k < n; ++k) a[dst][k] += q * a[src][k];
    for (size_t k = 0; k < m; ++k) U[dst][k] += q * U[src][k];
  };
  auto col_add = [&](size_t dst, size_t src, const mpz_class& q) {  // col dst += q col src
    for (size_t k = 0; k < m; ++k) a[k][dst] += q * a[k][src];
    for (size_t k = 0; k < n; ++k) V[k][dst] += q * V[k][src];
  };
  const size_t r = std::min(m, n);
  for (size_t t = 0; t < r; ++t) {
    while (true) {
      // Bring the smallest nonzero entry of the trailing block to (t, t).
      size_t bi = m, bj = n;
      for (size_t i = t; i < m; ++i)
        for (size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (bi == m || abs(a[i][j]) < abs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == m) break;
      swap_rows(t, bi);
      swap_cols(t, bj);
      bool clean = true;
      for (size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        row_add(i, t, -q);
        if (a[i][t] != 0) clean = false;
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        col_add(j, t, -q);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: every trailing entry must be a multiple of the pivot.
      bool divides = true;
      for (size_t i = t + 1; i < m && divides; ++i)
        for (size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            row_add(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a[t][t] < 0) {
      for (size_t k = 0; k < n; ++k) a[t][k] = -a[t][k];
      for (size_t k = 0; k < m; ++k) U[t][k] = -U[t][k];
    }
  }
  ZSmith s;
  for (size_t t = 0; t < r; ++t) s.diagonal.push_back(a[t][t]);
  s.U = std::move(U);
  s.V = std::move(V);
  return s;
}

long to_long_checked(const mpz_class& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("smith_normal_form: transform entry exceeds 64 bits");
  return v.get_si();
}

// Full-rank lattice in Z^n containing D·Z^n, in triangular (Hermite) form.
struct Lattice {
  long D = 1;
  std::vector<IntVector> basis;  // basis[k] has zeros before k and pivot basis[k][k] > 0
};

Lattice hermite(const std::vector<IntVector>& gens, size_t n, long D) {
  std::vector<IntVector> work;
  for (const auto& g : gens) {
    IntVector v(n);
    for (size_t i = 0; i < n; ++i) v[i] = mod(g[i], D);
    work.push_back(v);
  }
  for (size_t i = 0; i < n; ++i) {
    IntVector v(n, 0);
    v[i] = D;
    work.push_back(v);
  }
  Lattice lat;
  lat.D = D;
  for (size_t k = 0; k < n; ++k) {
    while (true) {
      size_t best = work.size();
      for (size_t i = 0; i < work.size(); ++i)
        if (work[i][k] != 0 && (best == work.size() || std::abs(work[i][k]) < std::abs(work[best][k]))) best = i;
      if (best == work.size()) throw std::logic_error("hermite: lattice is not full rank");
      bool done = true;
      for (size_t i = 0; i < work.size(); ++i) {
        if (i == best || work[i][k] == 0) continue;
        long q = work[i][k] / work[best][k];
        for (size_t c = k; c < n; ++c) work[i][c] -= q * work[best][c];
        for (size_t c = k + 1; c < n; ++c) work[i][c] = mod(work[i][c], D);
        if (work[i][k] != 0) done = false;
      }
      if (done) {
        IntVector b = work[best];
        if (b[k] < 0)
          for (auto& x : b) x = -x;
        for (size_t c = k + 1; c < n; ++c) b[c] = mod(b[c], D);
        lat.basis.push_back(b);
        work.erase(work.begin() + static_cast<long>(best));
        work.erase(std::remove_if(work.begin(), work.end(),
                                  [](const IntVector& v) { return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; }); }),
                   work.end());
        break;
      }
    }
  }
  return lat;
}

IntVector reduce(const Lattice& lat, IntVector v) {
  const size_t n = v.size();
  for (size_t k = 0; k < n; ++k) {
    long p = lat.basis[k][k];
    long q = v[k] >= 0 ? v[k] / p : -((-v[k] + p - 1) / p);
    if (q != 0)
      for (size_t c = k; c < n; ++c) v[c] -= q * lat.basis[k][c];
    for (size_t c = k + 1; c < n; ++c) v[c] = mod(v[c], lat.D);
  }
  return v;
}

Lattice class_lattice(StructureKind kind, const IntMatrix& L, long d) {
  const size_t n = L.size();
  const long factor = kind == StructureKind::Chern ? 2 : 1;
  std::vector<IntVector> gens;
  for (size_t j = 0; j < n; ++j) {
    IntVector col(n);
    for (size_t i = 0; i < n; ++i) col[i] = factor * L[i][j];
    gens.push_back(col);
  }
  return hermite(gens, n, coordinate_modulus(kind, d));
}

// Enumerate vectors with coordinate k drawn from options[k], lexicographically.
template <typename Fn>
void for_each_product(const std::vector<std::vector<long>>& options, Fn&& fn) {
  const size_t n = options.size();
  for (const auto& o : options)
    if (o.empty()) return;
  std::vector<size_t> idx(n, 0);
  IntVector v(n);
  while (true) {
    for (size_t i = 0; i < n; ++i) v[i] = options[i][idx[i]];
    fn(v);
    size_t k = n;
    while (k > 0) {
      --k;
      if (++idx[k] < options[k].size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (n == 0) return;
  }
}

std::vector<long> range(long lo, long hi, long step = 1) {
  std::vector<long> r;
  for (long x = lo; x < hi; x += step) r.push_back(x);
  return r;
}

IntVector rhs_spin(const IntMatrix& L, long d) {
  IntVector b(L.size());
  for (size_t i = 0; i < L.size(); ++i) b[i] = mod((d / 2) * L[i][i], d);
  return b;
}

std::vector<IntVector> brute_solve(const IntMatrix& L, const IntVector& b, long d) {
  const size_t n = L.size();
  std::vector<IntVector> out;
  for_each_product(std::vector<std::vector<long>>(n, range(0, d)), [&](const IntVector& x) {
    for (size_t i = 0; i < n; ++i) {
      long s = 0;
      for (size_t j = 0; j < n; ++j) s += L[i][j] * x[j];
      if (mod(s - b[i], d) != 0) return;
    }
    out.push_back(x);
  });
  return out;
}

uint64_t encode(const IntVector& v, long D) {
  uint64_t code = 0;
  for (long x : v) code = code * static_cast<uint64_t>(D) + static_cast<uint64_t>(mod(x, D));
  return code;
}

IntVector decode(uint64_t code, size_t n, long D) {
  IntVector v(n);
  for (size_t i = n; i-- > 0;) {
    v[i] = static_cast<long>(code % static_cast<uint64_t>(D));
    code /= static_cast<uint64_t>(D);
  }
  return v;
}

uint64_t space_size(size_t n, long D) {
  uint64_t s = 1;
  for (size_t i = 0; i < n; ++i) {
    if (s > (uint64_t{1} << 40) / static_cast<uint64_t>(D)) throw std::length_error("structure space too large to enumerate");
    s *= static_cast<uint64_t>(D);
  }
  return s;
}

// Breadth-first closure of the subgroup generated by `gens` in (Z_D)^n.
std::vector<bool> closure(const std::vector<IntVector>& gens, size_t n, long D) {
  const uint64_t total = space_size(n, D);
  std::vector<bool> seen(total, false);
  std::deque<uint64_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    IntVector v = decode(queue.front(), n, D);
    queue.pop_front();
    for (const auto& g : gens) {
      IntVector w(n);
      for (size_t i = 0; i < n; ++i) w[i] = mod(v[i] + g[i], D);
      uint64_t c = encode(w, D);
      if (!seen[c]) {
        seen[c] = true;
        queue.push_back(c);
      }
    }
  }
  return seen;
}

std::vector<IntVector> image_generators(StructureKind kind, const IntMatrix& L, long d) {
  const size_t n = L.size();
  const long D = coordinate_modulus(kind, d);
  const long factor = kind == StructureKind::Chern ? 2 : 1;
  std::vector<IntVector> gens;
  for (size_t j = 0; j < n; ++j) {
    IntVector col(n);
    for (size_t i = 0; i < n; ++i) col[i] = mod(factor * L[i][j], D);
    gens.push_back(col);
  }
  return gens;
}

}  // namespace

std::string to_string(StructureKind k) {
  switch (k) {
    case StructureKind::Spin: return "spin";
    case StructureKind::Cohomology: return "coh";
    case StructureKind::Chern: return "chern";
    case StructureKind::Homology: return "hom";
  }
  return "?";
}

StructureKind parse_structure_kind(const std::string& s) {
  if (s == "spin") return StructureKind::Spin;
  if (s == "coh" || s == "cohomology") return StructureKind::Cohomology;
  if (s == "chern" || s == "spinc") return StructureKind::Chern;
  if (s == "hom" || s == "homology") return StructureKind::Homology;
  throw std::invalid_argument("unknown structure kind `" + s + "` (expected spin, coh, chern or hom)");
}

long coordinate_modulus(StructureKind k, long d) { return k == StructureKind::Chern ? 2 * d : d; }

SmithForm smith_normal_form(const IntMatrix& a) {
  ZSmith z = smith_mpz(a);
  SmithForm s;
  for (const auto& v : z.diagonal) s.diagonal.push_back(to_long_checked(v));
  for (const auto& row : z.U) {
    std::vector<long> r;
    for (const auto& v : row) r.push_back(to_long_checked(v));
    s.U.push_back(r);
  }
  for (const auto& row : z.V) {
    std::vector<long> r;
    for (const auto& v : row) r.push_back(to_long_checked(v));
    s.V.push_back(r);
  }
  return s;
}

std::vector<IntVector> solve_mod(const IntMatrix& a, const IntVector& b, long d) {
  require_modulus(d);
  const size_t m = a.size();
  const size_t n = m ? a[0].size() : 0;
  if (b.size() != m) throw std::invalid_argument("solve_mod: right-hand side has wrong length");
  ZSmith z = smith_mpz(a);
  const mpz_class D = d;
  auto red = [&](const mpz_class& v) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), D.get_mpz_t());
    return r.get_si();
  };
  // c = U b mod d
  IntVector c(m);
  for (size_t i = 0; i < m; ++i) {
    mpz_class s = 0;
    for (size_t k = 0; k < m; ++k) s += z.U[i][k] * b[k];
    c[i] = red(s);
  }
  std::vector<std::vector<long>> options(n);
  for (size_t i = 0; i < n; ++i) {
    long di = i < z.diagonal.size() ? red(z.diagonal[i]) : 0;
    long ci = i < m ? c[i] : 0;
    long g = std::gcd(di, d);
    if (di == 0) g = d;
    if (ci % g != 0) return {};
    long dg = d / g;
    long y0 = 0;
    if (di != 0) {
      long a1 = (di / g) % dg, inv = 1;
      if (dg > 1) {
        // modular inverse of a1 mod dg
        long t = 0, newt = 1, r = dg, newr = a1;
        while (newr != 0) {
          long q = r / newr;
          std::tie(t, newt) = std::make_pair(newt, t - q * newt);
          std::tie(r, newr) = std::make_pair(newr, r - q * newr);
        }
        inv = mod(t, dg);
      }
      y0 = dg > 1 ? mod((ci / g) % dg * inv, dg) : 0;
    }
    for (long k = 0; k < g; ++k) options[i].push_back(mod(y0 + k * dg, d));
  }
  for (size_t i = n; i < m; ++i)
    if (c[i] % d != 0) return {};
  // Extra rows of D (m > n) must vanish.
  for (size_t i = z.diagonal.size(); i < m; ++i)
    if (c[i] != 0) return {};
  std::vector<std::vector<long>> Vmod(n, std::vector<long>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) Vmod[i][j] = red(z.V[i][j]);
  std::vector<IntVector> out;
  for_each_product(options, [&](const IntVector& y) {
    IntVector x(n, 0);
    for (size_t i = 0; i < n; ++i) {
      long s = 0;
      for (size_t j = 0; j < n; ++j) s = mod(s + Vmod[i][j] * y[j], d);
      x[i] = s;
    }
    out.push_back(x);
  });
  std::sort(out.begin(), out.end());
  return out;
}

StructureSet spin_solutions(const IntMatrix& L, long d) {
  require_square(L);
  require_modulus(d);
  if (d % 2 != 0) throw std::invalid_argument("spin_solutions: d must be even");
  return {StructureKind::Spin, d, solve_mod(L, rhs_spin(L, d), d)};
}

StructureSet cohomology_classes(const IntMatrix& L, long d) {
  require_square(L);
  require_modulus(d);
  return {StructureKind::Cohomology, d, solve_mod(L, IntVector(L.size(), 0), d)};
}

StructureSet spin_solutions_brute(const IntMatrix& L, long d) {
  require_square(L);
  if (d < 2 || d % 2 != 0) throw std::invalid_argument("spin_solutions: d must be even");
  return {StructureKind::Spin, d, brute_solve(L, rhs_spin(L, d), d)};
}

StructureSet cohomology_classes_brute(const IntMatrix& L, long d) {
  require_square(L);
  require_modulus(d);
  return {StructureKind::Cohomology, d, brute_solve(L, IntVector(L.size(), 0), d)};
}

std::vector<IntVector> image_subgroup(StructureKind kind, const IntMatrix& L, long d) {
  require_square(L);
  require_modulus(d);
  const size_t n = L.size();
  const long D = coordinate_modulus(kind, d);
  std::vector<bool> seen = closure(image_generators(kind, L, d), n, D);
  std::vector<IntVector> out;
  for (uint64_t c = 0; c < seen.size(); ++c)
    if (seen[c]) out.push_back(decode(c, n, D));
  return out;
}

StructureSet chern_vectors(const IntMatrix& L, long d) {
  require_square(L);
  require_modulus(d);
  const size_t n = L.size();
  const long D = 2 * d;
  std::vector<IntVector> sub;
  {
    std::vector<bool> seen = closure(image_generators(StructureKind::Chern, L, d), n, D);
    for (uint64_t c = 0; c < seen.size(); ++c)
      if (seen[c]) sub.push_back(decode(c, n, D));
  }
  std::vector<bool> marked(space_size(n, D), false);
  StructureSet out{StructureKind::Chern, d, {}};
  std::vector<std::vector<long>> options(n);
  for (size_t i = 0; i < n; ++i) options[i] = range(mod(L[i][i], 2), D, 2);
  for_each_product(options, [&](const IntVector& s) {
    if (marked[encode(s, D)]) return;
    out.elements.push_back(s);
    for (const auto& h : sub) {
      IntVector w(n);
      for (size_t i = 0; i < n; ++i) w[i] = mod(s[i] + h[i], D);
      marked[encode(w, D)] = true;
    }
  });
  return out;
}

StructureSet chern_vectors_lattice(const IntMatrix& L, long d) {
  require_square(L);
  require_modulus(d);
  Lattice lat = class_lattice(StructureKind::Chern, L, d);
  const size_t n = L.size();
  std::vector<std::vector<long>> options(n);
  for (size_t i = 0; i < n; ++i) options[i] = range(mod(L[i][i], 2), lat.basis[i][i], 2);
  StructureSet out{StructureKind::Chern, d, {}};
  for_each_product(options, [&](const IntVector& s) { out.elements.push_back(s); });
  return out;
}

StructureSet homology_classes(const IntMatrix& L, long d) {
  require_square(L);
  require_modulus(d);
  Lattice lat = class_lattice(StructureKind::Homology, L, d);
  const size_t n = L.size();
  std::vector<std::vector<long>> options(n);
  for (size_t i = 0; i < n; ++i) options[i] = range(0, lat.basis[i][i]);
  StructureSet out{StructureKind::Homology, d, {}};
  for_each_product(options, [&](const IntVector& s) { out.elements.push_back(s); });
  return out;
}

StructureSet structure_set(StructureKind kind, const IntMatrix& L, long d) {
  switch (kind) {
    case StructureKind::Spin: return spin_solutions(L, d);
    case StructureKind::Cohomology: return cohomology_classes(L, d);
    case StructureKind::Chern: return chern_vectors(L, d);
    case StructureKind::Homology: return homology_classes(L, d);
  }
  throw std::logic_error("structure_set: bad kind");
}

uint64_t cokernel_order(const IntMatrix& L, long d) {
  require_square(L);
  require_modulus(d);
  ZSmith z = smith_mpz(L);
  uint64_t total = 1;
  for (size_t i = 0; i < L.size(); ++i) {
    long di = 0;
    if (i < z.diagonal.size()) {
      mpz_class r;
      mpz_class D = d;
      mpz_fdiv_r(r.get_mpz_t(), z.diagonal[i].get_mpz_t(), D.get_mpz_t());
      di = r.get_si();
    }
    total *= static_cast<uint64_t>(di == 0 ? d : std::gcd(di, d));
  }
  return total;
}

IntVector canonical(StructureKind kind, const IntMatrix& L, long d, const IntVector& x) {
  if (x.size() != L.size()) throw std::invalid_argument("structure vector has wrong length");
  const long D = coordinate_modulus(kind, d);
  if (kind == StructureKind::Chern || kind == StructureKind::Homology) {
    if (L.empty()) return {};
    return reduce(class_lattice(kind, L, d), x);
  }
  IntVector r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = mod(x[i], D);
  return r;
}

bool is_member(StructureKind kind, const IntMatrix& L, long d, const IntVector& x) {
  const size_t n = L.size();
  if (x.size() != n) return false;
  switch (kind) {
    case StructureKind::Spin:
    case StructureKind::Cohomology:
      for (size_t i = 0; i < n; ++i) {
        long s = 0;
        for (size_t j = 0; j < n; ++j) s += L[i][j] * x[j];
        long target = kind == StructureKind::Spin ? (d / 2) * L[i][i] : 0;
        if (mod(s - target, d) != 0) return false;
      }
      return true;
    case StructureKind::Chern:
      for (size_t i = 0; i < n; ++i)
        if (mod(x[i] - L[i][i], 2) != 0) return false;
      return true;
    case StructureKind::Homology: return true;
  }
  return false;
}

IntMatrix apply_matrix_move(const IntMatrix& L, const MatrixMove& mv) {
  require_square(L);
  const int n = static_cast<int>(L.size());
  IntMatrix r = L;
  switch (mv.kind) {
    case MatrixMove::Kind::Stabilize: {
      if (mv.eps != 1 && mv.eps != -1) throw std::invalid_argument("stabilize: eps must be ±1");
      for (auto& row : r) row.push_back(0);
      r.emplace_back(static_cast<size_t>(n + 1), 0);
      r[static_cast<size_t>(n)][static_cast<size_t>(n)] = mv.eps;
      return r;
    }
    case MatrixMove::Kind::Destabilize: {
      if (mv.i < 0 || mv.i >= n) throw std::invalid_argument("destabilize: index out of range");
      for (int k = 0; k < n; ++k)
        if (k != mv.i && L[static_cast<size_t>(mv.i)][static_cast<size_t>(k)] != 0)
          throw std::invalid_argument("destabilize: component is linked to the rest");
      if (std::abs(L[static_cast<size_t>(mv.i)][static_cast<size_t>(mv.i)]) != 1)
        throw std::invalid_argument("destabilize: component is not ±1-framed");
      r.erase(r.begin() + mv.i);
      for (auto& row : r) row.erase(row.begin() + mv.i);
      return r;
    }
    case MatrixMove::Kind::Slide: {
      if (mv.i < 0 || mv.j < 0 || mv.i >= n || mv.j >= n || mv.i == mv.j)
        throw std::invalid_argument("slide: bad component indices");
      const size_t i = static_cast<size_t>(mv.i), j = static_cast<size_t>(mv.j);
      for (size_t k = 0; k < r.size(); ++k) r[k][i] += mv.eps * r[k][j];
      for (size_t k = 0; k < r.size(); ++k) r[i][k] += mv.eps * r[j][k];
      return r;
    }
    case MatrixMove::Kind::Reverse: {
      if (mv.i < 0 || mv.i >= n) throw std::invalid_argument("reverse: index out of range");
      const size_t i = static_cast<size_t>(mv.i);
      for (size_t k = 0; k < r.size(); ++k) {
        r[k][i] = -r[k][i];
        r[i][k] = -r[i][k];
      }
      return r;
    }
  }
  return r;
}

IntVector transport(StructureKind kind, const IntMatrix& L, long d, const MatrixMove& mv, const IntVector& x) {
  if (!is_member(kind, L, d, x)) throw std::invalid_argument("transport: element is not a valid structure for L");
  const long D = coordinate_modulus(kind, d);
  IntMatrix L2 = apply_matrix_move(L, mv);
  IntVector y = x;
  for (auto& v : y) v = mod(v, D);
  switch (mv.kind) {
    case MatrixMove::Kind::Stabilize:
      switch (kind) {
        case StructureKind::Spin: y.push_back(d / 2); break;
        case StructureKind::Cohomology: y.push_back(0); break;
        case StructureKind::Chern: y.push_back(1); break;
        case StructureKind::Homology: y.push_back(0); break;
      }
      break;
    case MatrixMove::Kind::Destabilize:
      y.erase(y.begin() + mv.i);
      break;
    case MatrixMove::Kind::Slide: {
      const size_t i = static_cast<size_t>(mv.i), j = static_cast<size_t>(mv.j);
      if (kind == StructureKind::Spin || kind == StructureKind::Cohomology) y[j] = mod(y[j] - mv.eps * y[i], D);
      else y[i] = mod(y[i] + mv.eps * y[j], D);
      break;
    }
    case MatrixMove::Kind::Reverse:
      y[static_cast<size_t>(mv.i)] = mod(-y[static_cast<size_t>(mv.i)], D);
      break;
  }
  y = canonical(kind, L2, d, y);
  if (!is_member(kind, L2, d, y)) throw std::logic_error("transport: image is not a valid structure");
  return y;
}

std::vector<MatrixMove> decompose_move(const PlumbingForest& f, const Move& mv) {
  if (!move_is_legal(f, mv)) throw std::invalid_argument("decompose_move: illegal move " + mv.to_string());
  switch (mv.kind) {
    case Move::Kind::Stabilize: return {MatrixMove::stabilize(mv.eps)};
    case Move::Kind::BlowUp: return {MatrixMove::stabilize(mv.eps), MatrixMove::slide(mv.vertex, f.size(), mv.sign * mv.eps)};
    case Move::Kind::BlowDown: {
      auto nb = f.neighbors(mv.vertex);
      if (nb.empty()) return {MatrixMove::destabilize(mv.vertex)};
      const int eps = static_cast<int>(f.framing(mv.vertex));
      return {MatrixMove::slide(nb[0].first, mv.vertex, -nb[0].second * eps), MatrixMove::destabilize(mv.vertex)};
    }
    case Move::Kind::Reverse: return {MatrixMove::reverse(mv.vertex)};
  }
  return {};
}

IntVector transport_forest(StructureKind kind, const PlumbingForest& f, long d, const Move& mv, const IntVector& x) {
  IntMatrix L = linking_matrix(f);
  IntVector y = x;
  for (const auto& m : decompose_move(f, mv)) {
    y = transport(kind, L, d, m, y);
    L = apply_matrix_move(L, m);
  }
  return y;
}

}  // namespace spinmod
