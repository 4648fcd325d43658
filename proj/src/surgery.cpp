#include "spinmod/surgery.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <gmpxx.h>

namespace spinmod {

PlumbingForest::PlumbingForest(std::vector<long> framings, std::vector<Edge> edges)
    : framing_(std::move(framings)), edges_(std::move(edges)) {
  validate();
}

int PlumbingForest::add_vertex(long framing) {
  framing_.push_back(framing);
  return size() - 1;
}

void PlumbingForest::add_edge(int u, int v, int sign) {
  edges_.push_back({u, v, sign});
  validate();
}

void PlumbingForest::remove_vertex(int v) {
  if (v < 0 || v >= size()) throw std::invalid_argument("remove_vertex: no such vertex");
  framing_.erase(framing_.begin() + v);
  std::vector<Edge> kept;
  for (Edge e : edges_) {
    if (e.u == v || e.v == v) continue;
    if (e.u > v) --e.u;
    if (e.v > v) --e.v;
    kept.push_back(e);
  }
  edges_ = std::move(kept);
}

int PlumbingForest::degree(int v) const {
  int d = 0;
  for (const Edge& e : edges_)
    if (e.u == v || e.v == v) ++d;
  return d;
}

std::vector<std::pair<int, int>> PlumbingForest::neighbors(int v) const {
  std::vector<std::pair<int, int>> out;
  for (const Edge& e : edges_) {
    if (e.u == v) out.emplace_back(e.v, e.sign);
    if (e.v == v) out.emplace_back(e.u, e.sign);
  }
  return out;
}

void PlumbingForest::validate() const {
  const int n = size();
  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
    return x;
  };
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) throw std::invalid_argument("forest: edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("forest: self-loop at vertex " + std::to_string(e.u));
    if (e.sign != 1 && e.sign != -1) throw std::invalid_argument("forest: edge sign must be +1 or -1");
    int a = find(e.u), b = find(e.v);
    if (a == b) throw std::invalid_argument("forest: edges form a cycle or repeat a pair");
    parent[static_cast<size_t>(a)] = b;
  }
}

bool operator==(const PlumbingForest& a, const PlumbingForest& b) {
  if (a.framing_ != b.framing_ || a.edges_.size() != b.edges_.size()) return false;
  auto norm = [](std::vector<Edge> es) {
    std::vector<std::tuple<int, int, int>> t;
    for (const Edge& e : es) t.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v), e.sign);
    std::sort(t.begin(), t.end());
    return t;
  };
  return norm(a.edges_) == norm(b.edges_);
}

IntMatrix linking_matrix(const PlumbingForest& f) {
  const size_t n = static_cast<size_t>(f.size());
  IntMatrix m(n, std::vector<long>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = f.framing(static_cast<int>(i));
  for (const Edge& e : f.edges()) {
    m[static_cast<size_t>(e.u)][static_cast<size_t>(e.v)] = e.sign;
    m[static_cast<size_t>(e.v)][static_cast<size_t>(e.u)] = e.sign;
  }
  return m;
}

SignaturePair signature(const IntMatrix& m0) {
  const size_t n0 = m0.size();
  for (const auto& row : m0)
    if (row.size() != n0) throw std::invalid_argument("signature: matrix is not square");
  for (size_t i = 0; i < n0; ++i)
    for (size_t j = 0; j < n0; ++j)
      if (m0[i][j] != m0[j][i]) throw std::invalid_argument("signature: matrix is not symmetric");
  std::vector<std::vector<mpq_class>> a(n0, std::vector<mpq_class>(n0));
  for (size_t i = 0; i < n0; ++i)
    for (size_t j = 0; j < n0; ++j) a[i][j] = m0[i][j];
  SignaturePair s;
  while (!a.empty()) {
    const size_t n = a.size();
    size_t piv = n;
    for (size_t i = 0; i < n; ++i)
      if (a[i][i] != 0) {
        piv = i;
        break;
      }
    if (piv == n) {
      // Zero diagonal: a nonzero off-diagonal entry a_ij lets e_i + e_j become a pivot.
      size_t pi = n, pj = n;
      for (size_t i = 0; i < n && pi == n; ++i)
        for (size_t j = 0; j < n; ++j)
          if (a[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) {
        s.nullity += static_cast<int>(n);
        break;
      }
      for (size_t k = 0; k < n; ++k) a[pi][k] += a[pj][k];
      for (size_t k = 0; k < n; ++k) a[k][pi] += a[k][pj];
      piv = pi;
    }
    const mpq_class p = a[piv][piv];
    if (p > 0) ++s.b_plus;
    else ++s.b_minus;
    std::vector<std::vector<mpq_class>> b;
    for (size_t i = 0; i < n; ++i) {
      if (i == piv) continue;
      std::vector<mpq_class> row;
      for (size_t j = 0; j < n; ++j) {
        if (j == piv) continue;
        row.push_back(a[i][j] - a[i][piv] * a[piv][j] / p);
      }
      b.push_back(std::move(row));
    }
    a = std::move(b);
  }
  return s;
}

std::string Move::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Stabilize: os << "stabilize(" << eps << ")"; break;
    case Kind::BlowUp: os << "blow_up(" << vertex << "," << eps << "," << sign << ")"; break;
    case Kind::BlowDown: os << "blow_down(" << vertex << ")"; break;
    case Kind::Reverse: os << "reverse(" << vertex << ")"; break;
  }
  return os.str();
}

bool move_is_legal(const PlumbingForest& f, const Move& mv) {
  switch (mv.kind) {
    case Move::Kind::Stabilize: return mv.eps == 1 || mv.eps == -1;
    case Move::Kind::BlowUp:
      return mv.vertex >= 0 && mv.vertex < f.size() && (mv.eps == 1 || mv.eps == -1) && (mv.sign == 1 || mv.sign == -1);
    case Move::Kind::BlowDown:
      return mv.vertex >= 0 && mv.vertex < f.size() && std::abs(f.framing(mv.vertex)) == 1 && f.degree(mv.vertex) <= 1;
    case Move::Kind::Reverse: return mv.vertex >= 0 && mv.vertex < f.size();
  }
  return false;
}

PlumbingForest apply_move(const PlumbingForest& f, const Move& mv) {
  if (!move_is_legal(f, mv)) throw std::invalid_argument("apply_move: illegal move " + mv.to_string());
  std::vector<long> fr = f.framings();
  std::vector<Edge> es = f.edges();
  switch (mv.kind) {
    case Move::Kind::Stabilize:
      fr.push_back(mv.eps);
      return PlumbingForest(fr, es);
    case Move::Kind::BlowUp: {
      int leaf = static_cast<int>(fr.size());
      fr.push_back(mv.eps);
      fr[static_cast<size_t>(mv.vertex)] += mv.eps;
      es.push_back({mv.vertex, leaf, mv.sign});
      return PlumbingForest(fr, es);
    }
    case Move::Kind::BlowDown: {
      PlumbingForest g = f;
      long eps = f.framing(mv.vertex);
      auto nb = f.neighbors(mv.vertex);
      if (!nb.empty()) g.set_framing(nb[0].first, g.framing(nb[0].first) - eps);
      g.remove_vertex(mv.vertex);
      return g;
    }
    case Move::Kind::Reverse:
      for (Edge& e : es)
        if (e.u == mv.vertex || e.v == mv.vertex) e.sign = -e.sign;
      return PlumbingForest(fr, es);
  }
  return f;
}

PlumbingForest parse_forest(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::map<long, long> vertices;  // id -> framing
  std::vector<std::tuple<long, long, int>> raw_edges;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    auto bad = [&](const std::string& why) {
      return std::invalid_argument("forest line " + std::to_string(lineno) + ": " + why);
    };
    if (kw == "vertex") {
      long id, m;
      std::string fw;
      if (!(ls >> id >> fw >> m) || fw != "framing") throw bad("expected `vertex <id> framing <m>`");
      if (!vertices.emplace(id, m).second) throw bad("duplicate vertex id " + std::to_string(id));
    } else if (kw == "edge") {
      long u, v;
      int s;
      if (!(ls >> u >> v >> s)) throw bad("expected `edge <u> <v> <+1|-1>`");
      raw_edges.emplace_back(u, v, s);
    } else {
      throw bad("unknown keyword `" + kw + "`");
    }
    std::string extra;
    if (ls >> extra) throw bad("trailing text `" + extra + "`");
  }
  std::map<long, int> index;
  std::vector<long> fr;
  for (const auto& [id, m] : vertices) {
    index[id] = static_cast<int>(fr.size());
    fr.push_back(m);
  }
  std::vector<Edge> es;
  for (const auto& [u, v, s] : raw_edges) {
    if (!index.count(u) || !index.count(v)) throw std::invalid_argument("forest: edge refers to an undeclared vertex");
    es.push_back({index[u], index[v], s});
  }
  return PlumbingForest(fr, es);
}

std::string format_forest(const PlumbingForest& f) {
  std::ostringstream os;
  for (int v = 0; v < f.size(); ++v) os << "vertex " << v << " framing " << f.framing(v) << "\n";
  for (const Edge& e : f.edges()) os << "edge " << e.u << " " << e.v << " " << (e.sign > 0 ? "+1" : "-1") << "\n";
  return os.str();
}

PlumbingForest chain_forest(const std::vector<long>& framings) {
  std::vector<Edge> es;
  for (size_t i = 1; i < framings.size(); ++i) es.push_back({static_cast<int>(i - 1), static_cast<int>(i), 1});
  return PlumbingForest(framings, es);
}

PlumbingForest e8_forest() {
  // Vertex 0 is the trivalent centre; arms 1, 2 and 4 long.
  std::vector<Edge> es{{0, 1, 1}, {0, 2, 1}, {2, 3, 1}, {0, 4, 1}, {4, 5, 1}, {5, 6, 1}, {6, 7, 1}};
  return PlumbingForest(std::vector<long>(8, 2), es);
}

}  // namespace spinmod
