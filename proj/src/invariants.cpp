#include "spinmod/invariants.hpp"

#include <algorithm>
#include <numeric>

namespace spinmod {

namespace {

long mod(long a, long m) { return ((a % m) + m) % m; }

struct Rooting {
  std::vector<int> order;        // BFS order, roots first within their component
  std::vector<int> parent;       // -1 for roots
  std::vector<int> parent_sign;  // sign of the edge to the parent
  std::vector<int> degree;
  std::vector<std::vector<int>> children;
};

Rooting root_forest(const PlumbingForest& f, int preferred_root) {
  const int n = f.size();
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(n));
  for (const Edge& e : f.edges()) {
    adj[static_cast<size_t>(e.u)].emplace_back(e.v, e.sign);
    adj[static_cast<size_t>(e.v)].emplace_back(e.u, e.sign);
  }
  Rooting r;
  r.parent.assign(static_cast<size_t>(n), -1);
  r.parent_sign.assign(static_cast<size_t>(n), 1);
  r.degree.assign(static_cast<size_t>(n), 0);
  r.children.assign(static_cast<size_t>(n), {});
  for (int v = 0; v < n; ++v) r.degree[static_cast<size_t>(v)] = static_cast<int>(adj[static_cast<size_t>(v)].size());
  std::vector<bool> seen(static_cast<size_t>(n), false);
  std::vector<int> starts;
  if (preferred_root >= 0 && preferred_root < n) starts.push_back(preferred_root);
  for (int v = 0; v < n; ++v) starts.push_back(v);
  for (int s : starts) {
    if (seen[static_cast<size_t>(s)]) continue;
    seen[static_cast<size_t>(s)] = true;
    size_t head = r.order.size();
    r.order.push_back(s);
    while (head < r.order.size()) {
      int v = r.order[head++];
      for (auto [w, sign] : adj[static_cast<size_t>(v)]) {
        if (seen[static_cast<size_t>(w)]) continue;
        seen[static_cast<size_t>(w)] = true;
        r.parent[static_cast<size_t>(w)] = v;
        r.parent_sign[static_cast<size_t>(w)] = sign;
        r.children[static_cast<size_t>(v)].push_back(w);
        r.order.push_back(w);
      }
    }
  }
  return r;
}

void require_weights(const Evaluator& ev, const PlumbingForest& f, const std::vector<Weights>& w) {
  if (static_cast<int>(w.size()) != f.size()) throw std::invalid_argument("weights: one weight vector per vertex required");
  for (const auto& wv : w) {
    if (static_cast<int>(wv.size()) != ev.category().size()) throw std::invalid_argument("weights: wrong number of labels");
    for (const auto& x : wv)
      if (x.field() != ev.field()) throw FieldMismatch("weights: value outside the category field");
  }
}

CycloNumber norm_factor(const Evaluator& ev, const SignaturePair& sig, CycloNumber& dp, CycloNumber& dm) {
  dp = ev.unknot(1, ev.plain_weights());
  dm = ev.unknot(-1, ev.plain_weights());
  CycloNumber factor = CycloNumber::integer(ev.field(), 1);
  if (sig.b_plus > 0) {
    if (dp.is_zero()) throw std::domain_error("normalization: F(U_{+1}(omega)) vanishes");
    factor = factor * dp.pow(-sig.b_plus);
  }
  if (sig.b_minus > 0) {
    if (dm.is_zero()) throw std::domain_error("normalization: F(U_{-1}(omega)) vanishes");
    factor = factor * dm.pow(-sig.b_minus);
  }
  return factor;
}

InvariantValue make_value(const CycloNumber& exact, const SignaturePair& sig, const CycloNumber& dp, const CycloNumber& dm) {
  InvariantValue v;
  v.exact = exact;
  v.approx = exact.embed_complex();
  v.b_plus = sig.b_plus;
  v.b_minus = sig.b_minus;
  v.denom_plus = dp;
  v.denom_minus = dm;
  return v;
}

bool is_minus_one(const CycloNumber& x) { return (-x).is_one(); }

}  // namespace

CycloNumber RefinedInvariantTable::sum() const {
  if (values.empty()) throw std::logic_error("RefinedInvariantTable::sum: empty table has no field");
  CycloNumber s(values.front().exact.field());
  for (const auto& v : values) s += v.exact;
  return s;
}

Evaluator::Evaluator(CategoryData cat) : cat_(std::move(cat)) {
  cat_.validate_shape();
  const int n = cat_.size();
  plain_ = cat_.qdim;
  for (int l = 0; l < n; ++l) {
    const CycloNumber& q = cat_.qdim[static_cast<size_t>(l)];
    inv_dim_.push_back(q.is_zero() ? std::nullopt : std::optional<CycloNumber>(q.inverse()));
  }
  s_minus_.assign(static_cast<size_t>(n), std::vector<CycloNumber>(static_cast<size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      s_minus_[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          cat_.smatrix[static_cast<size_t>(cat_.dual[static_cast<size_t>(a)])][static_cast<size_t>(b)];
}

const CycloNumber& Evaluator::twist_power(int label, long m) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = twist_pow_.find(m);
  if (it == twist_pow_.end()) {
    std::vector<CycloNumber> row;
    for (const auto& th : cat_.twist) row.push_back(th.pow(m));
    it = twist_pow_.emplace(m, std::move(row)).first;
  }
  return it->second[static_cast<size_t>(label)];
}

const CycloNumber& Evaluator::inverse_dim(int label) const {
  const auto& v = inv_dim_[static_cast<size_t>(label)];
  if (!v) throw std::domain_error("evaluation: label " + cat_.labels[static_cast<size_t>(label)] + " has zero dimension on an internal vertex");
  return *v;
}

const CycloNumber& Evaluator::edge_factor(int sign, int a, int b) const {
  return sign > 0 ? cat_.smatrix[static_cast<size_t>(a)][static_cast<size_t>(b)] : s_minus_[static_cast<size_t>(a)][static_cast<size_t>(b)];
}

CycloNumber Evaluator::vertex_factor(int label, long framing, int degree) const {
  const CycloNumber& th = twist_power(label, framing);
  if (degree == 0) return th * cat_.qdim[static_cast<size_t>(label)];
  if (degree == 1) return th;
  return th * inverse_dim(label).pow(degree - 1);
}

CycloNumber Evaluator::eval_colored(const PlumbingForest& f, const std::vector<int>& colors, int root) const {
  if (static_cast<int>(colors.size()) != f.size()) throw std::invalid_argument("eval_colored: one color per vertex required");
  for (int c : colors)
    if (c < 0 || c >= cat_.size()) throw std::invalid_argument("eval_colored: color out of range");
  Rooting r = root_forest(f, root);
  CycloNumber value = CycloNumber::integer(field(), 1);
  for (int v : r.order) {
    const int lv = colors[static_cast<size_t>(v)];
    value *= twist_power(lv, f.framing(v));
    const int p = r.parent[static_cast<size_t>(v)];
    if (p < 0) {
      value *= cat_.qdim[static_cast<size_t>(lv)];
    } else {
      const int lp = colors[static_cast<size_t>(p)];
      value *= edge_factor(r.parent_sign[static_cast<size_t>(v)], lv, lp) * inverse_dim(lp);
    }
  }
  return value;
}

CycloNumber Evaluator::eval_weighted(const PlumbingForest& f, const std::vector<Weights>& weights) const {
  require_weights(*this, f, weights);
  const int G = cat_.size();
  Rooting r = root_forest(f, -1);
  std::vector<std::vector<CycloNumber>> msg(static_cast<size_t>(f.size()));
  CycloNumber total = CycloNumber::integer(field(), 1);
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
    const int v = *it;
    std::vector<CycloNumber> belief(static_cast<size_t>(G));
    std::vector<bool> live(static_cast<size_t>(G), false);
    for (int l = 0; l < G; ++l) {
      const CycloNumber& w = weights[static_cast<size_t>(v)][static_cast<size_t>(l)];
      if (w.is_zero()) continue;
      CycloNumber b = w * vertex_factor(l, f.framing(v), r.degree[static_cast<size_t>(v)]);
      for (int c : r.children[static_cast<size_t>(v)]) {
        if (b.is_zero()) break;
        b *= msg[static_cast<size_t>(c)][static_cast<size_t>(l)];
      }
      if (b.is_zero()) continue;
      belief[static_cast<size_t>(l)] = std::move(b);
      live[static_cast<size_t>(l)] = true;
    }
    for (int c : r.children[static_cast<size_t>(v)]) msg[static_cast<size_t>(c)].clear();
    const int p = r.parent[static_cast<size_t>(v)];
    if (p < 0) {
      CycloNumber s(field());
      for (int l = 0; l < G; ++l)
        if (live[static_cast<size_t>(l)]) s += belief[static_cast<size_t>(l)];
      total *= s;
      continue;
    }
    const int sign = r.parent_sign[static_cast<size_t>(v)];
    std::vector<CycloNumber> out(static_cast<size_t>(G), CycloNumber(field()));
    for (int mu = 0; mu < G; ++mu)
      for (int l = 0; l < G; ++l)
        if (live[static_cast<size_t>(l)]) out[static_cast<size_t>(mu)] += belief[static_cast<size_t>(l)] * edge_factor(sign, mu, l);
    msg[static_cast<size_t>(v)] = std::move(out);
  }
  return total;
}

CycloNumber Evaluator::eval_weighted_brute(const PlumbingForest& f, const std::vector<Weights>& weights) const {
  require_weights(*this, f, weights);
  const int n = f.size();
  const int G = cat_.size();
  CycloNumber total(field());
  std::vector<int> colors(static_cast<size_t>(n), 0);
  while (true) {
    CycloNumber w = CycloNumber::integer(field(), 1);
    for (int v = 0; v < n && !w.is_zero(); ++v) w *= weights[static_cast<size_t>(v)][static_cast<size_t>(colors[static_cast<size_t>(v)])];
    if (!w.is_zero()) total += w * eval_colored(f, colors);
    int k = n - 1;
    while (k >= 0 && ++colors[static_cast<size_t>(k)] == G) colors[static_cast<size_t>(k--)] = 0;
    if (k < 0) break;
  }
  return total;
}

CycloNumber Evaluator::unknot(long framing, const Weights& w) const {
  if (static_cast<int>(w.size()) != cat_.size()) throw std::invalid_argument("unknot: wrong number of weights");
  CycloNumber s(field());
  for (int l = 0; l < cat_.size(); ++l) {
    if (w[static_cast<size_t>(l)].is_zero()) continue;
    s += w[static_cast<size_t>(l)] * twist_power(l, framing) * cat_.qdim[static_cast<size_t>(l)];
  }
  return s;
}

CycloNumber Evaluator::dual_coset_sum(const PlumbingForest& f, const Grading& grading, int c, const IntVector& sigma) const {
  const long D = grading.modulus;
  if (c != 1 && c != 2) throw std::invalid_argument("dual_coset_sum: c must be 1 or 2");
  if (c == 2 && D % 2 != 0) throw std::invalid_argument("dual_coset_sum: c = 2 needs an even grading modulus");
  if (static_cast<int>(sigma.size()) != f.size()) throw std::invalid_argument("dual_coset_sum: sigma has wrong length");
  const long q = D / c;  // constraint modulus
  const int G = cat_.size();
  const int n = f.size();
  const IntMatrix L = linking_matrix(f);
  auto deg = [&](int l) { return static_cast<long>(grading.degree[static_cast<size_t>(l)]); };

  // e_D^k for k in [0, D)
  std::vector<CycloNumber> epow;
  {
    CycloNumber p = CycloNumber::integer(field(), 1);
    for (long k = 0; k < D; ++k) {
      epow.push_back(p);
      p = p * grading.primitive_root;
    }
  }
  Rooting r = root_forest(f, -1);
  // msg[v][λ_parent][a], a = L_{v,parent}·deg(λ_v) mod q
  std::vector<std::vector<std::vector<CycloNumber>>> msg(static_cast<size_t>(n));
  CycloNumber total = CycloNumber::integer(field(), 1);
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
    const int v = *it;
    const long mv = f.framing(v);
    const int p = r.parent[static_cast<size_t>(v)];
    const int sign = r.parent_sign[static_cast<size_t>(v)];
    std::vector<std::vector<CycloNumber>> out;
    if (p >= 0) out.assign(static_cast<size_t>(G), std::vector<CycloNumber>(static_cast<size_t>(q), CycloNumber(field())));
    CycloNumber root_sum(field());
    for (int l = 0; l < G; ++l) {
      // Vertex weight for the dual color ω^{σ_v}.
      CycloNumber fv = epow[static_cast<size_t>(mod(sigma[static_cast<size_t>(v)] * deg(l), D))] *
                       cat_.qdim[static_cast<size_t>(l)];
      if (fv.is_zero()) continue;
      fv *= vertex_factor(l, mv, r.degree[static_cast<size_t>(v)]);
      // Distribution of the children's degree contributions.
      std::vector<CycloNumber> conv(static_cast<size_t>(q), CycloNumber(field()));
      conv[0] = CycloNumber::integer(field(), 1);
      for (int ch : r.children[static_cast<size_t>(v)]) {
        std::vector<CycloNumber> next(static_cast<size_t>(q), CycloNumber(field()));
        const auto& m = msg[static_cast<size_t>(ch)][static_cast<size_t>(l)];
        for (long s = 0; s < q; ++s) {
          if (conv[static_cast<size_t>(s)].is_zero()) continue;
          for (long a = 0; a < q; ++a) {
            if (m[static_cast<size_t>(a)].is_zero()) continue;
            next[static_cast<size_t>((s + a) % q)] += conv[static_cast<size_t>(s)] * m[static_cast<size_t>(a)];
          }
        }
        conv = std::move(next);
      }
      if (p < 0) {
        const long need = mod(-mv * deg(l), q);
        if (!conv[static_cast<size_t>(need)].is_zero()) root_sum += fv * conv[static_cast<size_t>(need)];
        continue;
      }
      const long a_out = mod(sign * deg(l), q);
      for (int lp = 0; lp < G; ++lp) {
        const long need = mod(-mv * deg(l) - sign * deg(lp), q);
        const CycloNumber& cs = conv[static_cast<size_t>(need)];
        if (cs.is_zero()) continue;
        out[static_cast<size_t>(lp)][static_cast<size_t>(a_out)] += fv * cs * edge_factor(sign, lp, l);
      }
    }
    for (int ch : r.children[static_cast<size_t>(v)]) msg[static_cast<size_t>(ch)].clear();
    if (p < 0) total *= root_sum;
    else msg[static_cast<size_t>(v)] = std::move(out);
  }
  // Each coset element is hit |ker| times by x ∈ (Z_D)^n; the character sum contributes D^n.
  const long d_struct = D / c;
  const uint64_t coker = cokernel_order(L, d_struct);
  uint64_t qn = 1;
  for (int i = 0; i < n; ++i) qn *= static_cast<uint64_t>(d_struct);
  const uint64_t coset_size = qn / coker;
  return total.scaled(static_cast<long>(coset_size));
}

CycloNumber Evaluator::dual_coset_sum_enumerated(const PlumbingForest& f, const Grading& grading, int c,
                                                 const IntVector& sigma) const {
  const long D = grading.modulus;
  if (c != 1 && c != 2) throw std::invalid_argument("dual_coset_sum: c must be 1 or 2");
  const StructureKind kind = c == 2 ? StructureKind::Chern : StructureKind::Homology;
  const long d_struct = D / c;
  const IntMatrix L = linking_matrix(f);
  CycloNumber total(field());
  for (const auto& h : image_subgroup(kind, L, d_struct)) {
    std::vector<Weights> w;
    for (int v = 0; v < f.size(); ++v) {
      long eps = mod(sigma[static_cast<size_t>(v)] + h[static_cast<size_t>(v)], D);
      w.push_back(kirby_color(cat_, KirbyKind::Dual, static_cast<int>(eps), &grading).weights);
    }
    total += eval_weighted(f, w);
  }
  return total;
}

InvariantValue normalize(const Evaluator& ev, const IntMatrix& L, const CycloNumber& numerator) {
  SignaturePair sig = signature(L);
  CycloNumber dp, dm;
  CycloNumber factor = norm_factor(ev, sig, dp, dm);
  return make_value(numerator * factor, sig, dp, dm);
}

InvariantValue wrt(const Evaluator& ev, const PlumbingForest& f) {
  std::vector<Weights> w(static_cast<size_t>(f.size()), ev.plain_weights());
  return normalize(ev, linking_matrix(f), ev.eval_weighted(f, w));
}

void require_spin(const CategoryData& cat, const Grading& g) {
  if (g.modulus % 2 != 0) throw HypothesisError("spin refinement needs an even modulus d");
  if (g.degree[static_cast<size_t>(g.generator)] != 0)
    throw HypothesisError("refinement needs the generator t in the trivial-degree component");
  if (!is_minus_one(cat.twist[static_cast<size_t>(g.generator)]))
    throw HypothesisError("category is not " + std::to_string(g.modulus) + "-spin (twist of t is not -1)");
}

void require_nonspin(const CategoryData& cat, const Grading& g) {
  if (g.degree[static_cast<size_t>(g.generator)] != 0)
    throw HypothesisError("refinement needs the generator t in the trivial-degree component");
  if (!cat.twist[static_cast<size_t>(g.generator)].is_one())
    throw HypothesisError("category is not a non-spin " + std::to_string(g.modulus) + "-refinable category (twist of t is not 1)");
}

namespace {

RefinedInvariantTable graded_table(const Evaluator& ev, const PlumbingForest& f, const Grading& grading,
                                   const StructureSet& set) {
  const IntMatrix L = linking_matrix(f);
  SignaturePair sig = signature(L);
  CycloNumber dp, dm;
  CycloNumber factor = norm_factor(ev, sig, dp, dm);
  std::vector<Weights> graded;
  for (int u = 0; u < grading.modulus; ++u) graded.push_back(kirby_color(ev.category(), KirbyKind::Graded, u, &grading).weights);
  RefinedInvariantTable t;
  t.kind = set.kind;
  t.d = set.d;
  for (const auto& s : set.elements) {
    std::vector<Weights> w;
    for (long x : s) w.push_back(graded[static_cast<size_t>(x)]);
    t.keys.push_back(s);
    t.values.push_back(make_value(ev.eval_weighted(f, w) * factor, sig, dp, dm));
  }
  return t;
}

RefinedInvariantTable coset_table(const Evaluator& ev, const PlumbingForest& f, const Grading& grading, int c,
                                  const StructureSet& set, CosetRoute route) {
  const IntMatrix L = linking_matrix(f);
  SignaturePair sig = signature(L);
  CycloNumber dp, dm;
  CycloNumber factor = norm_factor(ev, sig, dp, dm);
  // (-d)^{-n} for Chern classes, d^{-n} for homology classes.
  const long d = set.d;
  const long base = c == 2 ? -d : d;
  factor = factor * CycloNumber::integer(ev.field(), base).pow(-static_cast<long>(f.size()));
  RefinedInvariantTable t;
  t.kind = set.kind;
  t.d = d;
  for (const auto& s : set.elements) {
    CycloNumber sum = route == CosetRoute::Factored ? ev.dual_coset_sum(f, grading, c, s)
                                                    : ev.dual_coset_sum_enumerated(f, grading, c, s);
    t.keys.push_back(s);
    t.values.push_back(make_value(sum * factor, sig, dp, dm));
  }
  return t;
}

}  // namespace

RefinedInvariantTable wrt_spin(const Evaluator& ev, const PlumbingForest& f, const Grading& grading) {
  require_spin(ev.category(), grading);
  return graded_table(ev, f, grading, spin_solutions(linking_matrix(f), grading.modulus));
}

RefinedInvariantTable wrt_cohomology(const Evaluator& ev, const PlumbingForest& f, const Grading& grading) {
  require_nonspin(ev.category(), grading);
  return graded_table(ev, f, grading, cohomology_classes(linking_matrix(f), grading.modulus));
}

RefinedInvariantTable wrt_spinc(const Evaluator& ev, const PlumbingForest& f, const Grading& grading,
                                bool override_hypotheses, CosetRoute route) {
  if (grading.modulus % 2 != 0) throw HypothesisError("Chern refinement needs a grading modulus 2d");
  const long d = grading.modulus / 2;
  if (!override_hypotheses) {
    if (d % 2 != 0) throw HypothesisError("Chern refinement needs d even (grading modulus divisible by 4)");
    require_spin(ev.category(), grading);
  }
  return coset_table(ev, f, grading, 2, chern_vectors(linking_matrix(f), d), route);
}

RefinedInvariantTable wrt_homology(const Evaluator& ev, const PlumbingForest& f, const Grading& grading, CosetRoute route) {
  require_nonspin(ev.category(), grading);
  return coset_table(ev, f, grading, 1, homology_classes(linking_matrix(f), grading.modulus), route);
}

// ---------------------------------------------------------------------------

namespace {

int checked_root_order(const CycloNumber& xi) {
  if (!xi.valid()) throw std::invalid_argument("moo: xi is uninitialised");
  int o = xi.root_order();
  if (o == 0) throw std::invalid_argument("moo: xi is not a root of unity");
  return o;
}

template <typename Fn>
void for_each_vector(size_t n, long range, Fn&& fn) {
  double space = std::pow(static_cast<double>(range), static_cast<double>(n));
  if (space > static_cast<double>(uint64_t{1} << 28)) throw std::length_error("moo: summation range too large");
  IntVector v(n, 0);
  while (true) {
    fn(v);
    size_t k = n;
    while (k > 0) {
      --k;
      if (++v[k] < range) goto next;
      v[k] = 0;
    }
    return;
  next:;
  }
}

long quad(const IntMatrix& L, const IntVector& x, long o) {
  long s = 0;
  for (size_t i = 0; i < L.size(); ++i) {
    if (x[i] == 0) continue;
    long row = 0;
    for (size_t j = 0; j < L.size(); ++j) row += L[i][j] * x[j];
    s = mod(s + mod(row, o) * mod(x[i], o), o);
  }
  return s;
}

CycloNumber from_histogram(const std::vector<long>& counts, const CycloNumber& xi) {
  CycloNumber total(xi.field());
  CycloNumber p = CycloNumber::integer(xi.field(), 1);
  for (long c : counts) {
    if (c != 0) total += p.scaled(c);
    p = p * xi;
  }
  return total;
}

}  // namespace

CycloNumber moo_numerator(const IntMatrix& L, int m, const CycloNumber& xi) {
  if (m < 1) throw std::invalid_argument("moo: m must be positive");
  const int o = checked_root_order(xi);
  std::vector<long> counts(static_cast<size_t>(o), 0);
  for_each_vector(L.size(), m, [&](const IntVector& l) { ++counts[static_cast<size_t>(quad(L, l, o))]; });
  return from_histogram(counts, xi);
}

CycloNumber moo_refined_numerator(const IntMatrix& L, long range, int delta, const IntVector& c, const CycloNumber& xi) {
  if (delta < 1 || range < 1 || range % delta != 0) throw std::invalid_argument("moo_refined: delta must divide the range");
  if (c.size() != L.size()) throw std::invalid_argument("moo_refined: class vector has wrong length");
  const int o = checked_root_order(xi);
  std::vector<long> counts(static_cast<size_t>(o), 0);
  const long steps = range / delta;
  for_each_vector(L.size(), steps, [&](const IntVector& k) {
    IntVector g(L.size());
    for (size_t i = 0; i < g.size(); ++i) g[i] = mod(c[i], delta) + delta * k[i];
    ++counts[static_cast<size_t>(quad(L, g, o))];
  });
  return from_histogram(counts, xi);
}

namespace {

InvariantValue gauss_normalize(const IntMatrix& L, const CycloNumber& num, const CycloNumber& g) {
  if (g.is_zero()) throw std::domain_error("moo: Gauss sum vanishes");
  CycloNumber gb = g.conj();
  SignaturePair sig = signature(L);
  CycloNumber v = num * g.pow(-sig.b_plus) * gb.pow(-sig.b_minus);
  return make_value(v, sig, g, gb);
}

}  // namespace

InvariantValue moo(const IntMatrix& L, const MooParams& p) {
  const int o = checked_root_order(p.xi);
  const long need = (p.m % 2 == 1) ? p.m : 2L * p.m;
  if (need % o != 0)
    throw std::invalid_argument("moo: xi must be an m-th root (m odd) or a 2m-th root (m even) of unity");
  return gauss_normalize(L, moo_numerator(L, p.m, p.xi), gauss_sum(p.m, p.xi));
}

InvariantValue moo_refined(const IntMatrix& L, const MooParams& p) {
  if (!p.refinement) throw std::invalid_argument("moo_refined: refinement parameters missing");
  const MooRefinement& r = *p.refinement;
  if (r.delta < 1 || r.alpha < 1 || p.m < 1) throw std::invalid_argument("moo_refined: parameters must be positive");
  if (r.spin && r.delta % 2 != 0) throw std::invalid_argument("moo_refined: spin refinement needs delta even");
  const long range = static_cast<long>(r.alpha) * r.delta * p.m;
  const int o = checked_root_order(p.xi);
  const long center = r.spin ? r.delta / 2 : 0;
  std::vector<long> counts(static_cast<size_t>(o), 0);
  for (long gmm = center; gmm < range; gmm += r.delta) ++counts[static_cast<size_t>(mod(gmm * gmm, o))];
  CycloNumber g = from_histogram(counts, p.xi);
  return gauss_normalize(L, moo_refined_numerator(L, range, r.delta, r.c, p.xi), g);
}

// ---------------------------------------------------------------------------

DecompositionSetup decomposition_setup(const CategoryData& cat) {
  InvertibleGroup G = invertibles(cat);
  if (!G.generator) throw HypothesisError("decomposition: group of invertibles is not cyclic");
  DecompositionSetup s;
  s.grading = default_grading(cat, G);
  s.d = G.order();
  const int t = *G.generator;
  const int degt = s.grading.degree[static_cast<size_t>(t)];
  s.delta = degt == 0 ? s.d : degt;
  if (s.d % s.delta != 0) throw HypothesisError("decomposition: deg(t) does not divide |G|");
  s.m = s.d / s.delta;
  if (std::gcd(s.m, s.delta) != 1) throw HypothesisError("decomposition: gcd(m, delta) != 1");
  s.t_delta = G.power(t, s.delta);
  const size_t td = static_cast<size_t>(s.t_delta);
  s.eta = cat.twist[td] / cat.qdim[td];
  s.xi = s.eta * cat.qdim[static_cast<size_t>(t)].pow(s.delta);
  const long need = (s.m % 2 == 1) ? s.m : 2L * s.m;
  if (!s.xi.pow(need).is_one()) throw std::runtime_error("decomposition: xi has unexpected order");
  s.reduced = reduced_subcategory(cat, s.grading, s.m);
  return s;
}

DecompositionCheck check_decomposition(const Evaluator& full, const Evaluator& reduced, const DecompositionSetup& s,
                                       const PlumbingForest& f) {
  DecompositionCheck c;
  c.lhs = wrt(full, f).exact;
  MooParams p;
  p.m = s.m;
  p.xi = s.xi;
  c.rhs = wrt(reduced, f).exact * moo(linking_matrix(f), p).exact;
  c.equal = c.lhs == c.rhs;
  return c;
}

}  // namespace spinmod
