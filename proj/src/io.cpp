#include "spinmod/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace spinmod {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

long parse_long(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError(what + ": expected an integer, got `" + s + "`");
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

CategoryData builtin_factor(const std::string& spec) {
  auto parts = split(spec, ':');
  if (parts.empty()) throw InputError("empty builtin category");
  const std::string& fam = parts[0];
  if (fam == "sl2") {
    if (parts.size() < 2 || parts.size() > 3) throw InputError("builtin sl2 expects sl2:<r>[:unsigned]");
    int r = static_cast<int>(parse_long(parts[1], "sl2 level"));
    Sl2Convention conv = Sl2Convention::Kauffman;
    if (parts.size() == 3) {
      if (parts[2] == "unsigned") conv = Sl2Convention::Unsigned;
      else if (parts[2] != "kauffman") throw InputError("unknown sl2 convention `" + parts[2] + "`");
    }
    if (r < 3) throw InputError("sl2 level must be at least 3");
    return sl2_category(r, conv);
  }
  if (fam == "abelian") {
    if (parts.size() != 4) throw InputError("builtin abelian expects abelian:<N>:<k>:<M> with q = zeta_M^k");
    long n = parse_long(parts[1], "abelian N");
    long k = parse_long(parts[2], "abelian k");
    long m = parse_long(parts[3], "abelian M");
    if (n < 1 || m < 1) throw InputError("abelian N and M must be positive");
    try {
      return abelian_category(static_cast<int>(n), make_root(static_cast<int>(m), k));
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  if (fam == "trivial") {
    if (parts.size() != 1) throw InputError("builtin trivial takes no parameters");
    return trivial_category();
  }
  throw InputError("unknown builtin category `" + fam + "`");
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open `" + path + "`");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json cyclo_to_json(const CycloNumber& x) {
  json coeffs = json::array();
  for (const mpq_class& c : x.coefficients()) coeffs.push_back(c.get_str());
  return {{"N", x.field()->order()}, {"coeffs", coeffs}};
}

CycloNumber cyclo_from_json(const json& j, const Field& target) {
  if (!j.is_object() || !j.contains("N") || !j.contains("coeffs")) throw InputError("cyclotomic number needs {N, coeffs}");
  if (!j["N"].is_number_integer() || j["N"].get<long>() < 1) throw InputError("cyclotomic order N must be a positive integer");
  Field f = CycloField::get(j["N"].get<int>());
  const json& cs = j["coeffs"];
  if (!cs.is_array() || static_cast<int>(cs.size()) != f->degree())
    throw InputError("coeffs must list exactly phi(N) = " + std::to_string(f->degree()) + " entries");
  std::vector<mpq_class> q;
  for (const json& c : cs) {
    mpq_class v;
    if (c.is_number_integer()) {
      v = c.get<long>();
    } else if (c.is_string()) {
      if (v.set_str(c.get<std::string>(), 10) != 0) throw InputError("bad rational `" + c.get<std::string>() + "`");
      if (v.get_den() == 0) throw InputError("zero denominator in `" + c.get<std::string>() + "`");
      v.canonicalize();
    } else {
      throw InputError("coefficients must be strings \"p/q\" or integers");
    }
    q.push_back(v);
  }
  CycloNumber x = CycloNumber::from_coefficients(f, q);
  if (target && target != f) {
    try {
      return x.lift(target);
    } catch (const std::exception& e) {
      throw InputError(std::string("cannot place number in the category field: ") + e.what());
    }
  }
  return x;
}

json category_to_json(const CategoryData& cat) {
  json j;
  j["name"] = cat.name;
  j["N"] = cat.field->order();
  j["labels"] = cat.labels;
  j["dual"] = cat.dual;
  json qd = json::array(), tw = json::array(), sm = json::array(), fu = json::array();
  for (const auto& x : cat.qdim) qd.push_back(cyclo_to_json(x));
  for (const auto& x : cat.twist) tw.push_back(cyclo_to_json(x));
  for (const auto& row : cat.smatrix) {
    json r = json::array();
    for (const auto& x : row) r.push_back(cyclo_to_json(x));
    sm.push_back(r);
  }
  const int n = cat.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (int k = cat.N(a, b, c); k != 0) fu.push_back({a, b, c, k});
  j["qdim"] = qd;
  j["twist"] = tw;
  j["smatrix"] = sm;
  j["fusion"] = fu;
  return j;
}

CategoryData category_from_json(const json& j) {
  try {
    for (const char* key : {"name", "N", "labels", "dual", "qdim", "twist", "smatrix", "fusion"})
      if (!j.contains(key)) throw InputError(std::string("category file lacks `") + key + "`");
    CategoryData c;
    c.name = j["name"].get<std::string>();
    c.field = CycloField::get(j["N"].get<int>());
    c.labels = j["labels"].get<std::vector<std::string>>();
    c.dual = j["dual"].get<std::vector<int>>();
    const size_t n = c.labels.size();
    for (const json& x : j["qdim"]) c.qdim.push_back(cyclo_from_json(x, c.field));
    for (const json& x : j["twist"]) c.twist.push_back(cyclo_from_json(x, c.field));
    for (const json& row : j["smatrix"]) {
      std::vector<CycloNumber> r;
      for (const json& x : row) r.push_back(cyclo_from_json(x, c.field));
      c.smatrix.push_back(std::move(r));
    }
    c.fusion.assign(n * n * n, 0);
    for (const json& t : j["fusion"]) {
      if (!t.is_array() || t.size() != 4) throw InputError("fusion entries are [a, b, c, count]");
      int a = t[0].get<int>(), b = t[1].get<int>(), cc = t[2].get<int>(), k = t[3].get<int>();
      const int ni = static_cast<int>(n);
      if (a < 0 || b < 0 || cc < 0 || a >= ni || b >= ni || cc >= ni) throw InputError("fusion label out of range");
      if (k < 0) throw InputError("fusion multiplicities are nonnegative");
      c.N(a, b, cc) = k;
    }
    c.validate_shape();
    return c;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("malformed category: ") + e.what());
  }
}

CategoryData builtin_category(const std::string& spec) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) != 0) throw InputError("builtin categories start with `builtin:`");
  auto factors = split(spec.substr(prefix.size()), '*');
  if (factors.empty()) throw InputError("empty builtin category");
  CategoryData acc;
  bool first = true;
  for (std::string f : factors) {
    f = trim(f);
    if (f.rfind(prefix, 0) == 0) f = f.substr(prefix.size());
    CategoryData c = builtin_factor(f);
    acc = first ? std::move(c) : product_category(acc, c);
    first = false;
  }
  return acc;
}

CategoryData load_category(const std::string& source) {
  if (source.rfind("builtin:", 0) == 0) return builtin_category(source);
  json j;
  try {
    j = json::parse(read_file(source));
  } catch (const json::exception& e) {
    throw InputError("`" + source + "` is not valid JSON: " + e.what());
  }
  return category_from_json(j);
}

IntMatrix parse_matrix(const std::string& text_or_path) {
  std::string text = trim(text_or_path);
  if (!text.empty() && text[0] != '[' && std::filesystem::is_regular_file(text)) text = trim(read_file(text));
  IntMatrix m;
  if (!text.empty() && text[0] == '[') {
    try {
      m = json::parse(text).get<IntMatrix>();
    } catch (const json::exception& e) {
      throw InputError(std::string("bad matrix JSON: ") + e.what());
    }
  } else {
    for (const std::string& row : split(text, ';')) {
      std::istringstream in(row);
      std::vector<long> r;
      std::string tok;
      while (in >> tok) {
        for (char& ch : tok)
          if (ch == ',') ch = ' ';
        std::istringstream t(tok);
        std::string piece;
        while (t >> piece) r.push_back(parse_long(piece, "matrix entry"));
      }
      if (!r.empty()) m.push_back(std::move(r));
    }
  }
  for (const auto& r : m)
    if (r.size() != m.size()) throw InputError("matrix must be square");
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t k = 0; k < i; ++k)
      if (m[i][k] != m[k][i]) throw InputError("matrix must be symmetric");
  return m;
}

PlumbingForest load_forest(const std::string& path) {
  try {
    return parse_forest(read_file(path));
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

std::string vector_key(const IntVector& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

json value_to_json(const InvariantValue& v) {
  return {{"exact", cyclo_to_json(v.exact)},
          {"approx", {v.approx.real(), v.approx.imag()}},
          {"b_plus", v.b_plus},
          {"b_minus", v.b_minus},
          {"denom_plus", v.denom_plus.valid() ? cyclo_to_json(v.denom_plus) : json()},
          {"denom_minus", v.denom_minus.valid() ? cyclo_to_json(v.denom_minus) : json()}};
}

json table_to_json(const RefinedInvariantTable& t) {
  json entries = json::array();
  for (size_t i = 0; i < t.keys.size(); ++i) {
    json e = value_to_json(t.values[i]);
    e["structure"] = t.keys[i];
    entries.push_back(std::move(e));
  }
  return {{"kind", to_string(t.kind)}, {"d", t.d}, {"entries", entries}};
}

std::string table_to_csv(const RefinedInvariantTable& t) {
  std::ostringstream os;
  os.precision(17);
  os << "kind,d,structure,re,im,N,coeffs\n";
  for (size_t i = 0; i < t.keys.size(); ++i) {
    const auto& v = t.values[i];
    os << to_string(t.kind) << ',' << t.d << ",\"" << vector_key(t.keys[i]) << "\"," << v.approx.real() << ','
       << v.approx.imag() << ',' << v.exact.field()->order() << ",\"";
    auto cs = v.exact.coefficients();
    for (size_t k = 0; k < cs.size(); ++k) os << (k ? " " : "") << cs[k].get_str();
    os << "\"\n";
  }
  return os.str();
}

json structures_to_json(const StructureSet& s) {
  return {{"kind", to_string(s.kind)}, {"d", s.d}, {"count", s.count()}, {"representatives", s.elements}};
}

json forest_to_json(const PlumbingForest& f) {
  SignaturePair sig = signature(linking_matrix(f));
  json edges = json::array();
  for (const Edge& e : f.edges()) edges.push_back({e.u, e.v, e.sign});
  return {{"vertices", f.size()},
          {"framings", f.framings()},
          {"edges", edges},
          {"linking_matrix", linking_matrix(f)},
          {"b_plus", sig.b_plus},
          {"b_minus", sig.b_minus},
          {"nullity", sig.nullity}};
}

InvariantReport compute_invariant(const CategoryData& cat, const PlumbingForest& f, const InvariantRequest& req) {
  Evaluator ev(cat);
  InvariantReport rep;
  rep.wrt = wrt(ev, f);
  SignaturePair sig = signature(linking_matrix(f));
  rep.document = {{"category", cat.name},
                  {"manifold", {{"vertices", f.size()}, {"b_plus", sig.b_plus}, {"b_minus", sig.b_minus}, {"nullity", sig.nullity}}},
                  {"wrt", value_to_json(rep.wrt)}};
  if (req.refine.empty()) {
    if (req.override_hypotheses) throw InputError("--override needs a refinement");
    return rep;
  }
  if (req.d < 0) throw InputError("refinement modulus must be positive");
  InvertibleGroup G = invertibles(cat);
  int modulus = req.d;
  if (req.refine == "spinc") modulus = req.d > 0 ? 2 * req.d : G.order();
  else if (modulus == 0) modulus = G.order();
  Grading g;
  try {
    g = grading_of_order(cat, G, modulus, req.e_d);
  } catch (const std::invalid_argument& e) {
    throw HypothesisError(e.what());
  }
  if (req.refine == "spin") {
    if (req.override_hypotheses) throw InputError("--override applies to spinc only");
    rep.table = wrt_spin(ev, f, g);
  } else if (req.refine == "coh") {
    if (req.override_hypotheses) throw InputError("--override applies to spinc only");
    rep.table = wrt_cohomology(ev, f, g);
  } else if (req.refine == "spinc") {
    rep.table = wrt_spinc(ev, f, g, req.override_hypotheses, req.route);
  } else if (req.refine == "hom") {
    if (req.override_hypotheses) throw InputError("--override applies to spinc only");
    rep.table = wrt_homology(ev, f, g, req.route);
  } else {
    throw InputError("unknown refinement `" + req.refine + "`");
  }
  rep.document["refinement"] = table_to_json(*rep.table);
  if (req.override_hypotheses) rep.document["refinement"]["override"] = true;
  return rep;
}

}  // namespace spinmod
