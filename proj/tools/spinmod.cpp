// Command-line front end for the spinmod library.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "spinmod/io.hpp"
#include "spinmod/verify.hpp"

using namespace spinmod;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

std::string approx_text(const std::complex<double>& z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

json axioms_json(const AxiomReport& r) {
  return {{"premodular", r.premodular},
          {"modular", r.modular},
          {"transparent", r.transparent},
          {"smatrix_rank", r.smatrix_rank},
          {"global_dimension", r.global_dimension.valid() ? cyclo_to_json(r.global_dimension) : json()},
          {"criteria_agree", r.criteria_agree},
          {"violations", r.violations}};
}

json derived_json(const CategoryData& cat) {
  json out;
  InvertibleGroup G = invertibles(cat);
  out["invertibles"] = G.elements;
  out["invertible_orders"] = G.element_orders;
  out["cyclic"] = G.generator.has_value();
  if (G.generator) {
    Grading g = default_grading(cat, G);
    out["grading"] = {{"generator", g.generator}, {"modulus", g.modulus}, {"degree", g.degree}};
    json rs = json::array();
    for (const auto& s : refinable_structures(cat, G, g))
      rs.push_back({{"subgroup", s.subgroup}, {"order", s.order}, {"spin", s.is_spin}, {"spin_character", s.spin_character}});
    out["refinable"] = rs;
  }
  return out;
}

std::string category_text(const CategoryData& cat, const AxiomReport& ax) {
  std::ostringstream os;
  os << "category " << cat.name << " over Q(zeta_" << cat.field->order() << "), " << cat.size() << " labels\n";
  for (int l = 0; l < cat.size(); ++l) {
    const size_t i = static_cast<size_t>(l);
    os << "  " << cat.labels[i] << ": dual " << cat.labels[static_cast<size_t>(cat.dual[i])] << ", dim "
       << cat.qdim[i].to_string() << ", twist " << cat.twist[i].to_string() << "\n";
  }
  json d = derived_json(cat);
  os << "invertibles: " << d["invertibles"].dump() << (d["cyclic"].get<bool>() ? " (cyclic)" : " (not cyclic)") << "\n";
  if (d.contains("grading")) {
    os << "grading mod " << d["grading"]["modulus"] << ": degrees " << d["grading"]["degree"].dump() << "\n";
    for (const auto& r : d["refinable"])
      os << "refinable subgroup " << r["subgroup"].dump() << (r["spin"].get<bool>() ? " spin" : " non-spin") << "\n";
  }
  os << "premodular: " << (ax.premodular ? "yes" : "no") << ", modular: " << (ax.modular ? "yes" : "no")
     << ", transparent: " << json(ax.transparent).dump() << "\n";
  for (const auto& v : ax.violations) os << "  violation: " << v << "\n";
  return os.str();
}

std::string value_text(const std::string& head, const InvariantValue& v) {
  std::ostringstream os;
  os << head << " = " << v.exact.to_string() << "  (~ " << approx_text(v.approx) << ")\n";
  return os.str();
}

uint64_t resolve_seed(const CLI::Option* opt, uint64_t value) {
  if (opt->count() > 0) return value;
  if (const char* env = std::getenv("SPINMOD_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError(std::string("SPINMOD_SEED is not an integer: ") + env);
    }
  }
  return value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact refined quantum invariants of plumbed 3-manifolds"};
  app.require_subcommand(1);

  // category
  auto* cat_cmd = app.add_subcommand("category", "Inspect, check and export category data");
  cat_cmd->require_subcommand(1);
  std::string cat_source, out_path, cat_format = "pretty";
  auto* cat_check = cat_cmd->add_subcommand("check", "Verify the premodular and modular axioms");
  cat_check->add_option("source", cat_source, "builtin spec or category file")->required();
  cat_check->add_option("--format", cat_format)->check(CLI::IsMember({"pretty", "json"}));
  auto* cat_show = cat_cmd->add_subcommand("show", "Print the data and derived structure");
  cat_show->add_option("source", cat_source, "builtin spec or category file")->required();
  cat_show->add_option("--format", cat_format)->check(CLI::IsMember({"pretty", "json"}));
  auto* cat_derive = cat_cmd->add_subcommand("derive", "Write a builtin category to a file");
  cat_derive->add_option("source", cat_source, "builtin spec")->required();
  cat_derive->add_option("--out", out_path, "output file")->required();

  // manifold
  auto* man_cmd = app.add_subcommand("manifold", "Inspect a plumbing forest");
  man_cmd->require_subcommand(1);
  std::string forest_path, man_format = "pretty";
  auto* man_show = man_cmd->add_subcommand("show", "Linking matrix and signature");
  man_show->add_option("file", forest_path)->required();
  man_show->add_option("--format", man_format)->check(CLI::IsMember({"pretty", "json"}));

  // structures
  auto* st_cmd = app.add_subcommand("structures", "Enumerate spin, cohomology, Chern or homology structures");
  std::string st_kind, st_matrix;
  long st_d = 2;
  st_cmd->add_option("kind", st_kind)->required()->check(CLI::IsMember({"spin", "coh", "chern", "hom"}));
  st_cmd->add_option("--matrix", st_matrix, "inline matrix or file")->required();
  st_cmd->add_option("--d", st_d, "modulus")->check(CLI::PositiveNumber);

  // invariant
  auto* inv_cmd = app.add_subcommand("invariant", "Compute the invariant and an optional refinement");
  std::string inv_cat, inv_man, inv_refine, inv_format = "json", inv_route = "factored";
  int inv_d = 0, inv_ed = 1;
  bool inv_override = false;
  inv_cmd->add_option("--category", inv_cat)->required();
  inv_cmd->add_option("--manifold", inv_man, "forest file")->required();
  inv_cmd->add_option("--refine", inv_refine)->check(CLI::IsMember({"spin", "coh", "spinc", "hom"}));
  inv_cmd->add_option("--d", inv_d, "refinement modulus");
  inv_cmd->add_option("--e_d", inv_ed, "use zeta^k as the primitive root e_d");
  inv_cmd->add_option("--format", inv_format)->check(CLI::IsMember({"json", "csv", "pretty"}));
  inv_cmd->add_option("--route", inv_route, "coset summation")->check(CLI::IsMember({"factored", "enumerated"}));
  inv_cmd->add_flag("--override", inv_override, "evaluate even when the refinement hypotheses fail");

  // verify
  auto* ver_cmd = app.add_subcommand("verify", "Run a verification suite");
  std::string suite, ver_cat, ver_format = "text";
  int corpus_size = 50, sequences = 200, max_length = 4, instances = 200;
  uint64_t seed = 7;
  ver_cmd->add_option("suite", suite)
      ->required()
      ->check(CLI::IsMember({"sum", "kirby", "lemmas", "decomposition", "oracle", "bijection", "moo", "spinc"}));
  ver_cmd->add_option("--category", ver_cat);
  ver_cmd->add_option("--corpus-size", corpus_size)->check(CLI::NonNegativeNumber);
  auto* seed_opt = ver_cmd->add_option("--seed", seed);
  ver_cmd->add_option("--sequences", sequences, "move sequences per manifold")->check(CLI::NonNegativeNumber);
  ver_cmd->add_option("--max-length", max_length, "longest move sequence")->check(CLI::PositiveNumber);
  ver_cmd->add_option("--instances", instances, "random instances for oracle suites")->check(CLI::NonNegativeNumber);
  ver_cmd->add_option("--format", ver_format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (cat_check->parsed()) {
      CategoryData cat = load_category(cat_source);
      AxiomReport ax = check_axioms(cat);
      if (cat_format == "json") std::cout << axioms_json(ax).dump(2) << "\n";
      else std::cout << category_text(cat, ax);
      return ax.premodular ? kOk : kFailed;
    }
    if (cat_show->parsed()) {
      CategoryData cat = load_category(cat_source);
      AxiomReport ax = check_axioms(cat);
      if (cat_format == "json") {
        json j{{"category", category_to_json(cat)}, {"derived", derived_json(cat)}, {"axioms", axioms_json(ax)}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << category_text(cat, ax);
      }
      return kOk;
    }
    if (cat_derive->parsed()) {
      CategoryData cat = builtin_category(cat_source);
      std::ofstream out(out_path);
      if (!out) throw InputError("cannot write `" + out_path + "`");
      out << category_to_json(cat).dump(1) << "\n";
      std::cout << "wrote " << cat.name << " to " << out_path << "\n";
      return kOk;
    }
    if (man_show->parsed()) {
      PlumbingForest f = load_forest(forest_path);
      json j = forest_to_json(f);
      if (man_format == "json") {
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << f.size() << " vertices, " << f.edges().size() << " edges\nlinking matrix:\n";
        for (const auto& row : linking_matrix(f)) {
          for (long x : row) std::cout << "  " << x;
          std::cout << "\n";
        }
        std::cout << "b+ = " << j["b_plus"] << ", b- = " << j["b_minus"] << ", nullity = " << j["nullity"] << "\n";
      }
      return kOk;
    }
    if (st_cmd->parsed()) {
      IntMatrix L = parse_matrix(st_matrix);
      std::cout << structures_to_json(structure_set(parse_structure_kind(st_kind), L, st_d)).dump() << "\n";
      return kOk;
    }
    if (inv_cmd->parsed()) {
      CategoryData cat = load_category(inv_cat);
      PlumbingForest f = load_forest(inv_man);
      InvariantRequest req{inv_refine, inv_d, inv_ed, inv_override,
                           inv_route == "enumerated" ? CosetRoute::Enumerated : CosetRoute::Factored};
      InvariantReport rep = compute_invariant(cat, f, req);
      const json& j = rep.document;
      const InvariantValue& w = rep.wrt;
      const auto& table = rep.table;
      if (inv_format == "json") {
        std::cout << j.dump(2) << "\n";
      } else if (inv_format == "csv") {
        if (!table) throw InputError("--format csv needs --refine");
        std::cout << table_to_csv(*table);
      } else {
        std::cout << value_text("tau(" + inv_man + ")", w);
        if (table) {
          for (size_t i = 0; i < table->keys.size(); ++i)
            std::cout << value_text("  " + to_string(table->kind) + " [" + vector_key(table->keys[i]) + "]", table->values[i]);
        }
      }
      return kOk;
    }
    if (ver_cmd->parsed()) {
      seed = resolve_seed(seed_opt, seed);
      CorpusOptions co;
      co.random_count = corpus_size;
      co.seed = seed;
      auto corpus = make_corpus(co);
      auto need_category = [&]() {
        if (ver_cat.empty()) throw InputError("suite `" + suite + "` needs --category");
        return load_category(ver_cat);
      };
      SuiteReport rep;
      if (suite == "sum") rep = verify_sum(need_category(), corpus);
      else if (suite == "kirby") rep = verify_kirby(need_category(), corpus, sequences, max_length, seed);
      else if (suite == "lemmas") rep = verify_lemmas(need_category());
      else if (suite == "decomposition") rep = verify_decomposition(need_category(), corpus);
      else if (suite == "oracle") rep = verify_oracle(instances, seed);
      else if (suite == "bijection") rep = verify_bijection(instances, seed);
      else if (suite == "moo") rep = verify_moo();
      else {
        std::optional<SpinExtension> ext;
        if (!ver_cat.empty()) {
          CategoryData c = load_category(ver_cat);
          InvertibleGroup G = invertibles(c);
          for (int t : G.elements) {
            const int o = G.order_of(t);
            if (o % 4 != 0) continue;
            Grading g = make_grading(c, G, t);
            if (g.degree[static_cast<size_t>(t)] == 0 && (-c.twist[static_cast<size_t>(t)]).is_one()) {
              ext = SpinExtension{c, g, ver_cat};
              break;
            }
          }
          if (!ext) throw HypothesisError(c.name + " has no invertible t of order divisible by 4 with deg t = 0 and twist -1");
        } else {
          ext = find_spin_extension({});
        }
        rep = ext ? verify_spinc(*ext, corpus, 3, seed) : verify_spinc_structures(corpus);
      }
      if (ver_format == "json") std::cout << rep.to_json().dump(2) << "\n";
      else std::cout << rep.to_text();
      return rep.passed() ? kOk : kFailed;
    }
  } catch (const HypothesisError& e) {
    std::cerr << "spinmod: hypothesis not met: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "spinmod: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "spinmod: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "spinmod: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
