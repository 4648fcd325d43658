#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "spinmod/category.hpp"
#include "spinmod/invariants.hpp"
#include "spinmod/structures.hpp"
#include "spinmod/surgery.hpp"

namespace spinmod {

using json = nlohmann::json;

/// Malformed user input (files, builtin names, inline matrices).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"N": n, "coeffs": ["p/q", ...]}
json cyclo_to_json(const CycloNumber& x);
/// Reads a serialized number; when `target` is given the value is lifted into it.
CycloNumber cyclo_from_json(const json& j, const Field& target = nullptr);

json category_to_json(const CategoryData& cat);
CategoryData category_from_json(const json& j);

/// `builtin:sl2:<r>[:unsigned]`, `builtin:abelian:<N>:<k>:<M>` (q = ζ_M^k),
/// `builtin:trivial`, and products joined by `*` after the prefix.
CategoryData builtin_category(const std::string& spec);
/// A builtin spec or a path to a category JSON file.
CategoryData load_category(const std::string& source);

/// Inline JSON (`[[1,2],[2,3]]`), rows separated by `;` (`1 2; 2 3`), or a file holding either.
IntMatrix parse_matrix(const std::string& text_or_path);

PlumbingForest load_forest(const std::string& path);
std::string read_file(const std::string& path);

json value_to_json(const InvariantValue& v);
json table_to_json(const RefinedInvariantTable& t);
std::string table_to_csv(const RefinedInvariantTable& t);
json structures_to_json(const StructureSet& s);
json forest_to_json(const PlumbingForest& f);

std::string vector_key(const IntVector& v);

/// What `spinmod invariant` computes: wrt plus an optional refinement.
struct InvariantRequest {
  std::string refine;  // "", "spin", "coh", "spinc" or "hom"
  int d = 0;           // 0 selects |G|; for spinc the grading modulus is 2d
  int e_d = 1;         // e_d = zeta^{e_d N / modulus}
  bool override_hypotheses = false;
  CosetRoute route = CosetRoute::Factored;
};

struct InvariantReport {
  json document;
  InvariantValue wrt;
  std::optional<RefinedInvariantTable> table;
};

InvariantReport compute_invariant(const CategoryData& cat, const PlumbingForest& f, const InvariantRequest& req);

}  // namespace spinmod
