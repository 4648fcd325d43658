#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinmod/cyclo.hpp"

namespace spinmod {

using CycloMatrix = std::vector<std::vector<CycloNumber>>;

/// A finite premodular category given by its numerical data over Q(zeta_N).
///
/// Label 0 is the unit. `fusion` is a flat |Γ|^3 array, entry (a, b, c) at
/// index (a * n + b) * n + c holding N^c_{ab}.
struct CategoryData {
  std::string name;
  Field field;
  std::vector<std::string> labels;
  std::vector<int> dual;
  std::vector<CycloNumber> qdim;
  std::vector<CycloNumber> twist;
  CycloMatrix smatrix;
  std::vector<int> fusion;

  int size() const { return static_cast<int>(labels.size()); }
  int N(int a, int b, int c) const {
    const size_t n = labels.size();
    return fusion[(static_cast<size_t>(a) * n + static_cast<size_t>(b)) * n + static_cast<size_t>(c)];
  }
  int& N(int a, int b, int c) {
    const size_t n = labels.size();
    return fusion[(static_cast<size_t>(a) * n + static_cast<size_t>(b)) * n + static_cast<size_t>(c)];
  }

  /// Throws std::invalid_argument on inconsistent sizes or foreign fields.
  void validate_shape() const;
};

bool operator==(const CategoryData& a, const CategoryData& b);

struct AxiomReport {
  bool premodular = false;
  bool modular = false;
  std::vector<int> transparent;
  std::vector<std::string> violations;
  /// Sum of squared dimensions, i.e. the 0-framed unknot colored by ω.
  CycloNumber global_dimension;
  /// True when the rank test and the transparency test agree. Only
  /// meaningful when the global dimension is nonzero.
  bool criteria_agree = true;
  int smatrix_rank = 0;
};

AxiomReport check_axioms(const CategoryData& cat);

/// Exact rank of a matrix over its cyclotomic field.
int matrix_rank(CycloMatrix m);

struct InvertibleGroup {
  std::vector<int> elements;               // labels, ascending, elements[0] == 0
  std::vector<std::vector<int>> table;     // table[i][j] = label of elements[i] ⊗ elements[j]
  std::optional<int> generator;            // a label generating G, when cyclic
  std::vector<int> element_orders;         // parallel to elements

  int order() const { return static_cast<int>(elements.size()); }
  int index_of(int label) const;           // -1 when not invertible
  bool contains(int label) const { return index_of(label) >= 0; }
  int multiply(int a, int b) const;
  int power(int a, long k) const;
  int order_of(int label) const;
};

InvertibleGroup invertibles(const CategoryData& cat);

/// χ_λ(g) = S̃_{λg} / (⟨λ⟩⟨g⟩).
CycloNumber character(const CategoryData& cat, int lambda, int g);

/// Character table indexed [λ][position of g in G.elements].
CycloMatrix character_table(const CategoryData& cat, const InvertibleGroup& group);

struct Grading {
  int modulus = 1;
  CycloNumber primitive_root;   // e_d
  int generator = 0;            // the label t whose characters define the grading
  std::vector<int> degree;      // per label, in [0, modulus)
};

/// Grading by the characters of t: deg(λ) is the discrete log of χ_λ(t) base e_d,
/// where d is the order of t in G. e_d defaults to zeta_N^{N/d}.
Grading make_grading(const CategoryData& cat, const InvertibleGroup& group, int t,
                     std::optional<CycloNumber> e_d = std::nullopt);

/// The grading by a generator of the cyclic group G.
Grading default_grading(const CategoryData& cat, const InvertibleGroup& group);

/// Grading by t^{|G| / modulus} for the generator t of a cyclic G; e_d = zeta_N^{k N / modulus}.
Grading grading_of_order(const CategoryData& cat, const InvertibleGroup& group, int modulus, int e_d_power = 1);

/// Primitive d-th root zeta_N^{k N / d}; k must be a unit mod d.
CycloNumber primitive_root(const Field& field, int d, int k = 1);

struct RefinableStructure {
  std::vector<int> subgroup;   // labels
  int order = 1;
  bool is_spin = false;
  std::vector<int> spin_character;  // twist sign (+1 / -1) per subgroup element, 0 if not a sign
};

std::vector<RefinableStructure> refinable_structures(const CategoryData& cat, const InvertibleGroup& group,
                                                     const Grading& grading);

enum class KirbyKind { Plain, Graded, Dual };

struct KirbyColor {
  KirbyKind kind = KirbyKind::Plain;
  int parameter = 0;
  std::vector<CycloNumber> weights;
};

KirbyColor kirby_color(const CategoryData& cat, KirbyKind kind, int parameter = 0,
                       const Grading* grading = nullptr);

// ---------------------------------------------------------------------------
// Built-in families and constructions.

enum class Sl2Convention {
  Kauffman,  // θ_i = (-1)^i A^{i^2+2i}
  Unsigned   // θ_i = A^{i^2+2i}, i.e. A replaced by -A in the twist
};

CategoryData sl2_category(int r, Sl2Convention convention = Sl2Convention::Kauffman);
CategoryData abelian_category(int n, const CycloNumber& q);
CategoryData trivial_category();
CategoryData product_category(const CategoryData& a, const CategoryData& b);

/// Re-express all data in a larger cyclotomic field.
CategoryData lift_field(const CategoryData& cat, const Field& target);
Field common_field(const Field& a, const Field& b);

CategoryData reduced_subcategory(const CategoryData& cat, const Grading& grading, int m);

/// Multiply ⟨λ⟩ and θ_λ by (-1)^{deg λ} and S̃_{λμ} by (-1)^{deg λ + deg μ}.
/// Needs an even grading modulus. Turns ⟨t⟩ = -1 into ⟨t⟩ = +1 for odd sl2 levels.
CategoryData sign_regauge(const CategoryData& cat, const Grading& grading);

/// Central extension Γ × Z_α with braiding twisted by ξ^{-f f}.
/// `f` gives per-label values in Z_{αd} with f ≡ deg mod d.
CategoryData extend_category(const CategoryData& cat, const Grading& grading, int alpha, const CycloNumber& xi,
                             const std::vector<int>& f);

/// Quotient by the transparent subgroup (free action, trivial twists and dimensions required).
CategoryData modularize(const CategoryData& cat);

/// ξ = exp(iπ l / (α² m)) with β² l ≡ 1 + α² m mod 2α²m, returned as a root in Q(zeta_{2α²m}).
/// Throws when α ≢ m mod 2 or gcd(β, αm) != 1.
CycloNumber spin_case_xi(int alpha, int beta, int m);

}  // namespace spinmod
