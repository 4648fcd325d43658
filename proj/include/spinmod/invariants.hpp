#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "spinmod/category.hpp"
#include "spinmod/structures.hpp"
#include "spinmod/surgery.hpp"

namespace spinmod {

/// Raised when a refinement is requested from a category that does not carry it.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Weights = std::vector<CycloNumber>;  // indexed by label

struct InvariantValue {
  CycloNumber exact;
  std::complex<double> approx;
  int b_plus = 0;
  int b_minus = 0;
  CycloNumber denom_plus;   // F(U_{+1}(ω))
  CycloNumber denom_minus;  // F(U_{-1}(ω))
};

struct RefinedInvariantTable {
  StructureKind kind = StructureKind::Spin;
  long d = 2;
  std::vector<IntVector> keys;
  std::vector<InvariantValue> values;
  CycloNumber sum() const;
};

/// Colored and weighted evaluation of plumbing forests for one category.
/// Caches twist powers and inverse dimensions; safe to share between threads.
class Evaluator {
 public:
  explicit Evaluator(CategoryData cat);

  const CategoryData& category() const { return cat_; }
  const Field& field() const { return cat_.field; }

  /// Rooted product ⟨λ_r⟩ Π θ^{m_v} Π S̃^{±}_{λ_v λ_u} / ⟨λ_u⟩ per tree; `root`
  /// selects the root of its own component (others use their smallest vertex).
  CycloNumber eval_colored(const PlumbingForest& f, const std::vector<int>& colors, int root = -1) const;

  /// Σ over colorings of Π weights · eval_colored, by leaf-to-root message passing.
  CycloNumber eval_weighted(const PlumbingForest& f, const std::vector<Weights>& weights) const;

  /// The same sum by direct enumeration of Γ^n.
  CycloNumber eval_weighted_brute(const PlumbingForest& f, const std::vector<Weights>& weights) const;

  /// Σ_{ε ∈ σ + c·Im L} F(L(ω^{ε_1}, …, ω^{ε_n})) where ω^ε uses the grading
  /// (modulus D) and c = 2 (D = 2d) or c = 1 (D = d). Computed by a constrained
  /// message pass over (label, degree residue) states.
  CycloNumber dual_coset_sum(const PlumbingForest& f, const Grading& grading, int c, const IntVector& sigma) const;

  /// The same coset sum by explicit enumeration of the coset.
  CycloNumber dual_coset_sum_enumerated(const PlumbingForest& f, const Grading& grading, int c,
                                        const IntVector& sigma) const;

  /// F(U_m(w)) for a single m-framed unknot.
  CycloNumber unknot(long framing, const Weights& w) const;

  const CycloNumber& twist_power(int label, long m) const;
  const Weights& plain_weights() const { return plain_; }

 private:
  const CycloNumber& inverse_dim(int label) const;
  const CycloNumber& edge_factor(int sign, int a, int b) const;
  CycloNumber vertex_factor(int label, long framing, int degree) const;

  CategoryData cat_;
  Weights plain_;
  std::vector<std::optional<CycloNumber>> inv_dim_;
  CycloMatrix s_minus_;
  mutable std::mutex mu_;
  mutable std::map<long, std::vector<CycloNumber>> twist_pow_;
};

/// Signature and the plain unknot denominators.
InvariantValue normalize(const Evaluator& ev, const IntMatrix& L, const CycloNumber& numerator);

InvariantValue wrt(const Evaluator& ev, const PlumbingForest& f);

RefinedInvariantTable wrt_spin(const Evaluator& ev, const PlumbingForest& f, const Grading& grading);
RefinedInvariantTable wrt_cohomology(const Evaluator& ev, const PlumbingForest& f, const Grading& grading);

enum class CosetRoute { Factored, Enumerated };

/// Chern-vector refinement; `grading` has modulus 2d and d must be even unless `override`.
RefinedInvariantTable wrt_spinc(const Evaluator& ev, const PlumbingForest& f, const Grading& grading,
                                bool override_hypotheses = false, CosetRoute route = CosetRoute::Factored);
/// H_1 refinement; `grading` has modulus d.
RefinedInvariantTable wrt_homology(const Evaluator& ev, const PlumbingForest& f, const Grading& grading,
                                   CosetRoute route = CosetRoute::Factored);

/// Checks the refinement hypotheses on (category, grading) and throws HypothesisError.
void require_spin(const CategoryData& cat, const Grading& grading);
void require_nonspin(const CategoryData& cat, const Grading& grading);

// ---------------------------------------------------------------------------
// Gauss-sum invariants.

struct MooRefinement {
  int delta = 1;
  int alpha = 1;
  IntVector c;        // class mod delta
  bool spin = false;  // spin: g sums over γ ≡ δ/2, otherwise γ ≡ 0
};

struct MooParams {
  int m = 1;
  CycloNumber xi;
  std::optional<MooRefinement> refinement;
};

/// Σ_{l ∈ (Z_m)^n} ξ^{lᵗ L l}.
CycloNumber moo_numerator(const IntMatrix& L, int m, const CycloNumber& xi);
/// Σ_{γ ∈ (Z_range)^n, γ ≡ c mod δ} ξ^{γᵗ L γ}.
CycloNumber moo_refined_numerator(const IntMatrix& L, long range, int delta, const IntVector& c, const CycloNumber& xi);

InvariantValue moo(const IntMatrix& L, const MooParams& p);
InvariantValue moo_refined(const IntMatrix& L, const MooParams& p);

// ---------------------------------------------------------------------------
// Decomposition into a reduced category and a Gauss-sum factor.

struct DecompositionSetup {
  CategoryData reduced;
  Grading grading;
  int d = 1;
  int delta = 1;
  int m = 1;
  int t_delta = 0;    // label of t^δ
  CycloNumber eta;    // braiding scalar of t^δ with itself: θ / ⟨⟩
  CycloNumber xi;     // η ⟨t⟩^δ
};

/// Needs a cyclic group of invertibles with gcd(m, δ) = 1.
DecompositionSetup decomposition_setup(const CategoryData& cat);

struct DecompositionCheck {
  bool equal = false;
  CycloNumber lhs;
  CycloNumber rhs;
};

DecompositionCheck check_decomposition(const Evaluator& full, const Evaluator& reduced, const DecompositionSetup& s,
                                       const PlumbingForest& f);

}  // namespace spinmod
