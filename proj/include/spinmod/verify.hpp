#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spinmod/io.hpp"

namespace spinmod {

// ---------------------------------------------------------------------------
// Corpus of surgery presentations.

struct CorpusEntry {
  std::string name;
  PlumbingForest forest;
};

struct CorpusOptions {
  int random_count = 50;
  uint64_t seed = 7;
  int max_vertices = 8;
  int max_framing = 5;
  bool classics = true;  // lens chains, E8, S^3 and S^1 x S^2
};

/// Uniform vertex count in [1, max_vertices], framings in [-max_framing, max_framing],
/// each new vertex attached to an earlier one (probability 7/8) with a random clasp sign.
PlumbingForest random_forest(std::mt19937_64& rng, int max_vertices, int max_framing);

/// Negative continued-fraction chain of -p/q surgery, presenting L(p, q).
PlumbingForest lens_chain(long p, long q);

std::vector<CorpusEntry> make_corpus(const CorpusOptions& opts);

/// A legal random sequence of stabilize / blow-up / blow-down / reverse moves.
std::vector<Move> random_moves(const PlumbingForest& f, std::mt19937_64& rng, int length);

// ---------------------------------------------------------------------------
// Verification reports.

struct CheckGroup {
  std::string name;
  long total = 0;
  long failed = 0;
  std::vector<std::string> witnesses;  // first few failures

  void record(bool ok, const std::string& witness);
};

struct SuiteReport {
  std::string suite;
  std::string category;
  std::deque<CheckGroup> groups;  // stable references from group()
  std::vector<std::string> notes;
  double seconds = 0;

  bool passed() const;
  CheckGroup& group(const std::string& name);
  json to_json() const;
  std::string to_text() const;
};

/// Which refinement a category supports with its default grading.
enum class RefinementKind { None, Spin, Cohomology };
RefinementKind default_refinement(const CategoryData& cat, const Grading& grading);

/// Σ over the refined table equals wrt.
SuiteReport verify_sum(const CategoryData& cat, const std::vector<CorpusEntry>& corpus);

/// wrt and refined-table multisets are unchanged by random move sequences.
SuiteReport verify_kirby(const CategoryData& cat, const std::vector<CorpusEntry>& corpus, int sequences_per_manifold,
                         int max_length, uint64_t seed);

/// Graded ±1-unknots vanish off the distinguished degree.
SuiteReport verify_lemmas(const CategoryData& cat);

/// τ_C = τ_{C̃} · τ^MOO_ξ over the corpus.
SuiteReport verify_decomposition(const CategoryData& cat, const std::vector<CorpusEntry>& corpus);

/// DP against brute force and Smith solver against exhaustive search.
SuiteReport verify_oracle(int instances, uint64_t seed);

/// Chern counts against |coker(L mod d)|.
SuiteReport verify_bijection(int instances, uint64_t seed);

/// MOO normalizations, Gauss-sum magnitudes and the refined partition identity.
SuiteReport verify_moo();

// ---------------------------------------------------------------------------
// Complex-spin refinement.

struct SpinExtension {
  CategoryData category;
  Grading grading;
  std::string recipe;  // how the category was produced
};

struct ExtensionSearchBudget {
  int max_abelian_rank = 6;  // abelian(N, zeta_{2N}^k) bases, N <= this
  int max_sl2_level = 8;     // sl2(r) bases (and regauged odd levels), r <= this
  int max_alpha = 4;
  long max_candidates = 4000;
};

/// First modular category with an invertible t of order 2d, d even, deg t = 0 and
/// θ_t = -1, among extensions (followed by modularization when needed) of the bases.
std::optional<SpinExtension> find_spin_extension(const ExtensionSearchBudget& budget, long* tried = nullptr);

/// Stabilization and reversal invariance of the Chern-vector tables, structure counts,
/// and the factored coset sums against full enumeration.
SuiteReport verify_spinc(const SpinExtension& ext, const std::vector<CorpusEntry>& corpus, int moves_per_manifold,
                         uint64_t seed);
/// Without a suitable category: structure-set and coset-partition checks only.
SuiteReport verify_spinc_structures(const std::vector<CorpusEntry>& corpus);

}  // namespace spinmod
