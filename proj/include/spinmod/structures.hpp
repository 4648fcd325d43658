#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinmod/surgery.hpp"

namespace spinmod {

using IntVector = std::vector<long>;

enum class StructureKind { Spin, Cohomology, Chern, Homology };

std::string to_string(StructureKind k);
StructureKind parse_structure_kind(const std::string& s);

/// Modulus of the coordinates: d for spin, cohomology and homology, 2d for Chern vectors.
long coordinate_modulus(StructureKind k, long d);

struct StructureSet {
  StructureKind kind = StructureKind::Spin;
  long d = 2;
  /// Solutions (spin, cohomology) or lexicographically minimal coset
  /// representatives (Chern, homology), sorted ascending.
  std::vector<IntVector> elements;
  size_t count() const { return elements.size(); }
};

/// Smith normal form U A V = D over Z.
struct SmithForm {
  std::vector<long> diagonal;  // min(rows, cols) entries, zeros included
  IntMatrix U, V;
};
SmithForm smith_normal_form(const IntMatrix& a);

/// All x in (Z_d)^n with A x = b mod d, by Smith reduction.
std::vector<IntVector> solve_mod(const IntMatrix& a, const IntVector& b, long d);

StructureSet spin_solutions(const IntMatrix& L, long d);
StructureSet cohomology_classes(const IntMatrix& L, long d);
StructureSet chern_vectors(const IntMatrix& L, long d);
StructureSet homology_classes(const IntMatrix& L, long d);
StructureSet structure_set(StructureKind kind, const IntMatrix& L, long d);

/// Exhaustive oracles over the full coordinate space.
StructureSet spin_solutions_brute(const IntMatrix& L, long d);
StructureSet cohomology_classes_brute(const IntMatrix& L, long d);
/// Lattice-reduction oracle for Chern classes (independent of the closure search).
StructureSet chern_vectors_lattice(const IntMatrix& L, long d);

/// |coker(L mod d)| = |(Z_d)^n / Im L| from the Smith form.
uint64_t cokernel_order(const IntMatrix& L, long d);

/// Subgroup 2·Im L of (Z_{2d})^n (Chern) or Im L of (Z_d)^n (homology), listed in full.
std::vector<IntVector> image_subgroup(StructureKind kind, const IntMatrix& L, long d);

/// Canonical (lex-minimal) representative of the coset of x for Chern / homology kinds;
/// reduction mod the coordinate modulus for the others.
IntVector canonical(StructureKind kind, const IntMatrix& L, long d, const IntVector& x);

bool is_member(StructureKind kind, const IntMatrix& L, long d, const IntVector& x);

/// Matrix-level Kirby moves.
struct MatrixMove {
  enum class Kind { Stabilize, Destabilize, Slide, Reverse };
  Kind kind = Kind::Stabilize;
  int i = -1;    // Slide: the component moved; Reverse/Destabilize: the index
  int j = -1;    // Slide: the component slid over
  int eps = 1;   // Stabilize: framing of the new unknot; Slide: orientation sign

  static MatrixMove stabilize(int eps) { return {Kind::Stabilize, -1, -1, eps}; }
  static MatrixMove destabilize(int index) { return {Kind::Destabilize, index, -1, 1}; }
  static MatrixMove slide(int i, int j, int eps) { return {Kind::Slide, i, j, eps}; }
  static MatrixMove reverse(int i) { return {Kind::Reverse, i, -1, 1}; }
};

/// L' after the move. Slide of i over j: L' = Pᵀ L P with P = I + eps·E_{ji}.
/// Destabilize requires row/column `i` to be (0, …, ±1, …, 0).
IntMatrix apply_matrix_move(const IntMatrix& L, const MatrixMove& move);

/// Image of a structure element under a matrix move; validates the input element.
IntVector transport(StructureKind kind, const IntMatrix& L, long d, const MatrixMove& move, const IntVector& x);

/// Forest moves decomposed into matrix moves (blow-up = stabilize + slide,
/// blow-down = slide + destabilize).
std::vector<MatrixMove> decompose_move(const PlumbingForest& f, const Move& move);
IntVector transport_forest(StructureKind kind, const PlumbingForest& f, long d, const Move& move, const IntVector& x);

}  // namespace spinmod
