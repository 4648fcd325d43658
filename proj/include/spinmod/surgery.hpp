#pragma once

#include <string>
#include <vector>

namespace spinmod {

using IntMatrix = std::vector<std::vector<long>>;

struct Edge {
  int u = 0;
  int v = 0;
  int sign = 1;
};

/// Framed unknots (vertices) joined by signed Hopf clasps (edges); no cycles.
class PlumbingForest {
 public:
  PlumbingForest() = default;
  PlumbingForest(std::vector<long> framings, std::vector<Edge> edges);

  int size() const { return static_cast<int>(framing_.size()); }
  long framing(int v) const { return framing_[static_cast<size_t>(v)]; }
  const std::vector<long>& framings() const { return framing_; }
  const std::vector<Edge>& edges() const { return edges_; }

  int add_vertex(long framing);
  void add_edge(int u, int v, int sign);
  void set_framing(int v, long m) { framing_[static_cast<size_t>(v)] = m; }
  void remove_vertex(int v);
  int degree(int v) const;
  /// Neighbours of v with the sign of the connecting edge.
  std::vector<std::pair<int, int>> neighbors(int v) const;

  /// Throws std::invalid_argument when the edge set is not a simple forest.
  void validate() const;

  friend bool operator==(const PlumbingForest& a, const PlumbingForest& b);

 private:
  std::vector<long> framing_;
  std::vector<Edge> edges_;
};

IntMatrix linking_matrix(const PlumbingForest& f);

struct SignaturePair {
  int b_plus = 0;
  int b_minus = 0;
  int nullity = 0;
  friend bool operator==(const SignaturePair&, const SignaturePair&) = default;
};

/// Exact inertia of a symmetric integer matrix by rational congruence.
SignaturePair signature(const IntMatrix& m);

struct Move {
  enum class Kind { Stabilize, BlowUp, BlowDown, Reverse };
  Kind kind = Kind::Stabilize;
  int vertex = -1;  // BlowUp: attach point; BlowDown: the ±1-framed leaf; Reverse: target
  int eps = 1;      // framing of the added unknot (Stabilize, BlowUp)
  int sign = 1;     // sign of the new clasp (BlowUp)

  static Move stabilize(int eps) { return {Kind::Stabilize, -1, eps, 1}; }
  static Move blow_up(int vertex, int eps, int sign = 1) { return {Kind::BlowUp, vertex, eps, sign}; }
  static Move blow_down(int vertex) { return {Kind::BlowDown, vertex, 1, 1}; }
  static Move reverse(int vertex) { return {Kind::Reverse, vertex, 1, 1}; }
  std::string to_string() const;
};

PlumbingForest apply_move(const PlumbingForest& f, const Move& move);

/// True when `move` may be applied to `f`.
bool move_is_legal(const PlumbingForest& f, const Move& move);

// Text format: `vertex <id> framing <m>` and `edge <u> <v> <±1>` lines, '#' comments.
PlumbingForest parse_forest(const std::string& text);
std::string format_forest(const PlumbingForest& f);

/// Chain of unknots with the given framings joined by positive clasps.
PlumbingForest chain_forest(const std::vector<long>& framings);
/// E8 plumbing: trivalent star with arms of length 1, 2, 4, all framings 2.
PlumbingForest e8_forest();

}  // namespace spinmod
