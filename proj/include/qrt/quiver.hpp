#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qrt/matrix.hpp"

namespace qrt {

struct Arrow {
  std::string name;
  int from = 0;  // s(alpha), vertex index
  int to = 0;    // t(alpha)
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int vertex_index(const std::string& name) const;
  int arrow_index(const std::string& name) const;
  // Throws unless names are well formed, endpoints exist and the quiver is
  // acyclic (topological sort).
  void check() const;
};

// Arrow index list [a_1, ..., a_n]; a_n is applied first, so the path runs
// from s(a_n) to t(a_1). Empty list = trivial path at `trivial_at`.
struct Path {
  std::vector<int> arrows;
  int trivial_at = -1;

  int length() const { return int(arrows.size()); }
  int source(const Quiver& q) const;
  int target(const Quiver& q) const;
  bool operator==(const Path&) const = default;
};

// Scalar combination of parallel paths of length >= 2.
struct Relation {
  std::vector<std::pair<Scalar, Path>> terms;

  int source(const Quiver& q) const;
  int target(const Quiver& q) const;
};

// Basis of the morphism space k\bar{Delta}(x, y): all paths x -> y modulo the
// span of padded relations. Elements are coordinate vectors over the residue
// classes of the non-pivot paths.
struct MorphismSpace {
  int source = 0;
  int target = 0;
  std::vector<Path> paths;        // lexicographic by arrow-name sequence
  Matrix ideal_rref;              // rows span the ideal component, RREF
  std::vector<int> ideal_pivots;  // pivot path indices
  std::vector<int> basis_paths;   // non-pivot path indices; quotient basis
  int dim = 0;

  int ideal_dim() const { return int(ideal_pivots.size()); }
  // Reduce a full path-coordinate vector to quotient coordinates.
  std::vector<Scalar> reduce(std::vector<Scalar> full) const;
  std::vector<Scalar> path_class(int path_index, const FieldSpec& f) const;
};

class BoundQuiver;
using BoundQuiverPtr = std::shared_ptr<const BoundQuiver>;

class BoundQuiver : public std::enable_shared_from_this<BoundQuiver> {
 public:
  Quiver quiver;
  std::vector<Relation> relations;
  FieldSpec field;

  // Validates and precomputes every morphism space; the result is immutable,
  // so concurrent reads are safe.
  static BoundQuiverPtr create(Quiver q, std::vector<Relation> rels, FieldSpec f);

  int num_vertices() const { return int(quiver.vertices.size()); }
  int num_arrows() const { return int(quiver.arrows.size()); }
  const MorphismSpace& space(int x, int y) const;

  const std::vector<Path>& all_paths(int x, int y) const { return space(x, y).paths; }

  // Compose quotient-coordinate elements: second ∈ k(y,z), first ∈ k(x,y),
  // result ∈ k(x,z).
  std::vector<Scalar> compose(int x, int y, int z, const std::vector<Scalar>& second,
                              const std::vector<Scalar>& first) const;

  // Cached opposite bound quiver.
  BoundQuiverPtr opposite_ptr() const;

 private:
  std::vector<MorphismSpace> spaces_;  // row-major over (x, y)
  mutable BoundQuiverPtr op_cache_;
  mutable std::once_flag op_once_;
  friend MorphismSpace build_morphism_space(const BoundQuiver& bq, int x, int y,
                                            const std::vector<Relation>& rels);
};

std::vector<Path> enumerate_paths(const Quiver& q, int x, int y);

// True iff no relation is redundant: dropping any single relation shrinks the
// ideal in some morphism space.
bool check_minimal(const BoundQuiver& bq);

// Arrows reversed, every relation path reversed. An involution up to object
// identity.
BoundQuiverPtr opposite(const BoundQuiver& bq);

// Same quiver with relation coefficients reduced mod p.
BoundQuiverPtr reduce_mod(const BoundQuiver& bq, i64 p);

}  // namespace qrt
