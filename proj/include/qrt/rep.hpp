#pragma once

#include <optional>

#include "qrt/quiver.hpp"

namespace qrt {

// Vertex-indexed non-negative integers, aligned with quiver.vertices.
struct DimVector {
  std::vector<i64> v;

  i64 operator[](int i) const { return v[i]; }
  i64& operator[](int i) { return v[i]; }
  int size() const { return int(v.size()); }
  i64 total() const;
  bool is_zero() const;
  bool sincere() const;
  bool operator==(const DimVector&) const = default;
  bool operator<=(const DimVector& o) const;
  DimVector operator+(const DimVector& o) const;
  DimVector operator-(const DimVector& o) const;  // componentwise, may go negative
  DimVector scaled(i64 c) const;
  std::string str(const Quiver& q) const;

  static DimVector zero(int n) { return DimVector{std::vector<i64>(std::size_t(n), 0)}; }
  static DimVector unit(int n, int x);
};

struct Representation {
  BoundQuiverPtr bq;
  DimVector dims;
  std::vector<Matrix> matrices;  // per arrow, shape dims(t a) x dims(s a)

  int num_vertices() const { return bq->num_vertices(); }
  const Matrix& mat(int arrow) const { return matrices[arrow]; }

  Matrix eval_path(const Path& p) const;
  // Evaluate a morphism-space element given in quotient coordinates of
  // k(x, y); the result maps M(x) -> M(y).
  Matrix eval_morphism(int x, int y, const std::vector<Scalar>& coords) const;
  i64 total_dim() const { return dims.total(); }
};

Representation zero_rep(const BoundQuiverPtr& bq);
Representation simple_rep(const BoundQuiverPtr& bq, int x);
Representation semisimple_rep(const BoundQuiverPtr& bq, const DimVector& d);
Representation projective(const BoundQuiverPtr& bq, int x);
Representation injective(const BoundQuiverPtr& bq, int x);
Representation direct_sum(const std::vector<Representation>& ms);

// Shapes must already match; true iff every relation evaluates to zero.
bool validate(const Representation& m);
void validate_or_throw(const Representation& m, const std::string& what);

struct HomBasis {
  DimVector source_dims, target_dims;
  // Each element is one vertex-indexed tuple f_x : M(x) -> N(x).
  std::vector<std::vector<Matrix>> elements;
  int dimension() const { return int(elements.size()); }
};

// Basis of the intertwiner space {f : N(a) f_{s a} = f_{t a} M(a)},
// RREF-canonical and deterministic.
HomBasis hom(const Representation& m, const Representation& n);
int hom_dim(const Representation& m, const Representation& n);

// radical(x) = sum of arrow images; top = dims - dims(radical).
struct TopRadical {
  DimVector top;
  Representation radical;
  std::vector<Matrix> radical_embedding;  // columns span rad(x) inside M(x)
};
TopRadical top_and_radical(const Representation& m);

// Subrepresentation on the given column-span subspaces (must be invariant).
Representation sub_representation(const Representation& m, const std::vector<Matrix>& spaces);
// Quotient by an invariant family of subspaces, with the canonical projection.
struct QuotientRep {
  Representation rep;
  std::vector<Matrix> projections;
};
QuotientRep quotient_representation(const Representation& m, const std::vector<Matrix>& spaces);

// Minimal projective presentation P_1 -f-> P_0 ->> V with f recorded as the
// table of morphism-space elements omega[i][j] in k(y_j, x_i).
struct ProjectivePresentation {
  Representation target;
  std::vector<int> p0_vertices;  // y_j
  std::vector<int> p1_vertices;  // x_i
  std::vector<std::vector<std::vector<Scalar>>> omega;  // [i][j]
};
ProjectivePresentation minimal_presentation(const Representation& m);

// Length <= 2 projective resolution 0 -> P_2 -> P_1 -> P_0 -> M -> 0.
// Throws invariant_error("gldim") when the kernel of P_1 -> P_0 is not
// projective (resolution would be longer).
struct ProjectiveResolution {
  ProjectivePresentation pres;
  std::vector<int> p2_vertices;  // z_l
  std::vector<std::vector<std::vector<Scalar>>> omega2;  // [l][i] in k(x_i, z_l)
};
ProjectiveResolution projective_resolution(const Representation& m);

// Block matrix [ M(omega_{i,j}) ] : direct sum over cols_vertices of M(y_j)
// -> direct sum over rows_vertices of M(x_i).
Matrix assemble_hom_matrix(const Representation& m, const std::vector<int>& rows_vertices,
                           const std::vector<int>& cols_vertices,
                           const std::vector<std::vector<std::vector<Scalar>>>& omega);

struct ExtDims {
  i64 ext1 = 0;
  i64 ext2 = 0;
};
ExtDims ext(const Representation& m, const Representation& n);

// Duality: transposed matrices over the opposite bound quiver.
Representation dual(const Representation& m, const BoundQuiverPtr& op);

Representation tau(const Representation& m);
Representation tau_minus(const Representation& m);

bool iso_check(const Representation& m, const Representation& n);
std::optional<int> is_periodic(const Representation& m, int bound);

// Indecomposable summands via Fitting splittings of endomorphisms. Throws
// invariant_error("idempotent-splitting") when locality cannot be certified
// (possible over tiny prime fields).
std::vector<Representation> decompose(const Representation& m);

// g-conjugate: N(a) = g_{t a} M(a) g_{s a}^{-1}.
Representation gl_translate(const Representation& m, const std::vector<Matrix>& g);

// Kernel of the first-order relation expansion
//   sum_terms c sum_pos a(prefix) Z(arrow) c(suffix) = 0,
// prefix factors evaluated in `a`, suffix factors in `c`. Z(alpha) has shape
// a(t alpha) x c(s alpha), flattened row-major at `offsets`.
struct BlockKernel {
  std::vector<int> offsets;  // per arrow, plus a trailing total
  Matrix kernel;             // columns form the canonical basis
  std::vector<Matrix> column_tuple(int c, const Representation& a,
                                   const Representation& b) const;
};
BlockKernel linearized_relation_kernel(const Representation& a, const Representation& c);

}  // namespace qrt
