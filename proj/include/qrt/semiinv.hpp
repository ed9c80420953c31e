#pragma once

#include "qrt/tubes.hpp"

namespace qrt {

// Integral weight on dimension vectors.
struct Weight {
  std::vector<i64> theta;
  i64 eval(const DimVector& d) const;
  bool operator==(const Weight&) const = default;
};

// theta^V from the minimal presentation: +1 for each P_x in P_1, -1 for each
// P_y in P_0. Cross-checked against -<bdim V, -> whenever pdim V <= 1.
Weight weight_of(const Representation& v);
Weight weight_from_form(const BoundQuiverPtr& bq, const DimVector& v);  // -<v, ->

// Determinantal semi-invariant c^V on rep(d): det of the presentation block
// matrix [M(omega_{i,j})]. Stored by its presentation data; evaluated on
// demand, never expanded.
struct SemiInvariant {
  BoundQuiverPtr bq;
  Representation v;
  std::vector<int> p0_vertices, p1_vertices;
  std::vector<std::vector<std::vector<Scalar>>> omega;
  Weight weight;
  DimVector d;
};

SemiInvariant semi_invariant(const Representation& v, const DimVector& d);
Scalar evaluate(const SemiInvariant& c, const Representation& m);

// c(g . m) = chi^theta(g) c(m) with chi = prod det(g_x)^{theta(x)}.
bool transformation_check(const SemiInvariant& c, const Representation& m,
                          const std::vector<Matrix>& g);

// Directional derivative: the t-coefficient of det H(m + t z). Interpolation
// when the field has enough points, fraction-free polynomial elimination
// otherwise.
Scalar differential(const SemiInvariant& c, const Representation& m,
                    const std::vector<Matrix>& z);

// c^V(m + t z) as an exact polynomial in t.
Poly value_curve(const SemiInvariant& c, const Representation& m, const std::vector<Matrix>& z);

struct DistinguishedEntry {
  std::string lambda;
  int i = 0;
  int n = 1;
  SemiInvariant c;
};

// The c_{λ,i} for exceptional λ with i in A_λ(d), plus c_μ at the requested
// homogeneous points. Requires p^d > 0.
struct DistinguishedTable {
  DimVector d;
  i64 p = 0;
  std::vector<DistinguishedEntry> entries;

  std::vector<const DistinguishedEntry*> at_point(const std::string& lambda) const;
  // c_λ(m): product over A_λ(d) of the entries at one point.
  Scalar point_product(const std::string& lambda, const Representation& m) const;
};

DistinguishedTable distinguished(const SeparatingFamilyData& fam, const DimVector& d,
                                 const std::vector<Scalar>& homogeneous_points);

// 0 -> sub -> mid -> quot -> 0 with explicit structure maps.
struct ShortExact {
  Representation sub, mid, quot;
  std::vector<Matrix> incl;
  std::vector<Matrix> proj;
};
void verify_exact(const ShortExact& s);

// Multiplicativity c^mid = c^sub c^quot up to one scalar fixed per triple,
// verified on the given sample representations of dimension d.
bool mult_check_extension(const ShortExact& s, const DimVector& d,
                          const std::vector<Representation>& samples);

}  // namespace qrt
