#pragma once

#include "qrt/oracle.hpp"
#include "qrt/semiinv.hpp"

namespace qrt {

// dim O(M) = dim GL(d) - dim End(M).
i64 orbit_dim(const Representation& m);

i64 ambient_dim(const BoundQuiverPtr& bq, const DimVector& d);

// Kernel of the linearized relation equations at m, inside the ambient arrow
// space.
struct TangentSpace {
  std::vector<std::vector<Matrix>> basis;  // arrow tuples
  int dim() const { return int(basis.size()); }
};
TangentSpace tangent_space(const Representation& m);

// dim T_M rep(d) = dim O(M) + dim Ext^1(M, M).
bool ext_epi_check(const Representation& m);

// Orbit dimension attains a(d) - p^d.
bool maximality_check(const SeparatingFamilyData& fam, const Representation& m);

struct ClosureEquation {
  std::string lambda;
  int i = 0;
  int n = 1;
  Scalar mu;  // equation c_{λ,i} - mu * anchor
  SemiInvariant c;
};

struct ClosureSystem {
  DimVector d;
  i64 codim = 0;
  std::string anchor_lambda;
  int anchor_i = 0;
  int anchor_n = 1;
  SemiInvariant anchor;
  std::vector<ClosureEquation> equations;
};

// Equation system cutting out the closure of a maximal orbit: the vanishing
// distinguished semi-invariants first, padded with fresh homogeneous anchors
// and value ratios up to p^d equations. Covers the one-equation case at a
// singular-type h as well.
ClosureSystem closure_system(const SeparatingFamilyData& fam, const Representation& m);

Scalar equation_value(const ClosureSystem& sys, std::size_t l, const Representation& n);
bool closure_membership(const ClosureSystem& sys, const Representation& n);

// Middle term of the chosen extension class must be isomorphic to m; returns
// the split degeneration sub + quot.
Representation extension_degeneration(const Representation& m, const Representation& sub,
                                      const Representation& quot, int class_index);

struct HomOrderReport {
  bool consistent = true;  // with m <=_hom n over the finite test list
  std::optional<std::size_t> violated_at;
  bool strict = false;
  std::vector<std::pair<i64, i64>> dims;  // (hom(X, m), hom(X, n)) per test
};
HomOrderReport hom_order_compare(const Representation& m, const Representation& n,
                                 const std::vector<Representation>& tests);

// Projectives, injectives, simples, tau-orbits and tube modules with entries
// bounded by `entry_cap`.
std::vector<Representation> default_battery(const SeparatingFamilyData& fam, i64 entry_cap = 3);

struct HomdegReport {
  bool found = false;
  std::string note;
  DimVector d;
  i64 a_d = 0;
  Representation r_pair;   // R = R' + R'', tau-period-2
  Representation n_pair;   // N = X + Y
  i64 orbit_r = 0;         // = a(d) - 2
  i64 orbit_n = 0;         // orbit of the single point N
  i64 stratum_n = 0;       // dim of N's stratum, a(d) + <d'', d'>; = a(d) - 2
  i64 stratum_orbits = 0;  // pairwise non-isomorphic stratum points exhibited
  bool distinct = false;   // R and N non-isomorphic
  bool hom_leq = false;    // R <=_hom N on the battery
  bool strict = false;
  i64 searched_points = 0;
  std::vector<std::string> lines;
};

// Hom-order vs degeneration counterexample driver on a type (2,2,2,2)
// catalog algebra over a small prime field; `fam_rational` additionally
// replays the certificate over Q through centered lifts.
HomdegReport homdeg_counterexample(const SeparatingFamilyData& fam,
                                   const SeparatingFamilyData* fam_rational,
                                   const EnumerationBudget& budget);

}  // namespace qrt
