#pragma once

#include "qrt/forms.hpp"

namespace qrt {

struct ExceptionalTube {
  std::string label;  // "x1".."x4"
  int arm = 0;        // 1-based arm index in the catalog presentation
  int rank = 1;
  std::vector<Representation> simples;  // tau simples[i] ~ simples[i-1 mod rank]
};

// Central separating tube family of a catalog algebra: exceptional tubes with
// their regular simples, a parameterized homogeneous simple, and h.
struct SeparatingFamilyData {
  BoundQuiverPtr bq;
  DimVector h;
  std::vector<int> arm_lengths;
  std::vector<std::vector<int>> arm_arrows;  // arrow indices per arm, sink end first
  std::optional<Scalar> lambda;  // fourth-arm parameter, type (2,2,2,2) only
  std::vector<ExceptionalTube> exceptional;

  std::vector<int> type() const;
  int lcm_ranks() const;
  bool param_degenerate(const Scalar& mu) const;
  Representation homogeneous_simple(const Scalar& mu) const;
  const ExceptionalTube* find_exceptional(const std::string& label) const;
  // Homogeneous parameters 2, 3, 4, ... skipping degenerate values, the
  // catalog lambda and the exclusion list. The strict form throws when the
  // field has too few points; the lenient form returns what exists (over
  // small prime fields every parameter can be degenerate).
  std::vector<Scalar> fresh_points(int count, const std::vector<Scalar>& exclude) const;
  std::vector<Scalar> fresh_points_upto(int count, const std::vector<Scalar>& exclude) const;
};

// R_{lambda,i}^{(n)}: lambda an exceptional label or a homogeneous scalar in
// text form, i the top index mod r_lambda, n >= 1 the tube length.
struct TubeModuleId {
  std::string lambda;
  int i = 0;
  int n = 1;
};

struct TubeDecomposition {
  i64 p = 0;                                            // p^d
  std::map<std::string, std::vector<i64>> exceptional;  // label -> (p_{λ,0..r-1})
};

// <h, d>; vanishes exactly on the regular dimension vectors.
i64 defect(const SeparatingFamilyData& fam, const DimVector& d);

DimVector tube_dim_vector(const SeparatingFamilyData& fam, const TubeModuleId& id);

// Iterated non-split extensions along the tube exact sequences.
Representation tube_module(const SeparatingFamilyData& fam, const TubeModuleId& id);

// Unique decomposition d = p h + sum p_{λ,i} e_{λ,i} with a zero coordinate in
// each tube; absence decides d ∉ bR.
std::optional<TubeDecomposition> decompose_vector(const SeparatingFamilyData& fam,
                                                  const DimVector& d);

// dim Hom between tube modules by the min-formula over composition factors.
i64 hom_formula(const SeparatingFamilyData& fam, const TubeModuleId& a, const TubeModuleId& b);

// (<e^n, d>, <d, e^n>) evaluated through the p-coordinates.
std::pair<i64, i64> euler_tube_formula(const SeparatingFamilyData& fam, const TubeModuleId& id,
                                       const DimVector& d);

enum class RegClass { P, R, Q };

struct TrichotomyResult {
  RegClass cls = RegClass::R;
  i64 defect = 0;
  std::optional<int> period;
  std::vector<std::string> evidence;
};

// P/R/Q classification of an indecomposable: periodicity first, then the
// defect sign, with Hom-vanishing spot checks as evidence.
TrichotomyResult trichotomy(const SeparatingFamilyData& fam, const Representation& m);

// Identify an indecomposable regular as a tube module.
std::optional<TubeModuleId> recognize_tube_module(const SeparatingFamilyData& fam,
                                                  const Representation& m);

struct SEquivEntry {
  std::string lambda;
  int i = 0;
  i64 count = 0;
};

// Composition-factor multiset q_{λ,i} of a module in add R.
std::vector<SEquivEntry> s_equivalence_class(const SeparatingFamilyData& fam,
                                             const Representation& m);

// Non-split extension middle 0 -> sub -> E -> quot -> 0 for the given class
// index in a canonical cocycle basis modulo coboundaries.
struct ExtensionSpace {
  int classes = 0;  // dim Ext^1(quot, sub)
  Representation middle(int class_index) const;

  // internals
  BoundQuiverPtr bq;
  Representation sub, quot;
  std::vector<std::vector<Matrix>> cocycle_reps;  // one arrow-tuple per class
};
ExtensionSpace extension_space(const Representation& sub, const Representation& quot);

// Catalog entry points.
struct CatalogAlgebra {
  BoundQuiverPtr bq;
  SeparatingFamilyData fam;
};

CatalogAlgebra catalog_kronecker(const FieldSpec& f);
CatalogAlgebra catalog_euclidean_a(int p, int q, const FieldSpec& f);
CatalogAlgebra catalog_canonical(const std::vector<int>& arms, std::optional<Scalar> lambda,
                                 const FieldSpec& f);
// "kronecker" | "a(p,q)" | "canonical(p1,...,pt)"; lambda_text for the
// (2,2,2,2) parameter.
CatalogAlgebra catalog(const std::string& name, const std::string& lambda_text,
                       const FieldSpec& f);

}  // namespace qrt
