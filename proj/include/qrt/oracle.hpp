#pragma once

#include "qrt/tubes.hpp"

namespace qrt {

struct EnumerationBudget {
  i64 max_points = 100000000;
  i64 start_cursor = 0;

  // QRT_BUDGET overrides max_points when set.
  static EnumerationBudget from_env();
};

struct CountResult {
  mpz_class total;        // q^{ambient cells}
  i64 processed = 0;
  i64 valid = 0;
  bool complete = false;
  i64 next_cursor = 0;    // meaningful when !complete
};

// Exhaustive count of F_q points of rep(d): all cell assignments vs those
// annihilating the relations. Row-major little-endian cursor; resumable.
CountResult count_points(const BoundQuiverPtr& bq, const DimVector& d,
                         const EnumerationBudget& budget);

enum class SearchPredicate { None, Periodic, ClassP, ClassQ };

struct SearchOptions {
  SearchPredicate predicate = SearchPredicate::None;
  int period = 0;                            // Periodic: exact smallest period
  const SeparatingFamilyData* fam = nullptr; // required for ClassP / ClassQ
  std::size_t max_results = 1u << 20;
};

// Valid points with local endomorphism ring, deduplicated up to isomorphism,
// filtered by the predicate.
std::vector<Representation> search_indecomposable(const BoundQuiverPtr& bq, const DimVector& d,
                                                  const EnumerationBudget& budget,
                                                  const SearchOptions& opt = {});

struct OrbitClass {
  mpz_class size;        // direct point count of the class
  i64 aut_count = 0;     // |Aut(M)(F_q)|
  Representation rep;
};

// Exact orbit partition of the valid points; sizes cross-checked against
// |GL(d)| / |Aut| by the callers that need the invariant.
std::vector<OrbitClass> orbit_census(const BoundQuiverPtr& bq, const DimVector& d,
                                     const EnumerationBudget& budget);

mpz_class gl_order(const DimVector& d, i64 q);
i64 ambient_cells(const BoundQuiverPtr& bq, const DimVector& d);

// Entrywise centered lift of an F_p representation to Q over the matching
// rational bound quiver; throws when the lift violates the relations.
Representation lift_rep(const Representation& m, const BoundQuiverPtr& bq_rational);

}  // namespace qrt
