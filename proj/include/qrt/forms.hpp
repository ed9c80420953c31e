#pragma once

#include <optional>

#include "qrt/rep.hpp"

namespace qrt {

// The combinatorial bilinear form <d, e> = sum_x d(x) e(x)
// - sum_arrows d(s a) e(t a) + sum_relations d(s rho) e(t rho).
struct TitsForm {
  BoundQuiverPtr bq;
  // (source, target) pairs for arrows and relations.
  std::vector<std::pair<int, int>> arrow_st;
  std::vector<std::pair<int, int>> relation_st;

  explicit TitsForm(const BoundQuiverPtr& b);
};

i64 bilinear(const TitsForm& f, const DimVector& d, const DimVector& e);
i64 quadratic(const TitsForm& f, const DimVector& d);

// a(d) = dim GL(d) - q(d).
i64 a_const(const TitsForm& f, const DimVector& d);

struct SingularityCertificate {
  bool singular = false;
  std::optional<DimVector> witness;  // first in lexicographic order
  std::string checked_note;
};

// Singular <=> q(d) = 0 and some 0 <= x <= d has q(x) = 0, |<x, d>| = 2.
// Plain lexicographic search; throws budget_error past `cap` candidates.
SingularityCertificate classify_singular(const TitsForm& f, const DimVector& d,
                                         i64 cap = 100000000);
std::vector<DimVector> singular_witnesses(const TitsForm& f, const DimVector& d,
                                          i64 cap = 100000000);
bool is_singular_witness(const TitsForm& f, const DimVector& d, const DimVector& x);

}  // namespace qrt
