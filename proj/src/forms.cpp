#include "qrt/forms.hpp"

namespace qrt {

TitsForm::TitsForm(const BoundQuiverPtr& b) : bq(b) {
  for (const auto& a : bq->quiver.arrows) arrow_st.emplace_back(a.from, a.to);
  for (const auto& rho : bq->relations)
    relation_st.emplace_back(rho.source(bq->quiver), rho.target(bq->quiver));
}

i64 bilinear(const TitsForm& f, const DimVector& d, const DimVector& e) {
  i64 s = 0;
  for (int x = 0; x < d.size(); ++x) s += d[x] * e[x];
  for (const auto& [a, b] : f.arrow_st) s -= d[a] * e[b];
  for (const auto& [a, b] : f.relation_st) s += d[a] * e[b];
  return s;
}

i64 quadratic(const TitsForm& f, const DimVector& d) { return bilinear(f, d, d); }

i64 a_const(const TitsForm& f, const DimVector& d) {
  i64 gl = 0;
  for (int x = 0; x < d.size(); ++x) gl += d[x] * d[x];
  return gl - quadratic(f, d);
}

bool is_singular_witness(const TitsForm& f, const DimVector& d, const DimVector& x) {
  if (!(x <= d)) return false;
  if (quadratic(f, x) != 0) return false;
  i64 b = bilinear(f, x, d);
  return b == 2 || b == -2;
}

namespace {

// Visit all x with 0 <= x <= d in lexicographic order of the vertex tuple.
template <typename Fn>
void enumerate_below(const DimVector& d, i64 cap, Fn&& fn) {
  int n = d.size();
  DimVector x = DimVector::zero(n);
  i64 seen = 0;
  while (true) {
    if (++seen > cap) throw budget_error("singularity search space exceeds the candidate cap");
    if (fn(x)) return;
    int k = n - 1;
    while (k >= 0 && x[k] == d[k]) x[k--] = 0;
    if (k < 0) return;
    ++x[k];
  }
}

}  // namespace

SingularityCertificate classify_singular(const TitsForm& f, const DimVector& d, i64 cap) {
  SingularityCertificate cert;
  cert.checked_note = "exhaustive over 0 <= x <= d";
  if (quadratic(f, d) != 0) {
    cert.checked_note = "q(d) != 0; no witness search needed";
    return cert;
  }
  enumerate_below(d, cap, [&](const DimVector& x) {
    if (is_singular_witness(f, d, x)) {
      cert.singular = true;
      cert.witness = x;
      if (quadratic(f, x) != 0)
        throw invariant_error("singular-isotropy", "witness with q(x) != 0");
      return true;
    }
    return false;
  });
  return cert;
}

std::vector<DimVector> singular_witnesses(const TitsForm& f, const DimVector& d, i64 cap) {
  std::vector<DimVector> out;
  if (quadratic(f, d) != 0) return out;
  enumerate_below(d, cap, [&](const DimVector& x) {
    if (is_singular_witness(f, d, x)) out.push_back(x);
    return false;
  });
  return out;
}

}  // namespace qrt
