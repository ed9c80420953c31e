#include "qrt/oracle.hpp"

#include <algorithm>
#include <cstdlib>

namespace qrt {

EnumerationBudget EnumerationBudget::from_env() {
  EnumerationBudget b;
  if (const char* env = std::getenv("QRT_BUDGET")) {
    char* end = nullptr;
    i64 v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) b.max_points = v;
  }
  return b;
}

i64 ambient_cells(const BoundQuiverPtr& bq, const DimVector& d) {
  i64 cells = 0;
  for (const auto& a : bq->quiver.arrows) cells += d[a.to] * d[a.from];
  return cells;
}

mpz_class gl_order(const DimVector& d, i64 q) {
  mpz_class total(1);
  for (int x = 0; x < d.size(); ++x) {
    i64 n = d[x];
    mpz_class qn;
    mpz_ui_pow_ui(qn.get_mpz_t(), unsigned(q), unsigned(n));
    for (i64 i = 0; i < n; ++i) {
      mpz_class qi;
      mpz_ui_pow_ui(qi.get_mpz_t(), unsigned(q), unsigned(i));
      total *= qn - qi;
    }
  }
  return total;
}

namespace {

// Flat int64 view of the enumeration: cell layout is arrow-major, row-major
// inside each arrow matrix.
struct EnumLayout {
  BoundQuiverPtr bq;
  DimVector d;
  i64 p = 0;
  std::vector<int> arrow_off;  // per arrow
  std::vector<std::pair<int, int>> shape;
  int cells = 0;

  // Relation programs: per relation, evaluated target x source blocks.
  struct Term {
    i64 coeff;
    std::vector<int> arrows;  // application order: last entry applied first
  };
  struct RelProgram {
    int rows, cols;
    std::vector<Term> terms;
  };
  std::vector<RelProgram> programs;
};

EnumLayout make_layout(const BoundQuiverPtr& bq, const DimVector& d) {
  if (bq->field.is_rationals()) throw usage_error("oracle enumeration needs a prime field");
  if (bq->field.p > 1000) throw usage_error("oracle enumeration supports small primes only");
  EnumLayout lay;
  lay.bq = bq;
  lay.d = d;
  lay.p = bq->field.p;
  int off = 0;
  for (const auto& a : bq->quiver.arrows) {
    if (d[a.to] * d[a.from] > 64) throw budget_error("arrow block too large for enumeration");
    lay.arrow_off.push_back(off);
    lay.shape.emplace_back(int(d[a.to]), int(d[a.from]));
    off += int(d[a.to] * d[a.from]);
  }
  lay.cells = off;
  for (const auto& rho : bq->relations) {
    EnumLayout::RelProgram prog;
    prog.rows = int(d[rho.target(bq->quiver)]);
    prog.cols = int(d[rho.source(bq->quiver)]);
    for (const auto& [c, path] : rho.terms) {
      EnumLayout::Term t;
      t.coeff = c.residue();
      t.arrows = path.arrows;
      prog.terms.push_back(std::move(t));
    }
    lay.programs.push_back(std::move(prog));
  }
  return lay;
}

// Multiply the path matrices on a flat point; tiny dims, stack buffers.
bool point_valid(const EnumLayout& lay, const std::vector<i64>& pt) {
  constexpr int kMax = 64;
  i64 acc[kMax], tmp[kMax], cur[kMax];
  for (const auto& prog : lay.programs) {
    int n = prog.rows * prog.cols;
    if (n == 0) continue;
    for (int i = 0; i < n; ++i) acc[i] = 0;
    for (const auto& term : prog.terms) {
      // Evaluate the path product left to right: entry arrows[0] is the
      // leftmost factor.
      int a0 = term.arrows[0];
      int r = lay.shape[a0].first, c = lay.shape[a0].second;
      const i64* src = pt.data() + lay.arrow_off[a0];
      for (int i = 0; i < r * c; ++i) cur[i] = src[i];
      for (std::size_t k = 1; k < term.arrows.size(); ++k) {
        int ak = term.arrows[k];
        int r2 = lay.shape[ak].first, c2 = lay.shape[ak].second;
        const i64* m2 = pt.data() + lay.arrow_off[ak];
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < c2; ++j) {
            i64 s = 0;
            for (int l = 0; l < c; ++l) s += cur[i * c + l] * m2[l * c2 + j];
            tmp[i * c2 + j] = s % lay.p;
          }
        c = c2;
        (void)r2;
        for (int i = 0; i < r * c; ++i) cur[i] = tmp[i];
      }
      for (int i = 0; i < n; ++i) acc[i] = (acc[i] + term.coeff * cur[i]) % lay.p;
    }
    for (int i = 0; i < n; ++i)
      if (acc[i] % lay.p != 0) return false;
  }
  return true;
}

Representation point_to_rep(const EnumLayout& lay, const std::vector<i64>& pt) {
  Representation m = semisimple_rep(lay.bq, lay.d);
  for (int a = 0; a < lay.bq->num_arrows(); ++a) {
    auto [r, c] = lay.shape[a];
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        m.matrices[a].at(i, j) = Scalar::from_int(lay.bq->field, pt[lay.arrow_off[a] + i * c + j]);
  }
  return m;
}

// Enumerate points from the cursor; fn returns false to abort early.
template <typename Fn>
CountResult enumerate_points(const EnumLayout& lay, const EnumerationBudget& budget, Fn&& fn) {
  CountResult res;
  mpz_ui_pow_ui(res.total.get_mpz_t(), unsigned(lay.p), unsigned(lay.cells));

  std::vector<i64> pt(std::size_t(lay.cells), 0);
  // Seek the cursor (little-endian digits in cell order).
  i64 cursor = budget.start_cursor;
  if (cursor > 0) {
    mpz_class c(static_cast<long>(cursor));
    if (c >= res.total) {
      res.complete = true;
      return res;
    }
    i64 rem = cursor;
    for (int i = 0; i < lay.cells && rem > 0; ++i) {
      pt[i] = rem % lay.p;
      rem /= lay.p;
    }
  }

  i64 index = cursor;
  while (true) {
    if (res.processed >= budget.max_points) {
      res.next_cursor = index;
      return res;
    }
    ++res.processed;
    if (point_valid(lay, pt)) {
      ++res.valid;
      if (!fn(pt)) {
        res.next_cursor = index + 1;
        return res;
      }
    }
    ++index;
    int i = 0;
    while (i < lay.cells && ++pt[i] == lay.p) pt[i++] = 0;
    if (i == lay.cells || lay.cells == 0) break;
  }
  res.complete = true;
  return res;
}

}  // namespace

CountResult count_points(const BoundQuiverPtr& bq, const DimVector& d,
                         const EnumerationBudget& budget) {
  EnumLayout lay = make_layout(bq, d);
  return enumerate_points(lay, budget, [](const std::vector<i64>&) { return true; });
}

namespace {

// Cheap iso invariants for bucketing before exact checks.
std::vector<i64> fingerprint(const Representation& m) {
  std::vector<i64> fp;
  for (const auto& mat : m.matrices) fp.push_back(rank(mat));
  fp.push_back(hom_dim(m, m));
  for (int x = 0; x < m.num_vertices(); ++x) {
    fp.push_back(hom_dim(simple_rep(m.bq, x), m));
    fp.push_back(hom_dim(m, simple_rep(m.bq, x)));
  }
  return fp;
}

bool nilpotent_tuple(std::vector<Matrix> phi, i64 total) {
  i64 k = 1;
  while (k < total) {
    for (auto& mat : phi) mat = mat * mat;
    k *= 2;
  }
  for (const auto& mat : phi)
    if (!mat.is_zero()) return false;
  return true;
}

// Local iff every endomorphism is nilpotent or invertible. Basis elements
// give a fast disproof; the exhaustive sweep certifies the survivors.
bool end_ring_local(const Representation& m) {
  HomBasis end = hom(m, m);
  int e = end.dimension();
  if (e == 1) return true;
  const FieldSpec& f = m.bq->field;
  i64 total = m.total_dim();

  for (int k = 0; k < e; ++k) {
    const auto& phi = end.elements[k];
    bool inv = true;
    for (const auto& fx : phi)
      if (!is_invertible(fx)) {
        inv = false;
        break;
      }
    if (!inv && !nilpotent_tuple(phi, total)) return false;
  }

  double count = 1;
  for (int k = 0; k < e; ++k) {
    count *= double(f.p);
    if (count > 30000.0)
      throw budget_error("endomorphism ring too large for the locality check");
  }
  std::vector<i64> idx(std::size_t(e), 0);
  while (true) {
    std::vector<Matrix> phi;
    for (int x = 0; x < m.num_vertices(); ++x) {
      Matrix acc(f, int(m.dims[x]), int(m.dims[x]));
      for (int k = 0; k < e; ++k)
        if (idx[k]) acc = acc + end.elements[k][x].scaled(Scalar::from_int(f, idx[k]));
      phi.push_back(std::move(acc));
    }
    bool inv = true;
    for (const auto& fx : phi)
      if (!is_invertible(fx)) {
        inv = false;
        break;
      }
    if (!inv && !nilpotent_tuple(phi, total)) return false;
    int k = 0;
    while (k < e && ++idx[k] == f.p) idx[k++] = 0;
    if (k == e) break;
  }
  return true;
}

}  // namespace

std::vector<Representation> search_indecomposable(const BoundQuiverPtr& bq, const DimVector& d,
                                                  const EnumerationBudget& budget,
                                                  const SearchOptions& opt) {
  EnumLayout lay = make_layout(bq, d);
  std::vector<Representation> found;
  std::vector<std::vector<i64>> prints;

  CountResult res = enumerate_points(lay, budget, [&](const std::vector<i64>& pt) {
    Representation m = point_to_rep(lay, pt);
    if (!end_ring_local(m)) return true;
    std::vector<i64> fp = fingerprint(m);
    for (std::size_t k = 0; k < found.size(); ++k)
      if (prints[k] == fp && iso_check(found[k], m)) return true;
    found.push_back(std::move(m));
    prints.push_back(std::move(fp));
    return found.size() < opt.max_results;
  });
  if (!res.complete) throw budget_error("enumeration budget exceeded during search");

  // Predicates filter whole isomorphism classes.
  std::vector<Representation> out;
  for (auto& m : found) {
    switch (opt.predicate) {
      case SearchPredicate::None:
        break;
      case SearchPredicate::Periodic: {
        auto per = is_periodic(m, opt.period);
        if (!per || *per != opt.period) continue;
        break;
      }
      case SearchPredicate::ClassP:
      case SearchPredicate::ClassQ: {
        if (!opt.fam) throw usage_error("class predicate needs family data");
        TrichotomyResult tr = trichotomy(*opt.fam, m);
        RegClass want = opt.predicate == SearchPredicate::ClassP ? RegClass::P : RegClass::Q;
        if (tr.cls != want) continue;
        break;
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<OrbitClass> orbit_census(const BoundQuiverPtr& bq, const DimVector& d,
                                     const EnumerationBudget& budget) {
  EnumLayout lay = make_layout(bq, d);
  std::vector<OrbitClass> classes;
  std::vector<std::vector<i64>> prints;

  CountResult res = enumerate_points(lay, budget, [&](const std::vector<i64>& pt) {
    Representation m = point_to_rep(lay, pt);
    std::vector<i64> fp = fingerprint(m);
    for (std::size_t k = 0; k < classes.size(); ++k)
      if (prints[k] == fp && iso_check(classes[k].rep, m)) {
        classes[k].size += 1;
        return true;
      }
    OrbitClass oc;
    oc.size = 1;
    oc.rep = std::move(m);
    classes.push_back(std::move(oc));
    prints.push_back(std::move(fp));
    return true;
  });
  if (!res.complete) throw budget_error("enumeration budget exceeded during census");

  // |Aut| by counting units of End; the callers check orbit-stabilizer.
  for (auto& oc : classes) {
    HomBasis end = hom(oc.rep, oc.rep);
    int e = end.dimension();
    double count = 1;
    for (int k = 0; k < e; ++k) {
      count *= double(lay.p);
      if (count > 1000000.0) throw budget_error("endomorphism ring too large for |Aut|");
    }
    i64 aut = 0;
    std::vector<i64> idx(std::size_t(e), 0);
    while (true) {
      std::vector<Matrix> phi;
      bool inv = true;
      for (int x = 0; x < oc.rep.num_vertices() && inv; ++x) {
        Matrix acc(bq->field, int(d[x]), int(d[x]));
        for (int k = 0; k < e; ++k)
          if (idx[k]) acc = acc + end.elements[k][x].scaled(Scalar::from_int(bq->field, idx[k]));
        if (!is_invertible(acc)) inv = false;
      }
      if (inv) ++aut;
      int k = 0;
      while (k < e && ++idx[k] == lay.p) idx[k++] = 0;
      if (k == e || e == 0) break;
    }
    oc.aut_count = e == 0 ? 1 : aut;
  }
  return classes;
}

Representation lift_rep(const Representation& m, const BoundQuiverPtr& bq_rational) {
  if (!bq_rational->field.is_rationals()) throw usage_error("lift target must be rational");
  Representation r;
  r.bq = bq_rational;
  r.dims = m.dims;
  for (const auto& mat : m.matrices) {
    Matrix lm(bq_rational->field, mat.rows, mat.cols);
    for (int i = 0; i < mat.rows; ++i)
      for (int j = 0; j < mat.cols; ++j) lm.at(i, j) = mat.at(i, j).lift_balanced();
    r.matrices.push_back(std::move(lm));
  }
  validate_or_throw(r, "centered lift violates the rational relations");
  return r;
}

}  // namespace qrt
