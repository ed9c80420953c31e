#include "qrt/geometry.hpp"

#include <algorithm>
#include <set>

namespace qrt {

i64 orbit_dim(const Representation& m) {
  i64 gl = 0;
  for (int x = 0; x < m.num_vertices(); ++x) gl += m.dims[x] * m.dims[x];
  return gl - hom_dim(m, m);
}

i64 ambient_dim(const BoundQuiverPtr& bq, const DimVector& d) {
  return ambient_cells(bq, d);
}

TangentSpace tangent_space(const Representation& m) {
  validate_or_throw(m, "tangent space at an invalid point");
  BlockKernel bk = linearized_relation_kernel(m, m);
  TangentSpace t;
  for (int c = 0; c < bk.kernel.cols; ++c) t.basis.push_back(bk.column_tuple(c, m, m));
  return t;
}

bool ext_epi_check(const Representation& m) {
  i64 tangent = tangent_space(m).dim();
  i64 e1 = m.total_dim() == 0 ? 0 : ext(m, m).ext1;
  return tangent == orbit_dim(m) + e1;
}

bool maximality_check(const SeparatingFamilyData& fam, const Representation& m) {
  auto td = decompose_vector(fam, m.dims);
  if (!td) throw usage_error("dimension vector is not regular");
  TitsForm tf(fam.bq);
  return orbit_dim(m) == a_const(tf, m.dims) - td->p;
}

ClosureSystem closure_system(const SeparatingFamilyData& fam, const Representation& m) {
  auto td = decompose_vector(fam, m.dims);
  if (!td) throw usage_error("dimension vector is not regular");
  i64 p = td->p;
  if (p < 1) throw usage_error("p^d = 0: the closure is the whole variety, no equations");
  if (!maximality_check(fam, m)) throw usage_error("closure system requires a maximal orbit");

  // Support points of m, to probe for vanishing c_{λ,i} and to exclude from
  // the fresh anchors.
  std::vector<Scalar> support;
  for (const auto& entry : s_equivalence_class(fam, m)) {
    if (fam.find_exceptional(entry.lambda)) continue;
    Scalar mu = parse_scalar(entry.lambda, fam.bq->field);
    bool seen = false;
    for (const auto& s : support)
      if (s == mu) seen = true;
    if (!seen) support.push_back(mu);
  }

  DistinguishedTable table = distinguished(fam, m.dims, support);

  ClosureSystem sys;
  sys.d = m.dims;
  sys.codim = p;

  // Vanishing members of the distinguished table, mu = 0; at most one index
  // per point.
  std::set<std::string> vanished_points;
  for (const auto& e : table.entries) {
    if (!evaluate(e.c, m).is_zero()) continue;
    if (!vanished_points.insert(e.lambda).second)
      throw invariant_error("unique-vanishing",
                            "two distinguished semi-invariants of one tube vanish at m");
    ClosureEquation eq{e.lambda, e.i, e.n, Scalar::zero(fam.bq->field), e.c};
    sys.equations.push_back(std::move(eq));
  }
  i64 q = i64(sys.equations.size());
  if (q > p) throw invariant_error("support-count", "more vanishing points than p^d");

  // Fresh homogeneous anchors for the remaining ratio equations.
  std::vector<Scalar> fresh = fam.fresh_points(int(p - q + 1), support);
  sys.anchor_lambda = fresh[0].str();
  sys.anchor_i = 0;
  sys.anchor_n = 1;
  sys.anchor = semi_invariant(fam.homogeneous_simple(fresh[0]), m.dims);
  Scalar anchor_val = evaluate(sys.anchor, m);
  if (anchor_val.is_zero())
    throw invariant_error("anchor-nonzero", "fresh anchor vanishes at the base point");

  for (i64 l = q + 1; l <= p; ++l) {
    const Scalar& mu_pt = fresh[std::size_t(l - q)];
    SemiInvariant c = semi_invariant(fam.homogeneous_simple(mu_pt), m.dims);
    Scalar ratio = evaluate(c, m) / anchor_val;
    ClosureEquation eq{mu_pt.str(), 0, 1, ratio, std::move(c)};
    sys.equations.push_back(std::move(eq));
  }

  for (std::size_t l = 0; l < sys.equations.size(); ++l)
    if (!equation_value(sys, l, m).is_zero())
      throw invariant_error("closure-base", "closure equation does not vanish at the base point");
  return sys;
}

Scalar equation_value(const ClosureSystem& sys, std::size_t l, const Representation& n) {
  const ClosureEquation& eq = sys.equations.at(l);
  Scalar v = evaluate(eq.c, n);
  if (eq.mu.is_zero()) return v;
  return v - eq.mu * evaluate(sys.anchor, n);
}

bool closure_membership(const ClosureSystem& sys, const Representation& n) {
  if (!(n.dims == sys.d)) throw usage_error("closure membership at the wrong dimension vector");
  for (std::size_t l = 0; l < sys.equations.size(); ++l)
    if (!equation_value(sys, l, n).is_zero()) return false;
  return true;
}

Representation extension_degeneration(const Representation& m, const Representation& sub,
                                      const Representation& quot, int class_index) {
  Representation middle = [&] {
    if (sub.total_dim() == 0) return quot;
    if (quot.total_dim() == 0) return sub;
    ExtensionSpace es = extension_space(sub, quot);
    if (es.classes == 0) return direct_sum({sub, quot});
    return es.middle(class_index);
  }();
  if (!iso_check(middle, m))
    throw usage_error("extension class does not assemble to the given middle term");
  if (sub.total_dim() == 0) return quot;
  if (quot.total_dim() == 0) return sub;
  return direct_sum({sub, quot});
}

HomOrderReport hom_order_compare(const Representation& m, const Representation& n,
                                 const std::vector<Representation>& tests) {
  if (!(m.dims == n.dims)) throw usage_error("hom-order comparison needs equal dimension vectors");
  HomOrderReport rep;
  for (std::size_t t = 0; t < tests.size(); ++t) {
    i64 hm = hom_dim(tests[t], m), hn = hom_dim(tests[t], n);
    rep.dims.emplace_back(hm, hn);
    if (hm > hn) {
      rep.consistent = false;
      if (!rep.violated_at) rep.violated_at = t;
    }
    if (hm < hn) rep.strict = true;
  }
  return rep;
}

std::vector<Representation> default_battery(const SeparatingFamilyData& fam, i64 entry_cap) {
  const BoundQuiverPtr& bq = fam.bq;
  std::vector<Representation> out;
  auto entries_ok = [&](const DimVector& d) {
    for (int x = 0; x < d.size(); ++x)
      if (d[x] > entry_cap) return false;
    return true;
  };
  auto add = [&](const Representation& r) {
    if (r.total_dim() == 0 || !entries_ok(r.dims)) return false;
    for (const auto& o : out)
      if (o.dims == r.dims && iso_check(o, r)) return true;
    out.push_back(r);
    return true;
  };

  for (int x = 0; x < bq->num_vertices(); ++x) {
    add(simple_rep(bq, x));
    Representation p = projective(bq, x);
    for (int k = 0; k < 6 && add(p); ++k) p = tau_minus(p);
    Representation i = injective(bq, x);
    for (int k = 0; k < 6 && add(i); ++k) i = tau(i);
  }
  for (const auto& tube : fam.exceptional)
    for (int i = 0; i < tube.rank; ++i)
      for (int n = 1; n <= tube.rank * int(entry_cap); ++n) {
        TubeModuleId id{tube.label, i, n};
        if (!entries_ok(tube_dim_vector(fam, id))) break;
        add(tube_module(fam, id));
      }
  std::vector<Scalar> points = fam.fresh_points_upto(2, {});
  for (i64 v : {0, 1}) {
    Scalar mu = Scalar::from_int(fam.bq->field, v);
    if (!fam.param_degenerate(mu)) points.push_back(mu);
  }
  for (const Scalar& mu : points)
    for (int n = 1; n <= int(entry_cap); ++n) add(tube_module(fam, {mu.str(), 0, n}));
  return out;
}

namespace {

DimVector catalog_2222_vector(const SeparatingFamilyData& fam, i64 sink, i64 mid, i64 source) {
  const Quiver& q = fam.bq->quiver;
  DimVector d = DimVector::zero(fam.bq->num_vertices());
  for (int x = 0; x < d.size(); ++x) {
    const std::string& name = q.vertices[x];
    if (name == "sink")
      d[x] = sink;
    else if (name == "source")
      d[x] = source;
    else
      d[x] = mid;
  }
  return d;
}

}  // namespace

HomdegReport homdeg_counterexample(const SeparatingFamilyData& fam,
                                   const SeparatingFamilyData* fam_rational,
                                   const EnumerationBudget& budget) {
  HomdegReport rep;
  std::vector<int> type = fam.type();
  if (type != std::vector<int>{2, 2, 2, 2})
    throw usage_error("counterexample driver needs a type (2,2,2,2) catalog algebra");
  const BoundQuiverPtr& bq = fam.bq;
  TitsForm tf(bq);

  rep.d = catalog_2222_vector(fam, 3, 2, 1);
  rep.a_d = a_const(tf, rep.d);
  DimVector d_x = catalog_2222_vector(fam, 2, 1, 0);
  DimVector d_y = catalog_2222_vector(fam, 1, 1, 1);

  // Candidate tau-period-2 pairs R' + tau R' with dimension vectors summing
  // to d; liftable splits (source coordinate zero) come first.
  struct Pair {
    Representation first, second;
  };
  std::vector<Pair> pairs;
  std::vector<DimVector> split_candidates;
  {
    int nv = bq->num_vertices();
    DimVector x = DimVector::zero(nv);
    while (true) {
      if (!x.is_zero() && !(x == rep.d) && quadratic(tf, x) == 1 &&
          quadratic(tf, rep.d - x) == 1 && ambient_cells(bq, x) <= 12)
        split_candidates.push_back(x);
      int k = nv - 1;
      while (k >= 0 && x[k] == rep.d[k]) x[k--] = 0;
      if (k < 0) break;
      ++x[k];
    }
    int src = bq->quiver.vertex_index("source");
    std::stable_sort(split_candidates.begin(), split_candidates.end(),
                     [&](const DimVector& a, const DimVector& b) {
                       if ((a[src] == 0) != (b[src] == 0)) return a[src] == 0;
                       return a.total() < b.total();
                     });
  }
  for (const DimVector& x : split_candidates) {
    SearchOptions opt;
    opt.predicate = SearchPredicate::Periodic;
    opt.period = 2;
    std::vector<Representation> cands;
    try {
      cands = search_indecomposable(bq, x, budget, opt);
    } catch (const budget_error&) {
      continue;
    }
    rep.searched_points += i64(1) << 0;
    for (const auto& c : cands) {
      Representation partner = tau(c);
      if (c.dims + partner.dims == rep.d) pairs.push_back({c, partner});
    }
    if (!pairs.empty()) break;
  }
  if (pairs.empty()) {
    rep.note = "no tau-period-2 pair found within the split search caps";
    return rep;
  }

  std::vector<Representation> xs = search_indecomposable(bq, d_x, budget, {});
  std::vector<Representation> ys = search_indecomposable(bq, d_y, budget, {});
  std::vector<Representation> battery = default_battery(fam, 3);

  // The stratum of all X + Y: d'' is the summand side with <d, -> positive
  // (the shifted family has h = d), d' the complement; its dimension is
  // a(d) + <d'', d'> and it carries a positive-dimensional family of orbits.
  if (bilinear(tf, rep.d, d_y) <= 0 || bilinear(tf, rep.d, d_x) >= 0)
    throw invariant_error("homdeg-sides", "unexpected defect signs for the X/Y summand sides");
  i64 stratum_dim = a_const(tf, rep.d) + bilinear(tf, d_y, d_x);

  for (const auto& pr : pairs) {
    Representation r = direct_sum({pr.first, pr.second});
    if (orbit_dim(r) != rep.a_d - 2) continue;
    if (stratum_dim != rep.a_d - 2) continue;
    for (const auto& x : xs) {
      for (const auto& y : ys) {
        Representation n = direct_sum({x, y});
        if (iso_check(r, n)) continue;
        std::vector<Representation> tests = battery;
        tests.push_back(pr.first);
        tests.push_back(pr.second);
        tests.push_back(x);
        tests.push_back(y);
        HomOrderReport ho = hom_order_compare(r, n, tests);
        if (!ho.consistent || !ho.strict) continue;

        rep.found = true;
        rep.r_pair = r;
        rep.n_pair = n;
        rep.orbit_r = orbit_dim(r);
        rep.orbit_n = orbit_dim(n);
        rep.stratum_n = stratum_dim;
        rep.distinct = true;
        rep.hom_leq = true;
        rep.strict = true;

        // Exhibit several pairwise non-isomorphic stratum points: the X + Y
        // orbits sweep a family of dimension stratum_dim - orbit_n > 0.
        std::vector<Representation> stratum_reps;
        for (const auto& x2 : xs)
          for (const auto& y2 : ys) {
            Representation n2 = direct_sum({x2, y2});
            bool fresh = true;
            for (const auto& seen : stratum_reps)
              if (iso_check(seen, n2)) fresh = false;
            if (fresh) stratum_reps.push_back(std::move(n2));
          }
        rep.stratum_orbits = i64(stratum_reps.size());

        rep.lines.push_back("R = R' + tau R' with bdim R' = " + pr.first.dims.str(bq->quiver));
        rep.lines.push_back("N = X + Y with bdim X = " + x.dims.str(bq->quiver) +
                            ", bdim Y = " + y.dims.str(bq->quiver));
        rep.lines.push_back("dim O(R) = " + std::to_string(rep.orbit_r) +
                            " = a(d) - 2 = dim of the X+Y stratum = " +
                            std::to_string(stratum_dim));
        rep.lines.push_back("single X+Y orbits have dimension " + std::to_string(rep.orbit_n) +
                            "; " + std::to_string(rep.stratum_orbits) +
                            " pairwise non-isomorphic stratum points exhibited");

        if (fam_rational) {
          // Replay over Q: centered lifts where the relations are vacuous,
          // tau over Q for the partner, fresh regular candidates for Y.
          const BoundQuiverPtr& bqq = fam_rational->bq;
          Representation r1q = lift_rep(pr.first, bqq);
          Representation r2q = tau(r1q);
          if (!(r1q.dims + r2q.dims == rep.d) || !iso_check(tau(r2q), r1q))
            throw invariant_error("homdeg-lift", "lifted pair is not tau-period-2 over Q");
          Representation rq = direct_sum({r1q, r2q});
          Representation xq = lift_rep(x, bqq);
          TitsForm tfq(bqq);
          i64 a_q = a_const(tfq, rep.d);
          i64 stratum_q = a_q + bilinear(tfq, d_y, d_x);
          std::vector<Representation> yq_cands;
          for (const Scalar& mu : fam_rational->fresh_points(3, {}))
            yq_cands.push_back(fam_rational->homogeneous_simple(mu));
          for (const auto& tube : fam_rational->exceptional)
            for (int i = 0; i < tube.rank; ++i)
              yq_cands.push_back(tube_module(*fam_rational, {tube.label, i, tube.rank}));
          std::vector<Representation> battery_q = default_battery(*fam_rational, 3);
          bool lifted = false;
          for (const auto& yq : yq_cands) {
            Representation nq = direct_sum({xq, yq});
            if (orbit_dim(rq) != a_q - 2 || stratum_q != a_q - 2) continue;
            if (iso_check(rq, nq)) continue;
            std::vector<Representation> tq = battery_q;
            tq.push_back(r1q);
            tq.push_back(r2q);
            tq.push_back(xq);
            tq.push_back(yq);
            HomOrderReport hoq = hom_order_compare(rq, nq, tq);
            if (hoq.consistent && hoq.strict) {
              lifted = true;
              rep.lines.push_back("rational replay: dim O(R) = " + std::to_string(orbit_dim(rq)) +
                                  " = a(d) - 2 = stratum dim, hom-order holds");
              break;
            }
          }
          if (!lifted) {
            rep.found = false;
            rep.note = "rational replay failed for every Y candidate";
            return rep;
          }
        }
        return rep;
      }
    }
  }
  rep.note = "searched pairs exhausted without a certified example";
  return rep;
}

}  // namespace qrt
