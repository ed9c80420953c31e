#include "qrt/semiinv.hpp"

namespace qrt {

i64 Weight::eval(const DimVector& d) const {
  i64 s = 0;
  for (int x = 0; x < d.size(); ++x) s += theta[x] * d[x];
  return s;
}

Weight weight_from_form(const BoundQuiverPtr& bq, const DimVector& v) {
  TitsForm tf(bq);
  Weight w;
  for (int x = 0; x < bq->num_vertices(); ++x)
    w.theta.push_back(-bilinear(tf, v, DimVector::unit(bq->num_vertices(), x)));
  return w;
}

Weight weight_of(const Representation& v) {
  ProjectivePresentation pres = minimal_presentation(v);
  Weight w;
  w.theta.assign(std::size_t(v.num_vertices()), 0);
  for (int x : pres.p1_vertices) ++w.theta[x];
  for (int y : pres.p0_vertices) --w.theta[y];

  // When pdim <= 1 the weight must agree with -<bdim V, ->.
  bool pdim_le_1 = true;
  try {
    pdim_le_1 = projective_resolution(v).p2_vertices.empty();
  } catch (const invariant_error&) {
    pdim_le_1 = false;
  }
  if (pdim_le_1 && !(w == weight_from_form(v.bq, v.dims)))
    throw invariant_error("weight-form", "presentation weight disagrees with -<bdim V, ->");
  return w;
}

SemiInvariant semi_invariant(const Representation& v, const DimVector& d) {
  SemiInvariant c;
  c.bq = v.bq;
  c.v = v;
  ProjectivePresentation pres = minimal_presentation(v);
  c.p0_vertices = pres.p0_vertices;
  c.p1_vertices = pres.p1_vertices;
  c.omega = pres.omega;
  c.weight = weight_of(v);
  c.d = d;
  if (c.weight.eval(d) != 0)
    throw usage_error("theta^V(d) != 0: the presentation block matrix is not square");
  return c;
}

Scalar evaluate(const SemiInvariant& c, const Representation& m) {
  if (!(m.dims == c.d)) throw usage_error("semi-invariant evaluated at the wrong dimension vector");
  Matrix h = assemble_hom_matrix(m, c.p1_vertices, c.p0_vertices, c.omega);
  if (h.rows != h.cols) throw invariant_error("square-block", "presentation block is not square");
  return det(h);
}

bool transformation_check(const SemiInvariant& c, const Representation& m,
                          const std::vector<Matrix>& g) {
  Scalar lhs = evaluate(c, gl_translate(m, g));
  Scalar chi = Scalar::one(m.bq->field);
  for (int x = 0; x < m.num_vertices(); ++x) {
    Scalar dg = det(g[x]);
    if (dg.is_zero()) throw usage_error("singular group element");
    chi = chi * dg.pow(c.weight.theta[x]);
  }
  return lhs == chi * evaluate(c, m);
}

Poly value_curve(const SemiInvariant& c, const Representation& m, const std::vector<Matrix>& z) {
  const FieldSpec& f = m.bq->field;
  const BoundQuiverPtr& bq = m.bq;

  // Degree bound: per-row maximum path length, summed over rows.
  i64 deg_bound = 0;
  for (std::size_t i = 0; i < c.p1_vertices.size(); ++i) {
    i64 longest = 1;
    for (std::size_t j = 0; j < c.p0_vertices.size(); ++j) {
      const MorphismSpace& ms = bq->space(c.p0_vertices[j], c.p1_vertices[i]);
      for (int k = 0; k < ms.dim; ++k)
        if (!c.omega[i][j][k].is_zero())
          longest = std::max<i64>(longest, ms.paths[ms.basis_paths[k]].length());
    }
    deg_bound += longest * c.d[c.p1_vertices[i]];
  }

  auto shifted = [&](const Scalar& t) {
    Representation mt = m;
    for (int a = 0; a < bq->num_arrows(); ++a) mt.matrices[a] = m.matrices[a] + z[a].scaled(t);
    return mt;
  };

  if (f.is_rationals() || f.p > deg_bound) {
    std::vector<std::pair<Scalar, Scalar>> pts;
    for (i64 t = 0; t <= deg_bound; ++t) {
      Scalar ts = Scalar::from_int(f, t);
      Representation mt = shifted(ts);
      Matrix h = assemble_hom_matrix(mt, c.p1_vertices, c.p0_vertices, c.omega);
      pts.emplace_back(ts, det(h));
    }
    return interpolate(pts);
  }

  // Small prime field: evaluate the determinant over k[t] directly.
  Representation m1 = shifted(Scalar::one(f));
  Matrix h0 = assemble_hom_matrix(m, c.p1_vertices, c.p0_vertices, c.omega);
  (void)h0;
  // Entries of H(m + t z) as polynomials: sample-free assembly via repeated
  // path expansion would duplicate the evaluator, so build them from the
  // omega table with polynomial matrices.
  int nv = bq->num_vertices();
  (void)nv;
  // Represent each arrow matrix as linear polynomials and evaluate paths.
  auto poly_entry = [&](const Matrix& base, const Matrix& dir, int r, int cidx) {
    return Poly(f, {base.at(r, cidx), dir.at(r, cidx)});
  };
  auto poly_mul_mat = [&](const std::vector<Poly>& a, int ar, int ac,
                          const std::vector<Poly>& b, int br, int bc) {
    std::vector<Poly> out(std::size_t(ar) * bc, Poly(f));
    for (int i = 0; i < ar; ++i)
      for (int k = 0; k < ac; ++k)
        for (int j = 0; j < bc; ++j)
          out[std::size_t(i) * bc + j] =
              out[std::size_t(i) * bc + j] + a[std::size_t(i) * ac + k] * b[std::size_t(k) * bc + j];
    (void)br;
    return out;
  };
  auto poly_path = [&](const Path& p, int src) -> std::pair<std::vector<Poly>, std::pair<int, int>> {
    if (p.arrows.empty()) {
      int n = int(m.dims[src]);
      std::vector<Poly> id(std::size_t(n) * n, Poly(f));
      for (int i = 0; i < n; ++i) id[std::size_t(i) * n + i] = Poly(f, {Scalar::one(f)});
      return {id, {n, n}};
    }
    auto mat_of = [&](int a) {
      const Matrix& base = m.matrices[a];
      std::vector<Poly> pm;
      for (int r = 0; r < base.rows; ++r)
        for (int cc = 0; cc < base.cols; ++cc) pm.push_back(poly_entry(base, z[a], r, cc));
      return std::make_pair(pm, std::make_pair(base.rows, base.cols));
    };
    auto acc = mat_of(p.arrows[0]);
    for (std::size_t k = 1; k < p.arrows.size(); ++k) {
      auto nxt = mat_of(p.arrows[k]);
      acc.first = poly_mul_mat(acc.first, acc.second.first, acc.second.second, nxt.first,
                               nxt.second.first, nxt.second.second);
      acc.second = {acc.second.first, nxt.second.second};
    }
    return acc;
  };

  int rows = 0, cols = 0;
  for (int x : c.p1_vertices) rows += int(m.dims[x]);
  for (int y : c.p0_vertices) cols += int(m.dims[y]);
  if (rows != cols) throw invariant_error("square-block", "presentation block is not square");
  std::vector<Poly> big(std::size_t(rows) * cols, Poly(f));
  int ro = 0;
  for (std::size_t i = 0; i < c.p1_vertices.size(); ++i) {
    int co = 0;
    for (std::size_t j = 0; j < c.p0_vertices.size(); ++j) {
      const MorphismSpace& ms = bq->space(c.p0_vertices[j], c.p1_vertices[i]);
      int br = int(m.dims[c.p1_vertices[i]]), bc = int(m.dims[c.p0_vertices[j]]);
      for (int k = 0; k < ms.dim; ++k) {
        if (c.omega[i][j][k].is_zero()) continue;
        auto pp = poly_path(ms.paths[ms.basis_paths[k]], c.p0_vertices[j]);
        Poly coef(f, {c.omega[i][j][k]});
        for (int r = 0; r < br; ++r)
          for (int cc = 0; cc < bc; ++cc)
            big[std::size_t(ro + r) * cols + (co + cc)] =
                big[std::size_t(ro + r) * cols + (co + cc)] + coef * pp.first[std::size_t(r) * bc + cc];
      }
      co += bc;
    }
    ro += int(m.dims[c.p1_vertices[i]]);
  }
  return det_poly(rows, big);
}

Scalar differential(const SemiInvariant& c, const Representation& m,
                    const std::vector<Matrix>& z) {
  return value_curve(c, m, z).coeff(1);
}

std::vector<const DistinguishedEntry*> DistinguishedTable::at_point(
    const std::string& lambda) const {
  std::vector<const DistinguishedEntry*> out;
  for (const auto& e : entries)
    if (e.lambda == lambda) out.push_back(&e);
  return out;
}

Scalar DistinguishedTable::point_product(const std::string& lambda,
                                         const Representation& m) const {
  auto es = at_point(lambda);
  if (es.empty()) throw usage_error("no distinguished entries at point " + lambda);
  Scalar acc = Scalar::one(m.bq->field);
  for (const auto* e : es) acc = acc * evaluate(e->c, m);
  return acc;
}

DistinguishedTable distinguished(const SeparatingFamilyData& fam, const DimVector& d,
                                 const std::vector<Scalar>& homogeneous_points) {
  auto td = decompose_vector(fam, d);
  if (!td) throw usage_error("dimension vector is not regular");
  if (td->p <= 0) throw usage_error("distinguished semi-invariants need p^d > 0");

  DistinguishedTable table;
  table.d = d;
  table.p = td->p;
  for (const auto& tube : fam.exceptional) {
    const auto& p = td->exceptional.at(tube.label);
    for (int i = 0; i < tube.rank; ++i) {
      if (p[i] != 0) continue;  // A_lambda(d) consists of the zero coordinates
      int n = 1;
      while (p[((i - n) % tube.rank + tube.rank) % tube.rank] != 0) ++n;
      DistinguishedEntry e;
      e.lambda = tube.label;
      e.i = i;
      e.n = n;
      e.c = semi_invariant(tube_module(fam, {tube.label, i, n}), d);
      if (e.c.weight.eval(d) != 0)
        throw invariant_error("distinguished-weight", "theta^V(d) != 0 for a distinguished entry");
      table.entries.push_back(std::move(e));
    }
  }
  for (const Scalar& mu : homogeneous_points) {
    DistinguishedEntry e;
    e.lambda = mu.str();
    e.i = 0;
    e.n = 1;
    e.c = semi_invariant(fam.homogeneous_simple(mu), d);
    table.entries.push_back(std::move(e));
  }
  return table;
}

void verify_exact(const ShortExact& s) {
  auto is_morphism = [](const Representation& a, const Representation& b,
                        const std::vector<Matrix>& f) {
    for (int ai = 0; ai < a.bq->num_arrows(); ++ai) {
      const Arrow& ar = a.bq->quiver.arrows[ai];
      if (!(b.matrices[ai] * f[ar.from] == f[ar.to] * a.matrices[ai])) return false;
    }
    return true;
  };
  if (!is_morphism(s.sub, s.mid, s.incl) || !is_morphism(s.mid, s.quot, s.proj))
    throw usage_error("exact-sequence maps are not morphisms");
  for (int x = 0; x < s.mid.num_vertices(); ++x) {
    if (s.sub.dims[x] + s.quot.dims[x] != s.mid.dims[x])
      throw usage_error("exact-sequence dimensions do not add up");
    if (rank(s.incl[x]) != int(s.sub.dims[x])) throw usage_error("inclusion not injective");
    if (rank(s.proj[x]) != int(s.quot.dims[x])) throw usage_error("projection not surjective");
    if (!(s.proj[x] * s.incl[x]).is_zero()) throw usage_error("composite sub -> quot nonzero");
  }
}

bool mult_check_extension(const ShortExact& s, const DimVector& d,
                          const std::vector<Representation>& samples) {
  verify_exact(s);
  SemiInvariant cv = semi_invariant(s.mid, d);
  SemiInvariant c1 = semi_invariant(s.sub, d);
  SemiInvariant c2 = semi_invariant(s.quot, d);

  std::optional<Scalar> ratio;  // one global scalar per triple
  for (const auto& m : samples) {
    Scalar lhs = evaluate(cv, m);
    Scalar rhs = evaluate(c1, m) * evaluate(c2, m);
    if (lhs.is_zero() != rhs.is_zero()) return false;
    if (lhs.is_zero()) continue;
    Scalar q = lhs / rhs;
    if (!ratio)
      ratio = q;
    else if (!(*ratio == q))
      return false;
  }
  return true;
}

}  // namespace qrt
