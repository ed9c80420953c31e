#include "qrt/quiver.hpp"

#include <algorithm>
#include <set>

namespace qrt {

int Quiver::vertex_index(const std::string& name) const {
  for (int i = 0; i < int(vertices.size()); ++i)
    if (vertices[i] == name) return i;
  throw usage_error("unknown vertex '" + name + "'");
}

int Quiver::arrow_index(const std::string& name) const {
  for (int i = 0; i < int(arrows.size()); ++i)
    if (arrows[i].name == name) return i;
  throw usage_error("unknown arrow '" + name + "'");
}

namespace {

bool name_ok(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c <= ' ' || c > '~') return false;
  return true;
}

}  // namespace

void Quiver::check() const {
  std::set<std::string> seen;
  for (const auto& v : vertices) {
    if (!name_ok(v)) throw usage_error("bad vertex name '" + v + "'");
    if (!seen.insert(v).second) throw usage_error("duplicate vertex '" + v + "'");
  }
  seen.clear();
  for (const auto& a : arrows) {
    if (!name_ok(a.name)) throw usage_error("bad arrow name '" + a.name + "'");
    if (!seen.insert(a.name).second) throw usage_error("duplicate arrow '" + a.name + "'");
    if (a.from < 0 || a.from >= int(vertices.size()) || a.to < 0 || a.to >= int(vertices.size()))
      throw usage_error("arrow '" + a.name + "' has an undeclared endpoint");
  }
  // Kahn's topological sort; leftovers witness an oriented cycle.
  std::vector<int> indeg(vertices.size(), 0);
  for (const auto& a : arrows) ++indeg[a.to];
  std::vector<int> queue;
  for (int v = 0; v < int(vertices.size()); ++v)
    if (indeg[v] == 0) queue.push_back(v);
  std::size_t done = 0;
  while (done < queue.size()) {
    int v = queue[done++];
    for (const auto& a : arrows)
      if (a.from == v && --indeg[a.to] == 0) queue.push_back(a.to);
  }
  if (done != vertices.size()) throw usage_error("quiver has an oriented cycle");
}

int Path::source(const Quiver& q) const {
  return arrows.empty() ? trivial_at : q.arrows[arrows.back()].from;
}

int Path::target(const Quiver& q) const {
  return arrows.empty() ? trivial_at : q.arrows[arrows.front()].to;
}

int Relation::source(const Quiver& q) const {
  if (terms.empty()) throw usage_error("empty relation");
  return terms[0].second.source(q);
}

int Relation::target(const Quiver& q) const {
  if (terms.empty()) throw usage_error("empty relation");
  return terms[0].second.target(q);
}

std::vector<Path> enumerate_paths(const Quiver& q, int x, int y) {
  if (x < 0 || x >= int(q.vertices.size()) || y < 0 || y >= int(q.vertices.size()))
    throw usage_error("unknown vertex index");
  std::vector<Path> out;
  if (x == y) out.push_back(Path{{}, x});

  // Walk forward from x; `chain` holds arrows in application order, so the
  // stored path is the reverse.
  std::vector<int> chain;
  auto dfs = [&](auto&& self, int at) -> void {
    for (int ai = 0; ai < int(q.arrows.size()); ++ai) {
      if (q.arrows[ai].from != at) continue;
      chain.push_back(ai);
      if (q.arrows[ai].to == y) {
        Path p;
        p.arrows.assign(chain.rbegin(), chain.rend());
        out.push_back(std::move(p));
      }
      self(self, q.arrows[ai].to);
      chain.pop_back();
    }
  };
  dfs(dfs, x);

  std::sort(out.begin(), out.end(), [&](const Path& a, const Path& b) {
    std::vector<std::string> ka, kb;
    for (int i : a.arrows) ka.push_back(q.arrows[i].name);
    for (int i : b.arrows) kb.push_back(q.arrows[i].name);
    return ka < kb;
  });
  return out;
}

std::vector<Scalar> MorphismSpace::reduce(std::vector<Scalar> full) const {
  // Eliminate pivot coordinates with the ideal rows, then read off the
  // non-pivot coordinates.
  for (int r = 0; r < int(ideal_pivots.size()); ++r) {
    int pc = ideal_pivots[r];
    if (full[pc].is_zero()) continue;
    Scalar f = full[pc];
    for (int j = 0; j < ideal_rref.cols; ++j)
      if (!ideal_rref.at(r, j).is_zero()) full[j] = full[j] - f * ideal_rref.at(r, j);
  }
  std::vector<Scalar> coords;
  coords.reserve(basis_paths.size());
  for (int b : basis_paths) coords.push_back(full[b]);
  return coords;
}

std::vector<Scalar> MorphismSpace::path_class(int path_index, const FieldSpec& f) const {
  std::vector<Scalar> full(paths.size(), Scalar::zero(f));
  full[path_index] = Scalar::one(f);
  return reduce(std::move(full));
}

MorphismSpace build_morphism_space(const BoundQuiver& bq, int x, int y,
                                   const std::vector<Relation>& rels) {
  const Quiver& q = bq.quiver;
  MorphismSpace ms;
  ms.source = x;
  ms.target = y;
  ms.paths = enumerate_paths(q, x, y);

  std::map<std::vector<int>, int> index_of;
  for (int i = 0; i < int(ms.paths.size()); ++i) index_of[ms.paths[i].arrows] = i;

  // Rows: p . rho . r for every relation rho and composable padding (r, p).
  std::vector<Scalar> rows;
  int nrows = 0;
  for (const auto& rho : rels) {
    int s = rho.source(q), t = rho.target(q);
    for (const Path& right : enumerate_paths(q, x, s)) {
      for (const Path& left : enumerate_paths(q, t, y)) {
        std::vector<Scalar> row(ms.paths.size(), Scalar::zero(bq.field));
        for (const auto& [coeff, mid] : rho.terms) {
          std::vector<int> arrs = left.arrows;
          arrs.insert(arrs.end(), mid.arrows.begin(), mid.arrows.end());
          arrs.insert(arrs.end(), right.arrows.begin(), right.arrows.end());
          auto it = index_of.find(arrs);
          if (it == index_of.end()) throw invariant_error("path-index", "composite path missing");
          row[it->second] = row[it->second] + coeff;
        }
        rows.insert(rows.end(), row.begin(), row.end());
        ++nrows;
      }
    }
  }

  Matrix span(bq.field, nrows, int(ms.paths.size()));
  span.entries = std::move(rows);
  if (nrows == 0) span = Matrix(bq.field, 0, int(ms.paths.size()));
  RrefResult rr = rref(span);
  rr.m.rows = rr.rank;
  rr.m.entries.resize(std::size_t(rr.rank) * rr.m.cols, Scalar::zero(bq.field));
  ms.ideal_rref = std::move(rr.m);
  ms.ideal_pivots = std::move(rr.pivots);
  std::vector<bool> piv(ms.paths.size(), false);
  for (int c : ms.ideal_pivots) piv[c] = true;
  for (int i = 0; i < int(ms.paths.size()); ++i)
    if (!piv[i]) ms.basis_paths.push_back(i);
  ms.dim = int(ms.basis_paths.size());
  return ms;
}

BoundQuiverPtr BoundQuiver::create(Quiver q, std::vector<Relation> rels, FieldSpec f) {
  q.check();
  for (const auto& rho : rels) {
    if (rho.terms.empty()) throw usage_error("relation without terms");
    int s = rho.source(q), t = rho.target(q);
    for (const auto& [c, p] : rho.terms) {
      if (p.length() < 2) throw usage_error("relation path of length < 2");
      if (p.source(q) != s || p.target(q) != t)
        throw usage_error("relation terms must share source and target");
      if (!(c.field() == f)) throw usage_error("relation coefficient in the wrong field");
      for (std::size_t i = 0; i + 1 < p.arrows.size(); ++i)
        if (q.arrows[p.arrows[i]].from != q.arrows[p.arrows[i + 1]].to)
          throw usage_error("relation path is not composable");
    }
  }

  auto bq = std::make_shared<BoundQuiver>();
  bq->quiver = std::move(q);
  bq->relations = std::move(rels);
  bq->field = f;
  int n = bq->num_vertices();
  bq->spaces_.reserve(std::size_t(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) bq->spaces_.push_back(build_morphism_space(*bq, x, y, bq->relations));
  return bq;
}

const MorphismSpace& BoundQuiver::space(int x, int y) const {
  return spaces_[std::size_t(x) * num_vertices() + y];
}

std::vector<Scalar> BoundQuiver::compose(int x, int y, int z, const std::vector<Scalar>& second,
                                         const std::vector<Scalar>& first) const {
  const MorphismSpace& ms_xy = space(x, y);
  const MorphismSpace& ms_yz = space(y, z);
  const MorphismSpace& ms_xz = space(x, z);

  std::map<std::vector<int>, int> index_of;
  for (int i = 0; i < int(ms_xz.paths.size()); ++i) index_of[ms_xz.paths[i].arrows] = i;

  std::vector<Scalar> full(ms_xz.paths.size(), Scalar::zero(field));
  for (int a = 0; a < ms_yz.dim; ++a) {
    if (second[a].is_zero()) continue;
    const Path& pa = ms_yz.paths[ms_yz.basis_paths[a]];
    for (int b = 0; b < ms_xy.dim; ++b) {
      if (first[b].is_zero()) continue;
      const Path& pb = ms_xy.paths[ms_xy.basis_paths[b]];
      std::vector<int> arrs = pa.arrows;
      arrs.insert(arrs.end(), pb.arrows.begin(), pb.arrows.end());
      auto it = index_of.find(arrs);
      if (it == index_of.end()) throw invariant_error("path-index", "composite path missing");
      full[it->second] = full[it->second] + second[a] * first[b];
    }
  }
  return ms_xz.reduce(std::move(full));
}

bool check_minimal(const BoundQuiver& bq) {
  int n = bq.num_vertices();
  for (std::size_t drop = 0; drop < bq.relations.size(); ++drop) {
    std::vector<Relation> rest;
    for (std::size_t i = 0; i < bq.relations.size(); ++i)
      if (i != drop) rest.push_back(bq.relations[i]);
    bool shrinks = false;
    for (int x = 0; x < n && !shrinks; ++x)
      for (int y = 0; y < n && !shrinks; ++y) {
        MorphismSpace ms = build_morphism_space(bq, x, y, rest);
        if (ms.ideal_dim() != bq.space(x, y).ideal_dim()) shrinks = true;
      }
    if (!shrinks) return false;
  }
  return true;
}

BoundQuiverPtr BoundQuiver::opposite_ptr() const {
  std::call_once(op_once_, [this] { op_cache_ = opposite(*this); });
  return op_cache_;
}

BoundQuiverPtr opposite(const BoundQuiver& bq) {
  Quiver q;
  q.vertices = bq.quiver.vertices;
  for (const auto& a : bq.quiver.arrows) q.arrows.push_back({a.name, a.to, a.from});
  std::vector<Relation> rels;
  for (const auto& rho : bq.relations) {
    Relation r;
    for (const auto& [c, p] : rho.terms) {
      Path rp;
      rp.arrows.assign(p.arrows.rbegin(), p.arrows.rend());
      rp.trivial_at = p.trivial_at;
      r.terms.emplace_back(c, std::move(rp));
    }
    rels.push_back(std::move(r));
  }
  return BoundQuiver::create(std::move(q), std::move(rels), bq.field);
}

BoundQuiverPtr reduce_mod(const BoundQuiver& bq, i64 p) {
  FieldSpec fp = FieldSpec::prime_field(p);
  std::vector<Relation> rels;
  for (const auto& rho : bq.relations) {
    Relation r;
    for (const auto& [c, path] : rho.terms) {
      Scalar cr = bq.field.is_rationals() ? c.reduce_mod(fp) : Scalar::from_int(fp, c.residue());
      if (!cr.is_zero()) r.terms.emplace_back(cr, path);
    }
    if (!r.terms.empty()) rels.push_back(std::move(r));
  }
  return BoundQuiver::create(bq.quiver, std::move(rels), fp);
}

}  // namespace qrt
