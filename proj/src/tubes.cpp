#include "qrt/tubes.hpp"

#include <algorithm>
#include <numeric>

namespace qrt {

std::vector<int> SeparatingFamilyData::type() const {
  std::vector<int> t;
  for (const auto& e : exceptional) t.push_back(e.rank);
  return t;
}

int SeparatingFamilyData::lcm_ranks() const {
  int l = 1;
  for (const auto& e : exceptional) l = int(std::lcm(l, e.rank));
  return l;
}

const ExceptionalTube* SeparatingFamilyData::find_exceptional(const std::string& label) const {
  for (const auto& e : exceptional)
    if (e.label == label) return &e;
  return nullptr;
}

namespace {

int arm_count(const SeparatingFamilyData& fam) { return int(fam.arm_lengths.size()); }

// w_i(mu): the scalar carried by the full arm-i composite of the homogeneous
// template; w_1 = 1 and the relations force w_3 = -(w_1 + w_2) and
// w_4 = -(w_1 + lambda w_2).
Scalar arm_value(const SeparatingFamilyData& fam, int arm, const Scalar& mu) {
  const FieldSpec& f = fam.bq->field;
  int t = arm_count(fam);
  Scalar one = Scalar::one(f);
  if (arm == 1) return one;
  if (arm == 2) return t >= 3 ? -mu : mu;
  if (arm == 3) return mu - one;
  return *fam.lambda * mu - one;  // arm 4
}

std::string arm_arrow_name(int arm, int j) {
  return "a" + std::to_string(arm) + "_" + std::to_string(j);
}

}  // namespace

bool SeparatingFamilyData::param_degenerate(const Scalar& mu) const {
  for (int arm = 1; arm <= arm_count(*this); ++arm)
    if (arm_lengths[arm - 1] >= 2 && arm_value(*this, arm, mu).is_zero()) return true;
  return false;
}

Representation SeparatingFamilyData::homogeneous_simple(const Scalar& mu) const {
  if (param_degenerate(mu))
    throw usage_error("homogeneous parameter " + mu.str() + " is degenerate for this catalog");
  Representation m = semisimple_rep(bq, h);
  const FieldSpec& f = bq->field;
  for (int arm = 1; arm <= arm_count(*this); ++arm) {
    Scalar w = arm_value(*this, arm, mu);
    for (int j = 1; j <= arm_lengths[arm - 1]; ++j) {
      int ai = arm_arrows[arm - 1][j - 1];
      m.matrices[ai].at(0, 0) = j == 1 ? w : Scalar::one(f);
    }
  }
  validate_or_throw(m, "homogeneous template violates the relations");
  if (hom_dim(m, m) != 1)
    throw invariant_error("homogeneous-simple", "template endomorphism ring is not k");
  return m;
}

std::vector<Scalar> SeparatingFamilyData::fresh_points_upto(
    int count, const std::vector<Scalar>& exclude) const {
  const FieldSpec& f = bq->field;
  std::vector<Scalar> out;
  i64 limit = f.is_rationals() ? 1000000 : f.p;
  for (i64 v = 2; int(out.size()) < count && v < limit; ++v) {
    Scalar mu = Scalar::from_int(f, v);
    if (param_degenerate(mu)) continue;
    if (lambda && mu == *lambda) continue;
    bool skip = false;
    for (const auto& e : exclude)
      if (e == mu) skip = true;
    if (skip) continue;
    out.push_back(mu);
  }
  return out;
}

std::vector<Scalar> SeparatingFamilyData::fresh_points(int count,
                                                       const std::vector<Scalar>& exclude) const {
  std::vector<Scalar> out = fresh_points_upto(count, exclude);
  if (int(out.size()) < count)
    throw usage_error("not enough fresh homogeneous points in " + bq->field.str());
  return out;
}

i64 defect(const SeparatingFamilyData& fam, const DimVector& d) {
  TitsForm tf(fam.bq);
  return bilinear(tf, fam.h, d);
}

namespace {

Scalar parse_point(const SeparatingFamilyData& fam, const std::string& label) {
  return parse_scalar(label, fam.bq->field);
}

int mod_index(int i, int r) { return ((i % r) + r) % r; }

}  // namespace

DimVector tube_dim_vector(const SeparatingFamilyData& fam, const TubeModuleId& id) {
  if (id.n < 1) throw usage_error("tube length must be >= 1");
  if (const ExceptionalTube* tube = fam.find_exceptional(id.lambda)) {
    DimVector d = DimVector::zero(fam.bq->num_vertices());
    for (int k = 0; k < id.n; ++k) d = d + tube->simples[mod_index(id.i - k, tube->rank)].dims;
    return d;
  }
  parse_point(fam, id.lambda);  // validity check
  return fam.h.scaled(id.n);
}

ExtensionSpace extension_space(const Representation& sub, const Representation& quot) {
  if (sub.bq != quot.bq) throw usage_error("extension over mixed bound quivers");
  const BoundQuiverPtr& bq = sub.bq;
  const FieldSpec& f = bq->field;
  int na = bq->num_arrows();
  int nv = bq->num_vertices();

  BlockKernel bk = linearized_relation_kernel(sub, quot);
  int cols = bk.offsets[na];

  // Coboundaries: Z(a) = sub(a) h_{s a} - h_{t a} quot(a).
  std::vector<int> hoff(nv + 1, 0);
  for (int x = 0; x < nv; ++x) hoff[x + 1] = hoff[x] + int(sub.dims[x] * quot.dims[x]);
  Matrix cob(f, cols, hoff[nv]);
  for (int a = 0; a < na; ++a) {
    const Arrow& ar = bq->quiver.arrows[a];
    int zr = int(sub.dims[ar.to]), zc = int(quot.dims[ar.from]);
    for (int r = 0; r < zr; ++r)
      for (int c = 0; c < zc; ++c) {
        int row = bk.offsets[a] + r * zc + c;
        for (int k = 0; k < int(sub.dims[ar.from]); ++k) {
          const Scalar& coef = sub.matrices[a].at(r, k);
          if (!coef.is_zero()) {
            int col = hoff[ar.from] + k * int(quot.dims[ar.from]) + c;
            cob.at(row, col) = cob.at(row, col) + coef;
          }
        }
        for (int k = 0; k < int(quot.dims[ar.to]); ++k) {
          const Scalar& coef = quot.matrices[a].at(k, c);
          if (!coef.is_zero()) {
            int col = hoff[ar.to] + r * int(quot.dims[ar.to]) + k;
            cob.at(row, col) = cob.at(row, col) - coef;
          }
        }
      }
  }

  ExtensionSpace es;
  es.bq = bq;
  es.sub = sub;
  es.quot = quot;

  Matrix span = cob;
  int base_rank = rank(span);
  for (int c = 0; c < bk.kernel.cols; ++c) {
    Matrix z = bk.kernel.column(c);
    Matrix extended = span.hstack(z);
    if (rank(extended) > base_rank) {
      span = std::move(extended);
      ++base_rank;
      es.cocycle_reps.push_back(bk.column_tuple(c, sub, quot));
    }
  }
  es.classes = int(es.cocycle_reps.size());
  return es;
}

Representation ExtensionSpace::middle(int class_index) const {
  if (class_index < 0 || class_index >= classes) throw usage_error("extension class out of range");
  Representation m;
  m.bq = bq;
  m.dims = sub.dims + quot.dims;
  for (int a = 0; a < bq->num_arrows(); ++a) {
    const Arrow& ar = bq->quiver.arrows[a];
    Matrix mat(bq->field, int(m.dims[ar.to]), int(m.dims[ar.from]));
    const Matrix& sa = sub.matrices[a];
    const Matrix& qa = quot.matrices[a];
    const Matrix& za = cocycle_reps[class_index][a];
    for (int r = 0; r < sa.rows; ++r)
      for (int c = 0; c < sa.cols; ++c) mat.at(r, c) = sa.at(r, c);
    for (int r = 0; r < za.rows; ++r)
      for (int c = 0; c < za.cols; ++c) mat.at(r, sa.cols + c) = za.at(r, c);
    for (int r = 0; r < qa.rows; ++r)
      for (int c = 0; c < qa.cols; ++c) mat.at(sa.rows + r, sa.cols + c) = qa.at(r, c);
    m.matrices.push_back(std::move(mat));
  }
  validate_or_throw(m, "extension middle violates the relations");
  return m;
}

Representation tube_module(const SeparatingFamilyData& fam, const TubeModuleId& id) {
  if (id.n < 1) throw usage_error("tube length must be >= 1");
  const ExceptionalTube* tube = fam.find_exceptional(id.lambda);
  int r = tube ? tube->rank : 1;
  auto simple_at = [&](int idx) {
    if (tube) return tube->simples[mod_index(idx, r)];
    return fam.homogeneous_simple(parse_point(fam, id.lambda));
  };

  Representation m = simple_at(id.i);
  for (int k = 1; k < id.n; ++k) {
    // 0 -> R_{λ, i-k} -> R^{(k+1)}_{λ,i} -> R^{(k)}_{λ,i} -> 0
    ExtensionSpace es = extension_space(simple_at(id.i - k), m);
    if (es.classes == 0)
      throw invariant_error("tube-extension", "Ext^1 vanished inside a tube");
    m = es.middle(0);
  }

  // Postconditions: dimension vector, indecomposability, top.
  if (!(m.dims == tube_dim_vector(fam, id)))
    throw invariant_error("tube-dimension", "tube module has the wrong dimension vector");
  i64 expected_end = (id.n + r - 1) / r;
  if (hom_dim(m, m) != int(expected_end))
    throw invariant_error("tube-endomorphisms", "tube module endomorphism dimension is off");
  if (hom_dim(m, simple_at(id.i)) != 1)
    throw invariant_error("tube-top", "tube module has the wrong top");
  return m;
}

std::optional<TubeDecomposition> decompose_vector(const SeparatingFamilyData& fam,
                                                  const DimVector& d) {
  TitsForm tf(fam.bq);
  TubeDecomposition td;
  DimVector residual = d;
  for (const auto& tube : fam.exceptional) {
    int r = tube.rank;
    // <e_{λ,i}, d> = p_{λ,i} - p_{λ,i-1}; anchor at 0, then shift to min 0.
    std::vector<i64> p(r, 0);
    for (int i = 1; i < r; ++i) p[i] = p[i - 1] + bilinear(tf, tube.simples[i].dims, d);
    i64 mn = *std::min_element(p.begin(), p.end());
    for (auto& v : p) v -= mn;
    for (int i = 0; i < r; ++i) {
      if (p[i] < 0) return std::nullopt;
      residual = residual - tube.simples[i].dims.scaled(p[i]);
    }
    td.exceptional[tube.label] = std::move(p);
  }
  // residual must be a non-negative multiple of h (h is sincere).
  if (residual.size() == 0) return std::nullopt;
  i64 p0 = fam.h[0] == 0 ? 0 : residual[0] / fam.h[0];
  if (p0 < 0) return std::nullopt;
  if (!(residual == fam.h.scaled(p0))) return std::nullopt;
  td.p = p0;
  return td;
}

namespace {

// Multiplicity of the simple with index k among the composition factors of
// R^{(n)}_{λ,i}: indices i, i-1, ..., i-n+1 mod r.
i64 factor_count(int r, int i, int n, int k) {
  i64 c = 0;
  for (int j = 0; j < n; ++j)
    if (mod_index(i - j, r) == mod_index(k, r)) ++c;
  return c;
}

}  // namespace

i64 hom_formula(const SeparatingFamilyData& fam, const TubeModuleId& a, const TubeModuleId& b) {
  const ExceptionalTube* ta = fam.find_exceptional(a.lambda);
  const ExceptionalTube* tb = fam.find_exceptional(b.lambda);
  bool same_point;
  if (ta || tb)
    same_point = ta == tb;
  else
    same_point = parse_point(fam, a.lambda) == parse_point(fam, b.lambda);
  if (!same_point) return 0;
  int r = ta ? ta->rank : 1;
  //   min { q_{λ, i}^{R_b},  q_{λ, j - m + 1}^{R_a} }
  i64 first = factor_count(r, b.i, b.n, a.i);
  i64 second = factor_count(r, a.i, a.n, b.i - b.n + 1);
  return std::min(first, second);
}

std::pair<i64, i64> euler_tube_formula(const SeparatingFamilyData& fam, const TubeModuleId& id,
                                       const DimVector& d) {
  auto td = decompose_vector(fam, d);
  if (!td) throw usage_error("dimension vector is not regular (no tube decomposition)");
  const ExceptionalTube* tube = fam.find_exceptional(id.lambda);
  auto p_of = [&](int idx) -> i64 {
    if (!tube) return 0;  // homogeneous coordinates vanish after normalization
    const auto& p = td->exceptional.at(tube->label);
    return p[mod_index(idx, tube->rank)];
  };
  i64 left = p_of(id.i) - p_of(id.i - id.n);
  i64 right = p_of(id.i - id.n + 1) - p_of(id.i + 1);
  return {left, right};
}

TrichotomyResult trichotomy(const SeparatingFamilyData& fam, const Representation& m) {
  if (m.total_dim() == 0) throw usage_error("trichotomy of the zero representation");
  if (decompose(m).size() != 1) throw usage_error("trichotomy requires an indecomposable");

  TrichotomyResult res;
  TitsForm tf(fam.bq);
  res.defect = bilinear(tf, fam.h, m.dims);
  res.period = is_periodic(m, 2 * fam.lcm_ranks());
  if (res.period) {
    res.cls = RegClass::R;
    res.evidence.push_back("periodic with period " + std::to_string(*res.period));
    return res;
  }
  if (res.defect == 0)
    throw invariant_error("defect-trichotomy", "defect 0 but not periodic");
  res.cls = res.defect < 0 ? RegClass::P : RegClass::Q;

  // Hom-vanishing spot checks against regular samples.
  std::vector<Representation> samples;
  for (const auto& tube : fam.exceptional)
    for (const auto& s : tube.simples) samples.push_back(s);
  for (const Scalar& mu : fam.fresh_points_upto(3, {}))
    samples.push_back(fam.homogeneous_simple(mu));
  for (const auto& s : samples) {
    int hd = res.cls == RegClass::P ? hom_dim(s, m) : hom_dim(m, s);
    if (hd != 0)
      throw invariant_error("separation-evidence", "Hom spot check contradicts the defect sign");
  }
  res.evidence.push_back(res.cls == RegClass::P ? "Hom(R-samples, m) = 0" : "Hom(m, R-samples) = 0");
  return res;
}

std::optional<TubeModuleId> recognize_tube_module(const SeparatingFamilyData& fam,
                                                  const Representation& m) {
  i64 total = m.total_dim();
  if (total == 0) return std::nullopt;
  // Exceptional candidates by dimension vector, confirmed by isomorphism.
  for (const auto& tube : fam.exceptional) {
    for (int i = 0; i < tube.rank; ++i) {
      for (int n = 1; n <= int(total); ++n) {
        TubeModuleId id{tube.label, i, n};
        DimVector dv = tube_dim_vector(fam, id);
        if (dv.total() > total) break;
        if (dv == m.dims && iso_check(m, tube_module(fam, id))) return id;
      }
    }
  }
  // Homogeneous: dims must be n h; read the parameter off the arm composites.
  i64 n = fam.h[0] == 0 ? 0 : m.dims[0] / fam.h[0];
  if (n < 1 || !(m.dims == fam.h.scaled(n))) return std::nullopt;

  auto arm_composite = [&](int arm) {
    return m.eval_path(Path{fam.arm_arrows[arm - 1], -1});
  };
  Matrix w1 = arm_composite(1);
  if (!is_invertible(w1)) return std::nullopt;
  Matrix ratio = arm_composite(2) * inverse(w1);
  Scalar tr = Scalar::zero(fam.bq->field);
  for (int k = 0; k < ratio.rows; ++k) tr = tr + ratio.at(k, k);
  Scalar mu = tr / Scalar::from_int(fam.bq->field, n);
  if (arm_count(fam) >= 3) mu = -mu;  // template has w_2 = -mu there
  if (fam.param_degenerate(mu)) return std::nullopt;
  TubeModuleId id{mu.str(), 0, int(n)};
  if (iso_check(m, tube_module(fam, id))) return id;
  return std::nullopt;
}

std::vector<SEquivEntry> s_equivalence_class(const SeparatingFamilyData& fam,
                                             const Representation& m) {
  std::map<std::pair<std::string, int>, i64> table;
  for (const auto& summand : decompose(m)) {
    auto id = recognize_tube_module(fam, summand);
    if (!id)
      throw invariant_error("tube-recognition", "summand is not a recognizable tube module");
    int r = 1;
    if (const ExceptionalTube* tube = fam.find_exceptional(id->lambda)) r = tube->rank;
    for (int j = 0; j < id->n; ++j) ++table[{id->lambda, mod_index(id->i - j, r)}];
  }
  std::vector<SEquivEntry> out;
  for (const auto& [key, count] : table) out.push_back({key.first, key.second, count});
  return out;
}

// --- catalog -----------------------------------------------------------

namespace {

CatalogAlgebra build_catalog(const std::vector<int>& arms, std::optional<Scalar> lambda,
                             const FieldSpec& f, bool kronecker_names) {
  int t = int(arms.size());
  if (t < 2 || t > 4) throw usage_error("catalog supports 2 to 4 arms");
  for (int p : arms)
    if (p < 1) throw usage_error("arm lengths must be positive");

  // Tameness: sum 1/p_i >= t - 2 over the arms with p_i > 1.
  {
    i64 num = 0, den = 1;
    for (int p : arms) {
      num = num * p + den;
      den *= p;
    }
    if (num < i64(t - 2) * den) throw usage_error("non-tame canonical parameters");
  }
  if (t == 4) {
    if (!lambda) throw usage_error("type (p1,p2,p3,p4) requires a lambda parameter");
    if (!(lambda->field() == f)) throw usage_error("lambda lies in the wrong field");
    if (lambda->is_zero() || lambda->is_one())
      throw usage_error("lambda must avoid 0 and 1 (pairwise distinct exceptional parameters)");
  } else {
    lambda.reset();
  }

  Quiver q;
  std::vector<std::vector<int>> arm_vertices(t);  // middle vertices, position 1 .. p-1
  int sink, source;
  if (kronecker_names) {
    q.vertices = {"1", "2"};
    source = 0;
    sink = 1;
  } else {
    q.vertices.push_back("sink");
    sink = 0;
    for (int a = 1; a <= t; ++a)
      for (int j = 1; j < arms[a - 1]; ++j) {
        arm_vertices[a - 1].push_back(int(q.vertices.size()));
        q.vertices.push_back("v" + std::to_string(a) + "_" + std::to_string(j));
      }
    source = int(q.vertices.size());
    q.vertices.push_back("source");
  }

  auto arm_vertex = [&](int a, int j) {  // j = 0 is the sink, j = p is the source
    if (j == 0) return sink;
    if (j == arms[a - 1]) return source;
    return arm_vertices[a - 1][j - 1];
  };
  for (int a = 1; a <= t; ++a)
    for (int j = 1; j <= arms[a - 1]; ++j) {
      std::string name = kronecker_names ? (a == 1 ? "a" : "b") : arm_arrow_name(a, j);
      q.arrows.push_back({name, arm_vertex(a, j), arm_vertex(a, j - 1)});
    }

  auto arm_path = [&](int a) {
    Path p;
    for (int j = 1; j <= arms[a - 1]; ++j)
      p.arrows.push_back(q.arrow_index(kronecker_names ? (a == 1 ? "a" : "b")
                                                       : arm_arrow_name(a, j)));
    return p;
  };

  // The two relation shapes pin the four exceptional parameters to pairwise
  // distinct points of the projective line, which needs lambda outside {0,1}.
  std::vector<Relation> rels;
  if (t >= 3) {
    Relation r1;
    r1.terms.emplace_back(Scalar::one(f), arm_path(1));
    r1.terms.emplace_back(Scalar::one(f), arm_path(2));
    r1.terms.emplace_back(Scalar::one(f), arm_path(3));
    rels.push_back(std::move(r1));
  }
  if (t == 4) {
    Relation r2;
    r2.terms.emplace_back(Scalar::one(f), arm_path(1));
    r2.terms.emplace_back(*lambda, arm_path(2));
    r2.terms.emplace_back(Scalar::one(f), arm_path(4));
    rels.push_back(std::move(r2));
  }

  CatalogAlgebra cat;
  cat.bq = BoundQuiver::create(std::move(q), std::move(rels), f);
  cat.fam.bq = cat.bq;
  cat.fam.arm_lengths = arms;
  cat.fam.lambda = lambda;
  cat.fam.h = DimVector{std::vector<i64>(std::size_t(cat.bq->num_vertices()), 1)};
  for (int a = 1; a <= t; ++a) {
    std::vector<int> idx;
    for (int j = 1; j <= arms[a - 1]; ++j)
      idx.push_back(cat.bq->quiver.arrow_index(kronecker_names ? (a == 1 ? "a" : "b")
                                                               : arm_arrow_name(a, j)));
    cat.fam.arm_arrows.push_back(std::move(idx));
  }

  TitsForm tf(cat.bq);
  if (quadratic(tf, cat.fam.h) != 0)
    throw invariant_error("isotropic-h", "q(h) != 0 for the catalog family");

  // Exceptional tubes: the tau^- orbit of the arm simple next to the sink.
  for (int a = 1; a <= t; ++a) {
    if (arms[a - 1] < 2) continue;
    ExceptionalTube tube;
    tube.label = "x" + std::to_string(a);
    tube.arm = a;
    tube.rank = arms[a - 1];
    Representation s = simple_rep(cat.bq, arm_vertex(a, 1));
    DimVector sum = DimVector::zero(cat.bq->num_vertices());
    for (int j = 0; j < tube.rank; ++j) {
      tube.simples.push_back(s);
      sum = sum + s.dims;
      if (hom_dim(s, s) != 1)
        throw invariant_error("tube-simple", "exceptional simple has End != k");
      if (bilinear(tf, cat.fam.h, s.dims) != 0)
        throw invariant_error("tube-simple", "exceptional simple has nonzero defect");
      s = tau_minus(s);
    }
    if (!iso_check(s, tube.simples[0]))
      throw invariant_error("tube-cyclicity", "tau orbit of an exceptional simple does not close");
    if (!(sum == cat.fam.h))
      throw invariant_error("tube-sum", "exceptional simples do not sum to h");
    cat.fam.exceptional.push_back(std::move(tube));
  }
  return cat;
}

}  // namespace

CatalogAlgebra catalog_kronecker(const FieldSpec& f) {
  return build_catalog({1, 1}, std::nullopt, f, true);
}

CatalogAlgebra catalog_euclidean_a(int p, int q, const FieldSpec& f) {
  return build_catalog({p, q}, std::nullopt, f, false);
}

CatalogAlgebra catalog_canonical(const std::vector<int>& arms, std::optional<Scalar> lambda,
                                 const FieldSpec& f) {
  return build_catalog(arms, std::move(lambda), f, false);
}

CatalogAlgebra catalog(const std::string& name, const std::string& lambda_text,
                       const FieldSpec& f) {
  auto parse_ints = [&](const std::string& body) {
    std::vector<int> vals;
    std::string cur;
    for (char c : body + ",") {
      if (c == ',') {
        if (cur.empty()) throw usage_error("bad catalog id '" + name + "'");
        vals.push_back(std::stoi(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    return vals;
  };
  std::optional<Scalar> lambda;
  if (!lambda_text.empty()) lambda = parse_scalar(lambda_text, f);

  if (name == "kronecker") return catalog_kronecker(f);
  auto body_of = [&](const std::string& prefix) -> std::optional<std::string> {
    if (name.size() > prefix.size() + 1 && name.rfind(prefix + "(", 0) == 0 && name.back() == ')')
      return name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
    return std::nullopt;
  };
  if (auto body = body_of("a")) {
    auto v = parse_ints(*body);
    if (v.size() != 2) throw usage_error("a(p,q) takes two arm lengths");
    return catalog_euclidean_a(v[0], v[1], f);
  }
  if (auto body = body_of("canonical")) return catalog_canonical(parse_ints(*body), lambda, f);
  throw usage_error("unknown catalog id '" + name + "'");
}

}  // namespace qrt
