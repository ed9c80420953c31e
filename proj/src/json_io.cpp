#include "qrt/json_io.hpp"

namespace qrt {

json field_to_json(const FieldSpec& f) {
  json j;
  if (f.is_rationals()) {
    j["kind"] = "Q";
  } else {
    j["kind"] = "Fp";
    j["p"] = f.p;
  }
  return j;
}

FieldSpec field_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "Q") return FieldSpec::rationals();
  if (kind == "Fp") return FieldSpec::prime_field(j.at("p").get<i64>());
  throw usage_error("unknown field kind '" + kind + "'");
}

json quiver_to_json(const BoundQuiver& bq) {
  json j;
  j["field"] = field_to_json(bq.field);
  j["vertices"] = bq.quiver.vertices;
  j["arrows"] = json::array();
  for (const auto& a : bq.quiver.arrows)
    j["arrows"].push_back({{"name", a.name},
                           {"from", bq.quiver.vertices[a.from]},
                           {"to", bq.quiver.vertices[a.to]}});
  j["relations"] = json::array();
  for (const auto& rho : bq.relations) {
    json terms = json::array();
    for (const auto& [c, p] : rho.terms) {
      json path = json::array();
      for (int a : p.arrows) path.push_back(bq.quiver.arrows[a].name);
      terms.push_back({{"coeff", c.str()}, {"path", path}});
    }
    j["relations"].push_back({{"terms", terms}});
  }
  return j;
}

BoundQuiverPtr quiver_from_json(const json& j) {
  FieldSpec f = field_from_json(j.at("field"));
  Quiver q;
  for (const auto& v : j.at("vertices")) q.vertices.push_back(v.get<std::string>());
  for (const auto& a : j.at("arrows"))
    q.arrows.push_back({a.at("name").get<std::string>(),
                        q.vertex_index(a.at("from").get<std::string>()),
                        q.vertex_index(a.at("to").get<std::string>())});
  std::vector<Relation> rels;
  for (const auto& r : j.value("relations", json::array())) {
    Relation rho;
    for (const auto& t : r.at("terms")) {
      Path p;
      for (const auto& name : t.at("path")) p.arrows.push_back(q.arrow_index(name.get<std::string>()));
      rho.terms.emplace_back(parse_scalar(t.at("coeff").get<std::string>(), f), std::move(p));
    }
    rels.push_back(std::move(rho));
  }
  return BoundQuiver::create(std::move(q), std::move(rels), f);
}

json dimvec_to_json(const BoundQuiver& bq, const DimVector& d) {
  json j = json::object();
  for (int x = 0; x < d.size(); ++x) j[bq.quiver.vertices[x]] = d[x];
  return j;
}

DimVector dimvec_from_json(const BoundQuiver& bq, const json& j) {
  DimVector d = DimVector::zero(bq.num_vertices());
  for (auto it = j.begin(); it != j.end(); ++it) {
    i64 v = it.value().get<i64>();
    if (v < 0) throw usage_error("negative dimension at vertex '" + it.key() + "'");
    d[bq.quiver.vertex_index(it.key())] = v;
  }
  return d;
}

json rep_to_json(const Representation& m) {
  json j;
  j["dims"] = dimvec_to_json(*m.bq, m.dims);
  json mats = json::object();
  for (int a = 0; a < m.bq->num_arrows(); ++a) {
    json rows = json::array();
    const Matrix& mat = m.matrices[a];
    for (int r = 0; r < mat.rows; ++r) {
      json row = json::array();
      for (int c = 0; c < mat.cols; ++c) row.push_back(mat.at(r, c).str());
      rows.push_back(row);
    }
    mats[m.bq->quiver.arrows[a].name] = rows;
  }
  j["matrices"] = mats;
  return j;
}

Representation rep_from_json(const BoundQuiverPtr& bq, const json& j) {
  Representation m;
  m.bq = bq;
  m.dims = dimvec_from_json(*bq, j.at("dims"));
  const json& mats = j.value("matrices", json::object());
  for (int a = 0; a < bq->num_arrows(); ++a) {
    const Arrow& ar = bq->quiver.arrows[a];
    Matrix mat(bq->field, int(m.dims[ar.to]), int(m.dims[ar.from]));
    if (mats.contains(ar.name)) {
      const json& rows = mats.at(ar.name);
      if (int(rows.size()) != mat.rows)
        throw usage_error("arrow '" + ar.name + "': expected " + std::to_string(mat.rows) + " rows");
      for (int r = 0; r < mat.rows; ++r) {
        if (int(rows[r].size()) != mat.cols)
          throw usage_error("arrow '" + ar.name + "': ragged row " + std::to_string(r));
        for (int c = 0; c < mat.cols; ++c)
          mat.at(r, c) = parse_scalar(rows[r][c].get<std::string>(), bq->field);
      }
    } else if (mat.rows * mat.cols != 0) {
      throw usage_error("missing matrix for arrow '" + ar.name + "'");
    }
    m.matrices.push_back(std::move(mat));
  }
  if (!validate(m)) throw usage_error("representation violates the relations");
  return m;
}

json tube_id_to_json(const TubeModuleId& id) {
  return json{{"lambda", id.lambda}, {"i", id.i}, {"n", id.n}};
}

TubeModuleId tube_id_from_json(const json& j) {
  TubeModuleId id;
  id.lambda = j.at("lambda").get<std::string>();
  id.i = j.value("i", 0);
  id.n = j.value("n", 1);
  return id;
}

json closure_to_json(const ClosureSystem& sys) {
  json j;
  j["anchor"] = {{"lambda", sys.anchor_lambda}, {"i", sys.anchor_i}};
  j["equations"] = json::array();
  for (const auto& eq : sys.equations)
    j["equations"].push_back({{"lambda", eq.lambda}, {"i", eq.i}, {"mu", eq.mu.str()}});
  j["codim"] = sys.codim;
  return j;
}

json presentation_to_json(const SemiInvariant& c) {
  const BoundQuiverPtr& bq = c.bq;
  json j;
  json p0 = json::array(), p1 = json::array();
  for (int y : c.p0_vertices) p0.push_back(bq->quiver.vertices[y]);
  for (int x : c.p1_vertices) p1.push_back(bq->quiver.vertices[x]);
  j["p0"] = p0;
  j["p1"] = p1;
  json omega = json::array();
  for (std::size_t i = 0; i < c.p1_vertices.size(); ++i) {
    json row = json::array();
    for (std::size_t jj = 0; jj < c.p0_vertices.size(); ++jj) {
      const MorphismSpace& ms = bq->space(c.p0_vertices[jj], c.p1_vertices[i]);
      json terms = json::array();
      for (int k = 0; k < ms.dim; ++k) {
        if (c.omega[i][jj][k].is_zero()) continue;
        json path = json::array();
        for (int a : ms.paths[ms.basis_paths[k]].arrows) path.push_back(bq->quiver.arrows[a].name);
        terms.push_back({{"coeff", c.omega[i][jj][k].str()}, {"path", path}});
      }
      row.push_back(terms);
    }
    omega.push_back(row);
  }
  j["omega"] = omega;
  j["weight"] = [&] {
    json w = json::object();
    for (int x = 0; x < bq->num_vertices(); ++x) w[bq->quiver.vertices[x]] = c.weight.theta[x];
    return w;
  }();
  return j;
}

}  // namespace qrt
