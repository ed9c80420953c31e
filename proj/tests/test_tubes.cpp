#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_helpers.hpp"

using namespace qrt;
using namespace qrt::testing;

namespace {

CatalogAlgebra& kron() {
  static CatalogAlgebra cat = catalog_kronecker(Q);
  return cat;
}

CatalogAlgebra& can2222() {
  static CatalogAlgebra cat = catalog_canonical({2, 2, 2, 2}, qs(2), Q);
  return cat;
}

CatalogAlgebra& can222() {
  static CatalogAlgebra cat = catalog_canonical({2, 2, 2}, std::nullopt, Q);
  return cat;
}

}  // namespace

TEST_CASE("catalog basics") {
  CHECK(kron().bq->num_vertices() == 2);
  CHECK(kron().bq->relations.empty());
  CHECK(kron().fam.h == DimVector{{1, 1}});
  CHECK(kron().fam.exceptional.empty());

  CHECK(can2222().fam.type() == std::vector<int>{2, 2, 2, 2});
  CHECK(can222().fam.type() == std::vector<int>{2, 2, 2});
  TitsForm tf(can2222().bq);
  CHECK(quadratic(tf, can2222().fam.h) == 0);

  CHECK_THROWS_AS(catalog_canonical({2, 3, 7}, std::nullopt, Q), usage_error);
  CHECK_THROWS_AS(catalog_canonical({2, 2, 2, 2}, qs(1), Q), usage_error);
  CHECK_THROWS_AS(catalog_canonical({2, 2, 2, 2}, qs(0), Q), usage_error);
  CHECK_THROWS_AS(catalog_canonical({2, 2, 2, 3}, qs(2), Q), usage_error);

  // string ids
  CHECK(catalog("kronecker", "", Q).bq->num_arrows() == 2);
  CHECK(catalog("a(2,3)", "", Q).fam.type() == std::vector<int>{2, 3});
  CHECK(catalog("canonical(2,2,2,2)", "2", Q).fam.type() == std::vector<int>{2, 2, 2, 2});
  CHECK_THROWS_AS(catalog("nope", "", Q), usage_error);
}

TEST_CASE("family data invariants") {
  const auto& fam = can2222().fam;
  TitsForm tf(fam.bq);
  for (const auto& tube : fam.exceptional) {
    DimVector sum = DimVector::zero(fam.bq->num_vertices());
    for (int i = 0; i < tube.rank; ++i) {
      sum = sum + tube.simples[i].dims;
      // tau R_i ~ R_{i-1}
      REQUIRE(iso_check(tau(tube.simples[i]),
                        tube.simples[(i - 1 + tube.rank) % tube.rank]));
      REQUIRE(bilinear(tf, fam.h, tube.simples[i].dims) == 0);
    }
    REQUIRE(sum == fam.h);
  }
  // homogeneous simples are tau-fixed with End = k
  for (const Scalar& mu : fam.fresh_points(3, {})) {
    Representation r = fam.homogeneous_simple(mu);
    REQUIRE(hom_dim(r, r) == 1);
    REQUIRE(iso_check(tau(r), r));
    REQUIRE(quadratic(tf, r.dims) == 0);
  }
  CHECK_THROWS_AS(fam.homogeneous_simple(qs(0)), usage_error);
  CHECK_THROWS_AS(fam.homogeneous_simple(qs(1)), usage_error);
}

TEST_CASE("euclidean a(2,2) family") {
  CatalogAlgebra cat = catalog_euclidean_a(2, 2, Q);
  CHECK(cat.fam.type() == std::vector<int>{2, 2});
  for (const auto& tube : cat.fam.exceptional)
    for (int i = 0; i < tube.rank; ++i)
      REQUIRE(iso_check(tau(tube.simples[i]),
                        tube.simples[(i - 1 + tube.rank) % tube.rank]));
}

TEST_CASE("tube modules: Kronecker frozen examples") {
  const auto& fam = kron().fam;
  Representation r0 = tube_module(fam, {"0", 0, 1});
  CHECK(r0.dims == DimVector{{1, 1}});
  CHECK(r0.matrices[0].at(0, 0).is_one());
  CHECK(r0.matrices[1].at(0, 0).is_zero());

  Representation r0_2 = tube_module(fam, {"0", 0, 2});
  CHECK(r0_2.dims == DimVector{{2, 2}});
  // unique non-split self-extension: M(a) invertible, M(b) nilpotent nonzero
  CHECK(is_invertible(r0_2.matrices[0]));
  Matrix b = r0_2.matrices[1];
  CHECK_FALSE(b.is_zero());
  CHECK((b * b).is_zero());
  // matches a = I, b = J_2(0) up to isomorphism
  Representation j;
  j.bq = fam.bq;
  j.dims = DimVector{{2, 2}};
  j.matrices = {Matrix::identity(Q, 2), Matrix(Q, 2, 2)};
  j.matrices[1].at(0, 1) = qs(1);
  CHECK(iso_check(r0_2, j));
}

TEST_CASE("tube modules: exceptional length 2 has dimension vector h") {
  const auto& fam = can2222().fam;
  for (const auto& tube : fam.exceptional) {
    Representation m = tube_module(fam, {tube.label, 0, 2});
    CHECK(m.dims == fam.h);
    CHECK(decompose(m).size() == 1);
  }
}

TEST_CASE("tube dimension vectors and periodicity of tube modules") {
  const auto& fam = can2222().fam;
  const auto& tube = fam.exceptional[2];
  for (int i = 0; i < 2; ++i)
    for (int n = 1; n <= 4; ++n) {
      TubeModuleId id{tube.label, i, n};
      Representation m = tube_module(fam, id);
      REQUIRE(m.dims == tube_dim_vector(fam, id));
      auto per = is_periodic(m, 4);
      REQUIRE(per.has_value());
      REQUIRE(*per == 2);
    }
}

TEST_CASE("decompose_vector") {
  const auto& fam = can2222().fam;
  // d = h: p = 1, all coordinates zero
  auto td = decompose_vector(fam, fam.h);
  REQUIRE(td.has_value());
  CHECK(td->p == 1);
  for (const auto& [label, p] : td->exceptional)
    for (i64 v : p) CHECK(v == 0);

  // d = h + e_{λ,0}
  const auto& tube = fam.exceptional[0];
  DimVector d = fam.h + tube.simples[0].dims;
  td = decompose_vector(fam, d);
  REQUIRE(td.has_value());
  CHECK(td->p == 1);
  CHECK(td->exceptional.at(tube.label) == std::vector<i64>{1, 0});

  // Kronecker (2,3) is not regular
  CHECK_FALSE(decompose_vector(kron().fam, DimVector{{2, 3}}).has_value());
  // Kronecker n h is
  auto kd = decompose_vector(kron().fam, DimVector{{3, 3}});
  REQUIRE(kd.has_value());
  CHECK(kd->p == 3);

  // reconstruction identity on random regular vectors
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<i64> coef(0, 2);
  for (int t = 0; t < 40; ++t) {
    DimVector d2 = fam.h.scaled(coef(rng));
    for (const auto& tb : fam.exceptional)
      for (int i = 0; i < tb.rank; ++i) d2 = d2 + tb.simples[i].dims.scaled(coef(rng));
    auto td2 = decompose_vector(fam, d2);
    REQUIRE(td2.has_value());
    DimVector rebuilt = fam.h.scaled(td2->p);
    for (const auto& tb : fam.exceptional) {
      const auto& p = td2->exceptional.at(tb.label);
      i64 mn = *std::min_element(p.begin(), p.end());
      REQUIRE(mn == 0);
      for (int i = 0; i < tb.rank; ++i) rebuilt = rebuilt + tb.simples[i].dims.scaled(p[i]);
    }
    REQUIRE(rebuilt == d2);
  }
}

TEST_CASE("hom min-formula matches computed Hom exhaustively (Kronecker)") {
  const auto& fam = kron().fam;
  for (i64 mu1 : {0, 1}) {
    for (i64 mu2 : {0, 1}) {
      for (int n = 1; n <= 2; ++n)
        for (int m = 1; m <= 2; ++m) {
          TubeModuleId a{qs(mu1).str(), 0, n}, b{qs(mu2).str(), 0, m};
          i64 predicted = hom_formula(fam, a, b);
          i64 actual = hom_dim(tube_module(fam, a), tube_module(fam, b));
          REQUIRE(predicted == actual);
        }
    }
  }
  // frozen: R_0^{(2)} vs R_0^{(1)} gives min{1, 2} = 1
  CHECK(hom_formula(fam, {"0", 0, 2}, {"0", 0, 1}) == 1);
}

TEST_CASE("hom min-formula matches computed Hom exhaustively (four-arm)") {
  const auto& fam = can2222().fam;
  const auto& tube = fam.exceptional[1];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 4; ++m) {
          TubeModuleId a{tube.label, i, n}, b{tube.label, j, m};
          REQUIRE(hom_formula(fam, a, b) == hom_dim(tube_module(fam, a), tube_module(fam, b)));
        }
  // distinct tubes have no homs
  TubeModuleId a{fam.exceptional[0].label, 0, 2}, b{fam.exceptional[1].label, 1, 2};
  CHECK(hom_formula(fam, a, b) == 0);
  CHECK(hom_dim(tube_module(fam, a), tube_module(fam, b)) == 0);
  // frozen: R_{λ,0}^{(2)} vs R_{λ,1}^{(2)}: min{1,1} = 1
  CHECK(hom_formula(fam, {tube.label, 0, 2}, {tube.label, 1, 2}) == 1);
}

TEST_CASE("euler tube formula") {
  const auto& fam = can2222().fam;
  TitsForm tf(fam.bq);
  // d = h: both sides vanish
  auto [l0, r0v] = euler_tube_formula(fam, {fam.exceptional[0].label, 0, 1}, fam.h);
  CHECK(l0 == 0);
  CHECK(r0v == 0);

  const auto& tube = fam.exceptional[0];
  DimVector d = fam.h + tube.simples[0].dims;
  auto [l1, r1v] = euler_tube_formula(fam, {tube.label, 0, 1}, d);
  CHECK(l1 == 1);
  auto [l2, r2v] = euler_tube_formula(fam, {tube.label, 0, 2}, d);
  CHECK(l2 == 0);
  CHECK(r2v == 0);
  (void)r1v;

  // formula values equal the bilinear form on 100 seeded (id, d) pairs
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<i64> coef(0, 2);
  std::uniform_int_distribution<int> tube_pick(0, int(fam.exceptional.size()) - 1);
  std::uniform_int_distribution<int> ipick(0, 5), npick(1, 4);
  for (int t = 0; t < 100; ++t) {
    DimVector d2 = fam.h.scaled(1 + coef(rng));
    for (const auto& tb : fam.exceptional)
      for (int i = 0; i < tb.rank; ++i) d2 = d2 + tb.simples[i].dims.scaled(coef(rng));
    const auto& tb = fam.exceptional[std::size_t(tube_pick(rng))];
    TubeModuleId id{tb.label, ipick(rng), npick(rng)};
    auto [left, right] = euler_tube_formula(fam, id, d2);
    REQUIRE(left == bilinear(tf, tube_dim_vector(fam, id), d2));
    REQUIRE(right == bilinear(tf, d2, tube_dim_vector(fam, id)));
  }
}

TEST_CASE("trichotomy") {
  const auto& kfam = kron().fam;
  const auto& bq = kfam.bq;
  CHECK(trichotomy(kfam, projective(bq, 0)).cls == RegClass::P);
  CHECK(trichotomy(kfam, simple_rep(bq, 0)).cls == RegClass::Q);  // S_1 = I_1
  CHECK(trichotomy(kfam, kronecker_reg(bq, qs(0))).cls == RegClass::R);
  CHECK(trichotomy(kfam, tube_module(kfam, {"3", 0, 2})).cls == RegClass::R);

  const auto& fam = can2222().fam;
  CHECK(trichotomy(fam, projective(fam.bq, fam.bq->quiver.vertex_index("source"))).cls ==
        RegClass::P);
  CHECK(trichotomy(fam, injective(fam.bq, fam.bq->quiver.vertex_index("sink"))).cls ==
        RegClass::Q);
  CHECK(trichotomy(fam, fam.exceptional[3].simples[1]).cls == RegClass::R);
  CHECK_THROWS_AS(trichotomy(kfam, direct_sum({projective(bq, 0), projective(bq, 0)})),
                  usage_error);
}

TEST_CASE("defect is nonzero off the regular classes, sampled") {
  // Prop-style spot check: 50 indecomposables classified P or Q have
  // <bdim, h> != 0 (equivalently <h, bdim> != 0).
  const auto& fam = can2222().fam;
  TitsForm tf(fam.bq);
  int checked = 0;
  for (int x = 0; x < fam.bq->num_vertices(); ++x) {
    for (Representation m : {projective(fam.bq, x), injective(fam.bq, x)}) {
      for (int k = 0; k < 5 && m.total_dim() > 0; ++k) {
        TrichotomyResult tr = trichotomy(fam, m);
        if (tr.cls != RegClass::R) {
          REQUIRE(bilinear(tf, m.dims, fam.h) != 0);
          ++checked;
        }
        m = tr.cls == RegClass::P ? tau_minus(m) : tau(m);
      }
    }
  }
  CHECK(checked >= 50);
}

TEST_CASE("s-equivalence tables") {
  const auto& fam = can2222().fam;
  const auto& tube = fam.exceptional[0];
  // R_{λ,0}^{(2)}: q_{λ,0} = q_{λ,1} = 1
  auto table = s_equivalence_class(fam, tube_module(fam, {tube.label, 0, 2}));
  REQUIRE(table.size() == 2);
  CHECK(table[0].lambda == tube.label);
  CHECK(table[0].count == 1);
  CHECK(table[1].count == 1);

  // Kronecker R_0 + R_1: two distinct homogeneous points, coordinate 1 each
  const auto& kfam = kron().fam;
  auto ktable = s_equivalence_class(
      kfam, direct_sum({kronecker_reg(kfam.bq, qs(0)), kronecker_reg(kfam.bq, qs(1))}));
  REQUIRE(ktable.size() == 2);
  CHECK(ktable[0].lambda != ktable[1].lambda);
  CHECK(ktable[0].count == 1);

  // R_0 + R_0 vs R_0^{(2)}: equal tables, distinct orbits
  auto t1 = s_equivalence_class(
      kfam, direct_sum({kronecker_reg(kfam.bq, qs(0)), kronecker_reg(kfam.bq, qs(0))}));
  auto t2 = s_equivalence_class(kfam, tube_module(kfam, {"0", 0, 2}));
  REQUIRE(t1.size() == t2.size());
  CHECK(t1[0].lambda == t2[0].lambda);
  CHECK(t1[0].count == t2[0].count);
}

TEST_CASE("tube recognition round trip") {
  const auto& fam = can2222().fam;
  for (const auto& tube : fam.exceptional) {
    for (int i = 0; i < tube.rank; ++i)
      for (int n = 1; n <= 3; ++n) {
        auto id = recognize_tube_module(fam, tube_module(fam, {tube.label, i, n}));
        REQUIRE(id.has_value());
        CHECK(id->lambda == tube.label);
        CHECK(id->n == n);
      }
  }
  for (const Scalar& mu : fam.fresh_points(2, {})) {
    auto id = recognize_tube_module(fam, tube_module(fam, {mu.str(), 0, 2}));
    REQUIRE(id.has_value());
    CHECK(id->lambda == mu.str());
    CHECK(id->n == 2);
  }
  // non-regular input is not recognized
  CHECK_FALSE(recognize_tube_module(fam, projective(fam.bq, 0)).has_value());
}

TEST_CASE("inequality bound for regular splittings d = d' + d''") {
  // For d in bR with p^d > 0 and a splitting d = d' + d'' with d'' a nonzero
  // Q-cone vector and d' in the P+R cone: <d'', d'> <= -p^d - 1, with
  // equality exactly in the two boundary cases.
  for (const CatalogAlgebra* catp : {&kron(), &can222(), &can2222()}) {
    const auto& fam = catp->fam;
    TitsForm tf(fam.bq);
    const BoundQuiverPtr& bq = fam.bq;

    // Generating dim vectors of P/Q-classified indecomposables, entries <= 3.
    std::vector<DimVector> pgen, qgen;
    auto small = [](const DimVector& d) {
      for (int v = 0; v < d.size(); ++v)
        if (d[v] > 3) return false;
      return true;
    };
    for (int x = 0; x < bq->num_vertices(); ++x) {
      Representation p = projective(bq, x);
      for (int k = 0; k < 4 && p.total_dim() > 0 && small(p.dims); ++k) {
        pgen.push_back(p.dims);
        p = tau_minus(p);
      }
      Representation i = injective(bq, x);
      for (int k = 0; k < 4 && i.total_dim() > 0 && small(i.dims); ++k) {
        qgen.push_back(i.dims);
        i = tau(i);
      }
    }

    auto in_p_plus_r = [&](const DimVector& d) {
      std::vector<DimVector> stack{d};
      std::set<std::vector<i64>> seen;
      while (!stack.empty()) {
        DimVector cur = stack.back();
        stack.pop_back();
        if (!seen.insert(cur.v).second) continue;
        if (decompose_vector(fam, cur).has_value()) return true;
        for (const auto& g : pgen)
          if (g <= cur) stack.push_back(cur - g);
      }
      return false;
    };

    // Regular base vectors: h, 2h, h + one tube simple.
    std::vector<DimVector> ds{fam.h, fam.h.scaled(2)};
    for (const auto& tube : fam.exceptional) ds.push_back(fam.h + tube.simples[0].dims);

    int checked = 0;
    for (const DimVector& d : ds) {
      auto td = decompose_vector(fam, d);
      REQUIRE(td.has_value());
      if (td->p < 1) continue;
      // d'' ranges over Q-cone sums of at most two generators below d.
      std::vector<DimVector> dpps;
      for (const auto& g : qgen)
        if (g <= d) dpps.push_back(g);
      for (std::size_t i = 0; i < qgen.size(); ++i)
        for (std::size_t j = i; j < qgen.size(); ++j)
          if (qgen[i] + qgen[j] <= d) dpps.push_back(qgen[i] + qgen[j]);
      for (const DimVector& dpp : dpps) {
        DimVector dp = d - dpp;
        if (!in_p_plus_r(dp)) continue;
        i64 val = bilinear(tf, dpp, dp);
        REQUIRE(val <= -td->p - 1);
        bool case1 = quadratic(tf, dpp) == 1 && bilinear(tf, dpp, d) == -td->p;
        bool case2 = quadratic(tf, dpp) == 0 && bilinear(tf, dpp, d) == -2;
        REQUIRE((val == -td->p - 1) == (case1 || case2));
        ++checked;
      }
    }
    CHECK(checked > 3);
  }
}
