#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrt/semiinv.hpp"
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

}  // namespace

TEST_CASE("weights") {
  const auto& bq = kron().bq;
  // V = R_0: theta(d) = d_2 - d_1, matching -<bdim V, ->.
  Weight w = weight_of(kronecker_reg(bq, qs(0)));
  CHECK(w.theta == std::vector<i64>{-1, 1});
  CHECK(w == weight_from_form(bq, DimVector{{1, 1}}));

  // V = P_2: theta = -<(0,1), ->.
  Weight wp = weight_of(projective(bq, 1));
  CHECK(wp == weight_from_form(bq, DimVector{{0, 1}}));
  CHECK(wp.eval(DimVector{{1, 0}}) == 0);
  CHECK(wp.eval(DimVector{{0, 1}}) == -1);

  // V = 0: zero weight.
  Weight wz = weight_of(zero_rep(bq));
  CHECK(wz.theta == std::vector<i64>{0, 0});

  // theta := -<h, -> matches the weight of a full tube turn.
  const auto& fam = can2222().fam;
  Weight wh = weight_from_form(fam.bq, fam.h);
  Weight wr = weight_of(fam.homogeneous_simple(qs(3)));
  CHECK(wh == wr);
}

TEST_CASE("evaluation: Kronecker frozen values") {
  const auto& fam = kron().fam;
  const auto& bq = fam.bq;
  DimVector d{{1, 1}};
  SemiInvariant c0 = semi_invariant(kronecker_reg(bq, qs(0)), d);
  // c^{R_0}(M) = det M(b)
  CHECK(evaluate(c0, kronecker_reg(bq, qs(1))).is_one());
  CHECK(evaluate(c0, kronecker_reg(bq, qs(0))).is_zero());

  // c_mu at m = R_0 + R_1: values mu(mu-1): 2, 6, 12 at mu = 2, 3, 4.
  DimVector d2{{2, 2}};
  Representation m = direct_sum({kronecker_reg(bq, qs(0)), kronecker_reg(bq, qs(1))});
  for (i64 mu : {2, 3, 4}) {
    SemiInvariant c = semi_invariant(kronecker_reg(bq, qs(mu)), d2);
    CHECK(evaluate(c, m) == qs(mu * (mu - 1)));
  }

  // wrong dimension vector is rejected
  CHECK_THROWS_AS(evaluate(c0, m), usage_error);
  // nonzero weight at d is rejected
  CHECK_THROWS_AS(semi_invariant(kronecker_reg(bq, qs(0)), DimVector{{2, 1}}), usage_error);
}

TEST_CASE("vanishing equivalence c^V(m) = 0 iff Hom(V, m) != 0") {
  const auto& fam = can2222().fam;
  std::mt19937_64 rng(77);
  DimVector d = fam.h.scaled(2);
  auto ms = samples_at(fam, d, rng, 25);
  std::vector<Representation> vs;
  for (const auto& tube : fam.exceptional) vs.push_back(tube_module(fam, {tube.label, 0, 2}));
  vs.push_back(fam.homogeneous_simple(qs(3)));
  vs.push_back(tube_module(fam, {qs(4).str(), 0, 2}));
  int checked = 0;
  for (const auto& v : vs) {
    SemiInvariant c = semi_invariant(v, d);
    for (const auto& m : ms) {
      REQUIRE(evaluate(c, m).is_zero() == (hom_dim(v, m) > 0));
      ++checked;
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("transformation law under the group action") {
  const auto& fam = kron().fam;
  const auto& bq = fam.bq;
  DimVector d{{2, 2}};
  Representation m = direct_sum({kronecker_reg(bq, qs(0)), kronecker_reg(bq, qs(1))});
  SemiInvariant c = semi_invariant(kronecker_reg(bq, qs(2)), d);

  std::vector<Matrix> id{Matrix::identity(Q, 2), Matrix::identity(Q, 2)};
  CHECK(transformation_check(c, m, id));

  std::mt19937_64 rng(78);
  for (int t = 0; t < 30; ++t) REQUIRE(transformation_check(c, m, random_gl(bq, d, rng)));

  // and over the four-arm catalog
  const auto& fam4 = can2222().fam;
  DimVector h = fam4.h;
  Representation r = fam4.homogeneous_simple(qs(4));
  SemiInvariant c4 = semi_invariant(fam4.exceptional[0].simples[0], h);
  for (int t = 0; t < 10; ++t) REQUIRE(transformation_check(c4, r, random_gl(fam4.bq, h, rng)));
}

TEST_CASE("differential: frozen 1x1 case and linearity") {
  const auto& fam = kron().fam;
  const auto& bq = fam.bq;
  DimVector d{{1, 1}};
  SemiInvariant c = semi_invariant(kronecker_reg(bq, qs(0)), d);
  Representation m = kronecker_reg(bq, qs(1));

  // c^{R_0} = det M(b): derivative along z is z_b.
  auto z_of = [&](i64 za, i64 zb) {
    std::vector<Matrix> z{Matrix(Q, 1, 1), Matrix(Q, 1, 1)};
    z[0].at(0, 0) = qs(za);
    z[1].at(0, 0) = qs(zb);
    return z;
  };
  CHECK(differential(c, m, z_of(5, 7)) == qs(7));
  CHECK(differential(c, m, z_of(0, 0)).is_zero());

  // linearity in z on a 2x2 case
  DimVector d2{{2, 2}};
  SemiInvariant c2 = semi_invariant(kronecker_reg(bq, qs(2)), d2);
  Representation m2 = direct_sum({kronecker_reg(bq, qs(0)), kronecker_reg(bq, qs(1))});
  std::mt19937_64 rng(79);
  std::uniform_int_distribution<i64> e(-3, 3);
  auto rand_z = [&] {
    std::vector<Matrix> z{Matrix(Q, 2, 2), Matrix(Q, 2, 2)};
    for (auto& mat : z)
      for (auto& v : mat.entries) v = qs(e(rng));
    return z;
  };
  for (int t = 0; t < 20; ++t) {
    auto z1 = rand_z(), z2 = rand_z();
    std::vector<Matrix> zsum{z1[0] + z2[0], z1[1] + z2[1]};
    REQUIRE(differential(c2, m2, zsum) ==
            differential(c2, m2, z1) + differential(c2, m2, z2));
  }

  // product rule via the exact value curves
  for (int t = 0; t < 10; ++t) {
    auto z = rand_z();
    SemiInvariant c3 = semi_invariant(kronecker_reg(bq, qs(3)), d2);
    Poly f = value_curve(c2, m2, z), g = value_curve(c3, m2, z);
    Poly prod = f * g;
    REQUIRE(prod.coeff(1) == differential(c2, m2, z) * evaluate(c3, m2) +
                                 evaluate(c2, m2) * differential(c3, m2, z));
  }
}

TEST_CASE("differential over a small prime field uses the polynomial route") {
  FieldSpec f3 = FieldSpec::prime_field(3);
  CatalogAlgebra cat = catalog_kronecker(f3);
  const auto& bq = cat.bq;
  DimVector d{{2, 2}};
  Representation m = direct_sum({kronecker_reg(bq, Scalar::zero(f3)),
                                 kronecker_reg(bq, Scalar::one(f3))});
  SemiInvariant c = semi_invariant(kronecker_reg(bq, Scalar::from_int(f3, 2)), d);
  std::vector<Matrix> z{Matrix(f3, 2, 2), Matrix(f3, 2, 2)};
  z[1].at(0, 0) = Scalar::one(f3);
  // curve degree can reach 2 = p - 1, so interpolation would be ambiguous;
  // the exact polynomial elimination is not.
  Poly curve = value_curve(c, m, z);
  CHECK(curve.eval(Scalar::zero(f3)) == evaluate(c, m));
  Representation shifted = m;
  shifted.matrices[1] = m.matrices[1] + z[1];
  CHECK(curve.eval(Scalar::one(f3)) == evaluate(c, shifted));
}

TEST_CASE("distinguished tables") {
  const auto& fam = can2222().fam;
  // d = h: every index is in A_lambda(d) with n = 1.
  DistinguishedTable t = distinguished(fam, fam.h, {qs(3)});
  int exceptional_entries = 0;
  for (const auto& e : t.entries)
    if (fam.find_exceptional(e.lambda)) {
      ++exceptional_entries;
      CHECK(e.n == 1);
    }
  CHECK(exceptional_entries == 8);  // 4 tubes x rank 2
  CHECK(t.p == 1);

  // d = h + e_{λ,0}: A_λ = {1}, n_{λ,1} = 2.
  const auto& tube = fam.exceptional[0];
  DimVector d = fam.h + tube.simples[0].dims;
  DistinguishedTable t2 = distinguished(fam, d, {});
  auto at0 = t2.at_point(tube.label);
  REQUIRE(at0.size() == 1);
  CHECK(at0[0]->i == 1);
  CHECK(at0[0]->n == 2);
  // other tubes keep the full index set
  CHECK(t2.at_point(fam.exceptional[1].label).size() == 2);

  // p^d = 0 is rejected
  CHECK_THROWS_AS(distinguished(fam, tube.simples[0].dims, {}), usage_error);
}

TEST_CASE("multiplicativity over extensions") {
  const auto& fam = kron().fam;
  const auto& bq = fam.bq;
  DimVector d{{2, 2}};
  std::mt19937_64 rng(80);
  auto samples = samples_at(fam, d, rng, 30);

  // split sequence
  Representation r0 = kronecker_reg(bq, qs(0)), r1 = kronecker_reg(bq, qs(1));
  {
    Representation mid = direct_sum({r0, r1});
    ShortExact se;
    se.sub = r0;
    se.quot = r1;
    se.mid = mid;
    for (int x = 0; x < 2; ++x) {
      Matrix incl(Q, int(mid.dims[x]), int(r0.dims[x]));
      incl.at(0, 0) = qs(1);
      Matrix proj(Q, int(r1.dims[x]), int(mid.dims[x]));
      proj.at(0, 1) = qs(1);
      se.incl.push_back(incl);
      se.proj.push_back(proj);
    }
    CHECK(mult_check_extension(se, d, samples));
  }

  // non-split: 0 -> R_0 -> R_0^{(2)} -> R_0 -> 0
  {
    Representation mid = tube_module(fam, {"0", 0, 2});
    // the tube construction stacks sub in the first coordinate
    ShortExact se;
    se.sub = r0;
    se.quot = r0;
    se.mid = mid;
    for (int x = 0; x < 2; ++x) {
      Matrix incl(Q, 2, 1);
      incl.at(0, 0) = qs(1);
      Matrix proj(Q, 1, 2);
      proj.at(0, 1) = qs(1);
      se.incl.push_back(incl);
      se.proj.push_back(proj);
    }
    CHECK(mult_check_extension(se, d, samples));
    // and the evaluation really is proportional to (det M(b))^2
    SemiInvariant cmid = semi_invariant(mid, d);
    for (const auto& m : samples) {
      Scalar db = det(m.matrices[1]);
      Scalar lhs = evaluate(cmid, m);
      REQUIRE(lhs.is_zero() == (db * db).is_zero());
    }
  }

  // broken exactness is rejected
  {
    ShortExact bad;
    bad.sub = r0;
    bad.quot = r0;
    bad.mid = direct_sum({r0, r1});
    for (int x = 0; x < 2; ++x) {
      bad.incl.push_back(Matrix(Q, 2, 1));
      bad.proj.push_back(Matrix(Q, 1, 2));
    }
    CHECK_THROWS_AS(mult_check_extension(bad, d, samples), usage_error);
  }
}

TEST_CASE("c_lambda equals the full-turn semi-invariant up to a scalar") {
  const auto& fam = can2222().fam;
  DimVector d = fam.h.scaled(2);
  std::mt19937_64 rng(81);
  // Regular sample points, so that the products are not identically zero.
  std::vector<Representation> regular_pool;
  for (const auto& tb : fam.exceptional)
    for (int i = 0; i < tb.rank; ++i)
      for (int n = 1; n <= 2; ++n) regular_pool.push_back(tube_module(fam, {tb.label, i, n}));
  for (const Scalar& mu : fam.fresh_points(2, {}))
    for (int n = 1; n <= 2; ++n) regular_pool.push_back(tube_module(fam, {mu.str(), 0, n}));
  std::vector<Representation> samples = sums_at(regular_pool, fam.bq, d, 40);
  while (samples.size() < 20)
    samples.push_back(gl_translate(samples[rng() % 5], random_gl(fam.bq, d, rng)));
  DistinguishedTable table = distinguished(fam, d, {});
  for (const auto& tube : fam.exceptional) {
    SemiInvariant turn = semi_invariant(tube_module(fam, {tube.label, 0, tube.rank}), d);
    std::optional<Scalar> ratio;
    for (const auto& m : samples) {
      Scalar lhs = table.point_product(tube.label, m);
      Scalar rhs = evaluate(turn, m);
      REQUIRE(lhs.is_zero() == rhs.is_zero());
      if (lhs.is_zero()) continue;
      Scalar r = lhs / rhs;
      if (!ratio)
        ratio = r;
      else
        REQUIRE(*ratio == r);
    }
    REQUIRE(ratio.has_value());
  }
}

TEST_CASE("presentation-independence up to one scalar") {
  const auto& fam = kron().fam;
  const auto& bq = fam.bq;
  DimVector d{{2, 2}};
  std::mt19937_64 rng(82);
  auto samples = samples_at(fam, d, rng, 20);
  Representation v = kronecker_reg(bq, qs(2));
  SemiInvariant c = semi_invariant(v, d);

  // A second valid presentation: pad both terms with P_2 -> P_2 identity and
  // scale a kernel generator.
  SemiInvariant c2 = c;
  c2.p0_vertices.push_back(1);
  c2.p1_vertices.push_back(1);
  const MorphismSpace& ms11 = bq->space(1, 1);
  REQUIRE(ms11.dim == 1);
  for (auto& row : c2.omega) row.push_back(std::vector<Scalar>(1, Scalar::zero(Q)));
  std::vector<std::vector<Scalar>> last_row;
  const MorphismSpace& ms01 = bq->space(0, 1);
  last_row.push_back(std::vector<Scalar>(std::size_t(ms01.dim), Scalar::zero(Q)));
  last_row.push_back(std::vector<Scalar>(1, qs(1)));
  c2.omega.push_back(last_row);
  // scale the original omega row by 3: corresponds to rescaling P_1
  for (auto& w : c2.omega[0])
    for (auto& entry : w) entry = entry * qs(3);

  std::optional<Scalar> ratio;
  for (const auto& m : samples) {
    Scalar a = evaluate(c, m), b = evaluate(c2, m);
    REQUIRE(a.is_zero() == b.is_zero());
    if (a.is_zero()) continue;
    Scalar r = a / b;
    if (!ratio)
      ratio = r;
    else
      REQUIRE(*ratio == r);
  }
  REQUIRE(ratio.has_value());
}
