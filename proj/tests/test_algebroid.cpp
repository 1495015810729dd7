#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algchar/parser.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace algchar;
using testutil::Rng;

TEST_CASE("validate: corpus algebroids pass") {
  CHECK(testutil::tangent_r2(Field::Q)->validated());
  CHECK(testutil::sl2(Field::Q)->validated());
  CHECK(testutil::nonabelian2(Field::Q)->validated());
  CHECK(testutil::cotangent_poisson(Field::Q)->validated());
  CHECK(testutil::gl2(Field::Q)->validated());
}

TEST_CASE("validate: violations are reported") {
  auto ctx = make_context(Field::Q, {});
  Matrix anchor(ctx, 2, 0);
  // Nonzero diagonal structure entry breaks antisymmetry.
  {
    std::vector<std::tuple<int, int, int, RatExpr>> c{
        {0, 0, 1, RatExpr::one(ctx)}};
    LieAlgebroid a(ctx, 2, anchor, c);
    auto rep = a.validate();
    CHECK(!rep.ok());
    CHECK(!a.validated());
  }
  // Conflicting mirror entries.
  {
    std::vector<std::tuple<int, int, int, RatExpr>> c{
        {0, 1, 0, RatExpr::one(ctx)}, {1, 0, 0, RatExpr::one(ctx)}};
    LieAlgebroid a(ctx, 2, anchor, c);
    CHECK(!a.validate().ok());
  }
  // Jacobi violation: rank 3 with [e1,e2]=e3, [e1,e3]=e1 and [e2,e3]=e2
  // has a nonzero cyclic sum.
  {
    Matrix anchor3(ctx, 3, 0);
    std::vector<std::tuple<int, int, int, RatExpr>> c{
        {0, 1, 2, RatExpr::one(ctx)},
        {0, 2, 0, RatExpr::one(ctx)},
        {1, 2, 1, RatExpr::one(ctx)}};
    LieAlgebroid a(ctx, 3, anchor3, c);
    auto rep = a.validate();
    CHECK(!rep.ok());
  }
  // Anchor-bracket incompatibility: abelian structure with noncommuting
  // anchor fields.
  {
    auto cctx = make_context(Field::Q, {"x"});
    Matrix anchor2(cctx, 2, 1);
    anchor2.at(0, 0) = parse_expr("1", cctx);
    anchor2.at(1, 0) = parse_expr("x", cctx);
    LieAlgebroid a(cctx, 2, anchor2, {});
    CHECK(!a.validate().ok());
  }
}

TEST_CASE("bracket") {
  auto sl2 = testutil::sl2(Field::Q);
  auto basis = [&](int i) {
    Section s{sl2.get(),
              std::vector<RatExpr>(3, RatExpr(sl2->ctx()))};
    s.coeffs[(std::size_t)i] = RatExpr::one(sl2->ctx());
    return s;
  };
  Section he = bracket(*sl2, basis(0), basis(1));
  CHECK(he.coeffs[1] == RatExpr::from_int(sl2->ctx(), 2));  // [H,E] = 2E
  Section ef = bracket(*sl2, basis(1), basis(2));
  CHECK(ef.coeffs[0] == RatExpr::one(sl2->ctx()));  // [E,F] = H

  // Tangent line: [x d/dx, d/dx] = -d/dx.
  auto t1 = testutil::tangent_r1(Field::Q);
  Section xdx{t1.get(), {parse_expr("x", t1->ctx())}};
  Section dx{t1.get(), {RatExpr::one(t1->ctx())}};
  Section br = bracket(*t1, xdx, dx);
  CHECK(br.coeffs[0] == parse_expr("-1", t1->ctx()));

  // Antisymmetry on random sections.
  Rng r(5);
  auto cp = testutil::cotangent_poisson(Field::Q);
  for (int it = 0; it < 20; ++it) {
    Section s{cp.get(),
              {RatExpr(testutil::random_poly(r, cp->ctx(), 2)),
               RatExpr(testutil::random_poly(r, cp->ctx(), 2))}};
    Section ss = bracket(*cp, s, s);
    for (auto& c : ss.coeffs) CHECK(c.is_zero());
    Section t{cp.get(),
              {RatExpr(testutil::random_poly(r, cp->ctx(), 2)),
               RatExpr(testutil::random_poly(r, cp->ctx(), 2))}};
    Section st = bracket(*cp, s, t);
    Section ts = bracket(*cp, t, s);
    for (int k = 0; k < 2; ++k)
      CHECK(st.coeffs[(std::size_t)k] == -ts.coeffs[(std::size_t)k]);
  }
}

TEST_CASE("differential: fixtures") {
  auto t1 = testutil::tangent_r1(Field::Q);
  GForm f = GForm::function(t1.get(), parse_expr("x^2", t1->ctx()));
  GForm df = d_algebroid(*t1, f);
  CHECK(df.degree() == 1);
  CHECK(*df.component({0}) == parse_expr("2*x", t1->ctx()));

  // Point algebroid [e1,e2] = e2: d of the e2-dual has component (1,2) = -1.
  auto na = testutil::nonabelian2(Field::Q);
  GForm eps2(na.get());
  eps2.set_component({1}, RatExpr::one(na->ctx()));
  GForm d2 = d_algebroid(*na, eps2);
  CHECK(*d2.component({0, 1}) == RatExpr::from_int(na->ctx(), -1));
  // And the e1-dual is closed.
  GForm eps1(na.get());
  eps1.set_component({0}, RatExpr::one(na->ctx()));
  CHECK(d_algebroid(*na, eps1).is_zero());
}

TEST_CASE("differential: d of d vanishes on the corpus") {
  Rng r(29);
  for (auto alg : {testutil::tangent_r2(Field::Q), testutil::sl2(Field::Q),
                   testutil::nonabelian2(Field::Q),
                   testutil::cotangent_poisson(Field::Q), testutil::gl2(Field::Q)}) {
    for (int it = 0; it < 12; ++it) {
      int deg = r.pick(0, std::min(2, alg->rank()));
      GForm w = testutil::random_gform(r, *alg, deg, 2);
      CHECK(d_algebroid(*alg, d_algebroid(*alg, w)).is_zero());
    }
  }
}

TEST_CASE("differential requires validation") {
  auto ctx = make_context(Field::Q, {});
  Matrix anchor(ctx, 2, 0);
  std::vector<std::tuple<int, int, int, RatExpr>> c{{0, 0, 1, RatExpr::one(ctx)}};
  LieAlgebroid bad(ctx, 2, anchor, c);
  bad.validate();
  GForm w(&bad);
  w.set_component({0}, RatExpr::one(ctx));
  CHECK_THROWS_AS(d_algebroid(bad, w), ShapeError);
}

TEST_CASE("wedge") {
  auto sl2 = testutil::sl2(Field::Q);
  GForm one = GForm::function(sl2.get(), RatExpr::one(sl2->ctx()));
  Rng r(37);
  GForm w = testutil::random_gform(r, *sl2, 2, 0);
  CHECK(wedge(one, w) == w);

  GForm e1(sl2.get()), e2(sl2.get());
  e1.set_component({0}, RatExpr::one(sl2->ctx()));
  e2.set_component({1}, RatExpr::one(sl2->ctx()));
  GForm w12 = wedge(e1, e2);
  CHECK(*w12.component({0, 1}) == RatExpr::one(sl2->ctx()));
  CHECK(wedge(e2, e1) == -w12);

  for (int it = 0; it < 20; ++it) {
    int da = r.pick(0, 2), db = r.pick(0, 2), dc = r.pick(0, 2);
    GForm a = testutil::random_gform(r, *sl2, da, 0);
    GForm b = testutil::random_gform(r, *sl2, db, 0);
    GForm c = testutil::random_gform(r, *sl2, dc, 0);
    CHECK(wedge(a, wedge(b, c)) == wedge(wedge(a, b), c));
    GForm ab = wedge(a, b), ba = wedge(b, a);
    CHECK(ab == ((da * db) % 2 ? -ba : ba));
  }
}

TEST_CASE("graded Leibniz rule for d") {
  Rng r(41);
  for (auto alg : {testutil::sl2(Field::Q), testutil::cotangent_poisson(Field::Q)}) {
    for (int it = 0; it < 15; ++it) {
      int da = r.pick(0, 2), db = r.pick(0, 2);
      GForm a = testutil::random_gform(r, *alg, da, 2);
      GForm b = testutil::random_gform(r, *alg, db, 2);
      GForm lhs = d_algebroid(*alg, wedge(a, b));
      GForm rhs = wedge(d_algebroid(*alg, a), b) +
                  (da % 2 ? -wedge(a, d_algebroid(*alg, b))
                          : wedge(a, d_algebroid(*alg, b)));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("tangent algebroid d agrees with the coordinate de Rham oracle") {
  auto t2 = testutil::tangent_r2(Field::Q);
  Rng r(43);
  for (int it = 0; it < 25; ++it) {
    GForm w = testutil::random_gform(r, *t2, r.pick(0, 2), 3);
    CHECK(d_algebroid(*t2, w) == oracle::de_rham(*t2, w));
  }
}
