#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algchar/linalg.hpp"
#include "algchar/parser.hpp"
#include "algchar/simplex.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace algchar;
using testutil::Rng;

TEST_CASE("parse: zero and canonical polynomials") {
  auto ctx = make_context(Field::Q, {"x", "y"});
  CHECK(parse_expr("0", ctx).is_zero());
  RatExpr e = parse_expr("x^2*y + 1/2", ctx);
  RatExpr built = RatExpr::variable(ctx, 0).pow(2) * RatExpr::variable(ctx, 1) +
                  RatExpr::constant(ctx, Scalar::rational(Field::Q, 1, 2));
  CHECK(e == built);
  CHECK(e.str() == "x^2*y + 1/2");
}

TEST_CASE("parse: errors carry positions") {
  auto ctx = make_context(Field::Q, {"x"});
  CHECK_THROWS_AS(parse_expr("1/(x - x)", ctx), MathError);
  CHECK_THROWS_AS(parse_expr("x + ", ctx), ParseError);
  CHECK_THROWS_AS(parse_expr("x + z", ctx), ParseError);
  try {
    parse_expr("x + z", ctx);
  } catch (const ParseError& e) {
    CHECK(e.pos == 4);
  }
  CHECK_THROWS_AS(parse_expr("x^-2", ctx), ParseError);
  CHECK_THROWS_AS(parse_expr("i", ctx), ParseError);  // undeclared over Q
  auto ctxi = make_context(Field::Qi, {"x"});
  CHECK(parse_expr("i^2", ctxi) == RatExpr::from_int(ctxi, -1));
}

TEST_CASE("parse/print round trip is a fixpoint") {
  auto ctx = make_context(Field::Qi, {"x", "y"});
  std::vector<std::string> fixtures = {
      "0",
      "1/2",
      "x^2*y + 1/2",
      "-x + 3",
      "(x + 1)/(x - 1)",
      "(2 - 3*i)*x^2 + i*y",
      "1/(x^2 + 1)",
      "x*y*x*y",
      "-(x - y)^3",
  };
  for (auto& s : fixtures) {
    RatExpr e = parse_expr(s, ctx);
    CHECK(parse_expr(e.str(), ctx) == e);
    // And printing is stable.
    CHECK(parse_expr(e.str(), ctx).str() == e.str());
  }
  Rng r(7);
  for (int it = 0; it < 60; ++it) {
    RatExpr e = testutil::random_ratexpr(r, ctx, 3, true);
    CHECK(parse_expr(e.str(), ctx) == e);
  }
}

TEST_CASE("differentiate") {
  auto ctx = make_context(Field::Q, {"x", "y"});
  CHECK(parse_expr("x^2*y", ctx).derivative(0) == parse_expr("2*x*y", ctx));
  CHECK(parse_expr("x^2", ctx).derivative(1).is_zero());
  CHECK(parse_expr("1/x", ctx).derivative(0) == parse_expr("-1/x^2", ctx));

  Rng r(11);
  for (int it = 0; it < 40; ++it) {
    RatExpr f = testutil::random_ratexpr(r, ctx, 3, true);
    RatExpr g = testutil::random_ratexpr(r, ctx, 3, true);
    int v = r.pick(0, 1);
    CHECK((f * g).derivative(v) ==
          f.derivative(v) * g + f * g.derivative(v));  // Leibniz
  }
}

TEST_CASE("conjugate") {
  auto ctx = make_context(Field::Qi, {"x"});
  CHECK(parse_expr("3 + 2*i", ctx).conj() == parse_expr("3 - 2*i", ctx));
  auto ctxq = make_context(Field::Q, {"x"});
  RatExpr x2 = parse_expr("x^2", ctxq);
  CHECK(x2.conj() == x2);
  Rng r(13);
  for (int it = 0; it < 30; ++it) {
    RatExpr f = testutil::random_ratexpr(r, ctx, 3, true);
    CHECK(f.conj().conj() == f);
  }
}

TEST_CASE("ring axioms on random rational functions") {
  auto ctx = make_context(Field::Qi, {"x", "y"});
  Rng r(17);
  for (int it = 0; it < 50; ++it) {
    RatExpr a = testutil::random_ratexpr(r, ctx, 2, true);
    RatExpr b = testutil::random_ratexpr(r, ctx, 2, true);
    RatExpr c = testutil::random_ratexpr(r, ctx, 2, true);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == RatExpr::zero(ctx));
    if (!b.is_zero()) CHECK(a / b * b == a);
  }
}

TEST_CASE("mat_inverse") {
  auto ctx = make_context(Field::Q, {"x"});
  Matrix id3 = Matrix::identity(ctx, 3);
  CHECK(mat_inverse(id3) == id3);

  Matrix m(ctx, 2, 2);
  m.at(0, 0) = parse_expr("x", ctx);
  m.at(1, 1) = RatExpr::one(ctx);
  Matrix inv = mat_inverse(m);
  CHECK(inv.at(0, 0) == parse_expr("1/x", ctx));
  CHECK(inv.at(1, 1) == RatExpr::one(ctx));
  CHECK(inv.at(0, 1).is_zero());

  Matrix sing(ctx, 2, 2);
  sing.at(0, 0) = sing.at(0, 1) = sing.at(1, 0) = sing.at(1, 1) = RatExpr::one(ctx);
  CHECK_THROWS_AS(mat_inverse(sing), MathError);
  CHECK(determinant(sing).is_zero());

  Rng r(23);
  auto ctx2 = make_context(Field::Qi, {"x", "y"});
  int done = 0;
  while (done < 12) {
    Matrix a = testutil::random_matrix(r, ctx2, 3, 3, 2);
    if (determinant(a).is_zero()) continue;
    Matrix ainv = mat_inverse(a);
    CHECK(a * ainv == Matrix::identity(ctx2, 3));
    CHECK(ainv * a == Matrix::identity(ctx2, 3));
    ++done;
  }
}

TEST_CASE("bareiss solve and nullspace") {
  auto ctx = make_context(Field::Q, {"x"});
  // Singular but consistent system.
  Matrix a(ctx, 2, 3);
  a.at(0, 0) = RatExpr::one(ctx);
  a.at(0, 1) = RatExpr::one(ctx);
  a.at(1, 2) = parse_expr("x", ctx);
  Matrix b(ctx, 2, 1);
  b.at(0, 0) = parse_expr("2", ctx);
  b.at(1, 0) = parse_expr("x^2", ctx);
  auto x = solve_linear(a, b);
  REQUIRE(x.has_value());
  CHECK(a * *x == b);
  CHECK(rank(a) == 2);
  CHECK(nullspace(a).size() == 1);

  // Inconsistent.
  Matrix a2(ctx, 2, 1);
  a2.at(0, 0) = RatExpr::one(ctx);
  a2.at(1, 0) = RatExpr::one(ctx);
  Matrix b2(ctx, 2, 1);
  b2.at(0, 0) = RatExpr::one(ctx);
  b2.at(1, 0) = parse_expr("2", ctx);
  CHECK(!solve_linear(a2, b2).has_value());
}

TEST_CASE("simplex integration: fixtures") {
  auto ctx = make_context(Field::Q, {"x"}, 3);
  CHECK(simplex_integrate(RatExpr::one(ctx), 2) ==
        RatExpr::constant(ctx, Scalar::rational(Field::Q, 1, 2)));
  RatExpr t1t2 = parse_expr("t1*t2", ctx);
  CHECK(simplex_integrate(t1t2, 2) ==
        RatExpr::constant(ctx, Scalar::rational(Field::Q, 1, 24)));
  CHECK(simplex_integrate(RatExpr::one(ctx), 0) == RatExpr::one(ctx));
  // Chart-variable coefficients ride along.
  RatExpr f = parse_expr("x*t1", ctx);
  CHECK(simplex_integrate(f, 1) == parse_expr("x/2", ctx));
  // t beyond the simplex dimension is an error.
  CHECK_THROWS_AS(simplex_integrate(parse_expr("t3", ctx), 2), MathError);
  CHECK_THROWS_AS(simplex_integrate(RatExpr::one(ctx), -1), MathError);
}

TEST_CASE("simplex integration agrees with iterated integration") {
  auto ctx = make_context(Field::Q, {}, 3);
  for (int k = 0; k <= 3; ++k) {
    // All monomials of total degree <= 6 in t_1..t_k.
    std::vector<Exps> monos;
    Exps cur((std::size_t)ctx->size(), 0);
    std::function<void(int, int)> rec = [&](int var, int left) {
      if (var == k) {
        monos.push_back(cur);
        return;
      }
      for (int e = 0; e <= left; ++e) {
        cur[(std::size_t)var] = (std::uint16_t)e;
        rec(var + 1, left - e);
      }
      cur[(std::size_t)var] = 0;
    };
    rec(0, 6);
    for (auto& e : monos) {
      Poly mono = Poly::monomial(ctx, e, Scalar::integer(Field::Q, 1));
      CHECK(simplex_integrate(RatExpr(mono), k) ==
            oracle::simplex_integral_iterated(mono, k));
    }
  }
}

TEST_CASE("polynomial gcd and exact division") {
  auto ctx = make_context(Field::Q, {"x", "y"});
  Rng r(31);
  for (int it = 0; it < 25; ++it) {
    Poly a = testutil::random_poly(r, ctx, 2);
    Poly b = testutil::random_poly(r, ctx, 2);
    Poly g = testutil::random_poly(r, ctx, 2);
    if (g.is_zero()) continue;
    Poly ag = a * g, bg = b * g;
    Poly d = Poly::gcd(ag, bg);
    // gcd divides both and is divisible by g (up to unit).
    CHECK(ag.divide_exact(d).has_value());
    CHECK(bg.divide_exact(d).has_value());
    if (!a.is_zero() && !b.is_zero()) CHECK(d.divide_exact(Poly::gcd(g, d)).has_value());
  }
}
