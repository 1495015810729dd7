#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algchar/parser.hpp"
#include "helpers.hpp"

using namespace algchar;
using testutil::Rng;

namespace {

// Shared fixture: an algebroid together with a complex carrying a partial
// that admits compatible connections.
struct Space {
  std::shared_ptr<LieAlgebroid> alg;
  std::shared_ptr<SuperComplex> cx;
};

std::vector<Space> corpus_spaces(Field f) {
  std::vector<Space> out;
  {
    auto a = testutil::tangent_r2(f);
    out.push_back({a, testutil::two_term(a->ctx(), 2, 1, {{2, 0}})});
  }
  {
    auto a = testutil::sl2(f);
    out.push_back({a, testutil::two_term(a->ctx(), 1, 1, {{1, 0}})});
  }
  {
    auto a = testutil::nonabelian2(f);
    out.push_back({a, testutil::two_term(a->ctx(), 2, 2, {{2, 0}, {3, 1}})});
  }
  {
    auto a = testutil::cotangent_poisson(f);
    out.push_back({a, testutil::two_term(a->ctx(), 1, 1, {{1, 0}})});
  }
  return out;
}

}  // namespace

TEST_CASE("complex validation") {
  auto ctx = make_context(Field::Q, {});
  auto cx = testutil::two_term(ctx, 2, 1, {{2, 0}});
  CHECK(cx->validate().ok());
  CHECK(cx->parity(0) == 0);
  CHECK(cx->parity(2) == 1);
  // partial^2 != 0 is flagged: super (non Z-graded) complex with both maps.
  Matrix d = Matrix::zero(ctx, 2, 2);
  d.at(0, 1) = RatExpr::one(ctx);
  d.at(1, 0) = RatExpr::one(ctx);
  SuperComplex bad(ctx, {1, 1}, false, d);
  CHECK(!bad.validate().ok());
  // The same matrix is not Z-graded at all.
  SuperComplex bad2(ctx, {1, 1}, true, d);
  CHECK(!bad2.validate().ok());
}

TEST_CASE("curvature fixtures") {
  // Zero connection on an abelian point algebroid is flat.
  auto ab = testutil::abelian(Field::Q, 2);
  auto cx = testutil::two_term(ab->ctx(), 1, 0, {});
  CHECK(curvature(zero_connection(*ab, *cx)).is_zero());

  // Point algebroid [e1,e2]=e2, rank-1 even E, omega1=0, omega2=1:
  // curvature component (1,2) = -1.
  auto na = testutil::nonabelian2(Field::Q);
  auto cx1 = testutil::two_term(na->ctx(), 1, 0, {});
  GConnection c = zero_connection(*na, *cx1);
  c.omega[1].at(0, 0) = RatExpr::one(na->ctx());
  MForm k = curvature(c);
  REQUIRE(k.component({0, 1}) != nullptr);
  CHECK(k.component({0, 1})->at(0, 0) == RatExpr::from_int(na->ctx(), -1));

  // Rank-1 algebroid: no 2-forms at all.
  auto t1 = testutil::tangent_r1(Field::Q);
  auto cxt = testutil::two_term(t1->ctx(), 1, 0, {});
  Rng r(3);
  CHECK(curvature(testutil::random_connection(r, *t1, *cxt, 2)).is_zero());
}

TEST_CASE("matrix form product: associativity and commutator signs") {
  Rng r(7);
  auto sl2 = testutil::sl2(Field::Qi);
  auto cx = testutil::two_term(sl2->ctx(), 1, 1, {{1, 0}});
  for (int it = 0; it < 12; ++it) {
    MForm a = testutil::random_mform(r, *sl2, *cx, r.pick(0, 2), 0);
    MForm b = testutil::random_mform(r, *sl2, *cx, r.pick(0, 2), 0);
    MForm c = testutil::random_mform(r, *sl2, *cx, r.pick(0, 2), 0);
    CHECK((a * b) * c == a * (b * c));
  }
  // Supercommutator from pure pieces: [a, b] = ab - (-1)^{|a||b|} ba.
  for (int it = 0; it < 20; ++it) {
    int da = r.pick(0, 2), db = r.pick(0, 2);
    int pa = r.pick(0, 1), pb = r.pick(0, 1);
    MForm a(sl2.get(), cx.get()), b(sl2.get(), cx.get());
    for (const Tuple& t : increasing_tuples(3, da))
      a.set_component(t, pa ? testutil::random_odd_matrix(r, *cx, 0)
                            : testutil::random_even_matrix(r, *cx, 0));
    for (const Tuple& t : increasing_tuples(3, db))
      b.set_component(t, pb ? testutil::random_odd_matrix(r, *cx, 0)
                            : testutil::random_even_matrix(r, *cx, 0));
    MForm lhs = a.supercommutator(b);
    MForm rhs = ((da + pa) * (db + pb)) % 2 ? a * b + b * a : a * b - b * a;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("supertrace") {
  auto ab = testutil::abelian(Field::Q, 2);
  auto cx = testutil::two_term(ab->ctx(), 2, 3, {});
  // Block-diagonal constant with Tr A = 2, Tr D = 3 has supertrace -1.
  Matrix m = Matrix::zero(ab->ctx(), 5, 5);
  m.at(0, 0) = m.at(1, 1) = RatExpr::one(ab->ctx());
  m.at(2, 2) = m.at(3, 3) = m.at(4, 4) = RatExpr::one(ab->ctx());
  CHECK(cx->supertrace(m) == RatExpr::from_int(ab->ctx(), -1));

  // Tr_s of a supercommutator with partial vanishes; theta wedge theta too.
  Rng r(11);
  auto sl2 = testutil::sl2(Field::Qi);
  auto cx2 = testutil::two_term(sl2->ctx(), 2, 1, {{2, 0}});
  MForm dform = MForm::zero_form(sl2.get(), cx2.get(), cx2->partial());
  for (int it = 0; it < 15; ++it) {
    MForm w = testutil::random_mform(r, *sl2, *cx2, r.pick(0, 2), 0);
    CHECK(supertrace(w.supercommutator(dform)).is_zero());
    CHECK(supertrace(dform.supercommutator(w)).is_zero());
    // Odd-total-degree theta: odd matrices on odd form degree... take
    // degree 1 with odd values, so theta*theta has even parity.
    MForm theta(sl2.get(), cx2.get());
    for (const Tuple& t : increasing_tuples(3, 1))
      theta.set_component(t, testutil::random_odd_matrix(r, *cx2, 0));
    CHECK(supertrace(theta * theta).is_zero());
    // General graded cyclicity through the supercommutator.
    MForm v = testutil::random_mform(r, *sl2, *cx2, r.pick(0, 2), 0);
    CHECK(supertrace(w.supercommutator(v)).is_zero());
  }
}

TEST_CASE("cov_ext_derivative: Bianchi and Leibniz") {
  Rng r(13);
  for (Field f : {Field::Q, Field::Qi}) {
    for (auto& sp : corpus_spaces(f)) {
      for (int it = 0; it < 4; ++it) {
        GConnection c = testutil::random_connection(r, *sp.alg, *sp.cx, 1, f == Field::Qi);
        MForm k = curvature(c);
        CHECK(cov_ext_derivative(c, k).is_zero());  // Bianchi
        // Tr_s intertwines d_nabla and d.
        MForm w = testutil::random_mform(r, *sp.alg, *sp.cx, r.pick(0, 2), 1);
        CHECK(supertrace(cov_ext_derivative(c, w)) ==
              d_algebroid(*sp.alg, supertrace(w)));
        // Graded Leibniz with total degree = form degree + parity.
        MForm ev(sp.alg.get(), sp.cx.get()), od(sp.alg.get(), sp.cx.get());
        int da = r.pick(0, 1), pa = r.pick(0, 1);
        for (const Tuple& t : increasing_tuples(sp.alg->rank(), da))
          ev.set_component(t, pa ? testutil::random_odd_matrix(r, *sp.cx, 1)
                                 : testutil::random_even_matrix(r, *sp.cx, 1));
        MForm x = testutil::random_mform(r, *sp.alg, *sp.cx, r.pick(0, 1), 1);
        MForm lhs = cov_ext_derivative(c, ev * x);
        MForm rhs = cov_ext_derivative(c, ev) * x +
                    ((da + pa) % 2 ? -(ev * cov_ext_derivative(c, x))
                                   : ev * cov_ext_derivative(c, x));
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("zero connection on the abelian point algebroid kills d_nabla") {
  auto ab = testutil::abelian(Field::Q, 3);
  auto cx = testutil::two_term(ab->ctx(), 1, 1, {{1, 0}});
  GConnection c = zero_connection(*ab, *cx);
  Matrix m = Matrix::identity(ab->ctx(), 2);
  CHECK(cov_ext_derivative(c, MForm::zero_form(ab.get(), cx.get(), m)).is_zero());
}

TEST_CASE("apply_equivalence") {
  Rng r(17);
  auto sp = corpus_spaces(Field::Q)[2];  // nonabelian2 with ranks (2,2)
  GConnection c = testutil::random_commuting_connection(r, *sp.alg, *sp.cx, 1);

  // theta = 0 leaves the connection unchanged.
  HomotopyEquivalence zero{MForm(sp.alg.get(), sp.cx.get())};
  CHECK(apply_equivalence(c, zero).omega[0] == c.omega[0]);

  MForm th(sp.alg.get(), sp.cx.get());
  for (int i = 0; i < sp.alg->rank(); ++i)
    th.set_component({i}, testutil::random_odd_matrix(r, *sp.cx, 1));
  HomotopyEquivalence theta{th};
  GConnection c2 = apply_equivalence(c, theta);
  CHECK(c2.validate().ok());  // still a connection on (E, partial)

  // Curvature difference lies in the image of [-, partial].
  MForm diff = curvature(c2) - curvature(c);
  for (auto& [t, m] : diff.components()) {
    auto y = solve_odd_commutator(*sp.cx, m);
    CHECK(y.has_value());
  }

  // Action property: applying theta then theta' equals theta + theta'.
  MForm th2(sp.alg.get(), sp.cx.get());
  for (int i = 0; i < sp.alg->rank(); ++i)
    th2.set_component({i}, testutil::random_odd_matrix(r, *sp.cx, 1));
  HomotopyEquivalence theta2{th2};
  HomotopyEquivalence sum{th + th2};
  GConnection lhs = apply_equivalence(apply_equivalence(c, theta), theta2);
  GConnection rhs = apply_equivalence(c, sum);
  for (int i = 0; i < sp.alg->rank(); ++i)
    CHECK(lhs.omega[(std::size_t)i] == rhs.omega[(std::size_t)i]);

  // Parity violation is rejected.
  MForm bad(sp.alg.get(), sp.cx.get());
  bad.set_component({0}, testutil::random_even_matrix(r, *sp.cx, 0));
  CHECK_THROWS_AS(apply_equivalence(c, HomotopyEquivalence{bad}), ShapeError);
}

TEST_CASE("adjoint connection and metric identity") {
  auto t1 = testutil::tangent_r1(Field::Q);
  auto cx = testutil::two_term(t1->ctx(), 1, 0, {});
  // H = 1 + x^2, omega = (lambda): adjoint is 2x/(1+x^2) - lambda.
  Metric h{cx.get(), Matrix::zero(t1->ctx(), 1, 1)};
  h.h.at(0, 0) = parse_expr("1 + x^2", t1->ctx());
  CHECK(h.validate().ok());
  GConnection c = zero_connection(*t1, *cx);
  c.omega[0].at(0, 0) = parse_expr("5", t1->ctx());
  GConnection ch = adjoint_connection(c, h);
  CHECK(ch.omega[0].at(0, 0) == parse_expr("2*x/(1+x^2) - 5", t1->ctx()));

  // adjoint_partial with the identity metric is the conjugate transpose.
  auto sl2 = testutil::sl2(Field::Qi);
  auto cx2 = testutil::two_term(sl2->ctx(), 2, 1, {{2, 0}});
  Metric id = identity_metric(*cx2);
  CHECK(adjoint_partial(*cx2, id) == cx2->partial().conj_transpose());

  // Skew-hermitian omega with the identity metric is a fixed point.
  Rng r(19);
  GConnection sk = zero_connection(*sl2, *cx2);
  for (int i = 0; i < 3; ++i) {
    Matrix m = testutil::random_even_matrix(r, *cx2, 1);
    sk.omega[(std::size_t)i] = m - m.conj_transpose();
  }
  GConnection skh = adjoint_connection(sk, id);
  for (int i = 0; i < 3; ++i)
    CHECK(skh.omega[(std::size_t)i] == sk.omega[(std::size_t)i]);
}

TEST_CASE("adjoint: defining identity, involution, curvature conjugation") {
  Rng r(23);
  for (auto& sp : corpus_spaces(Field::Qi)) {
    Metric h = testutil::random_metric(r, *sp.cx);
    GConnection c = testutil::random_connection(r, *sp.alg, *sp.cx, 1);
    GConnection ch = adjoint_connection(c, h);

    // L_X h(s,t) = h(nabla_X s, t) + h(s, nabla^h_X t) on basis sections:
    // rho_i(H) = omega_i^* H + H omega_i^h.
    for (int i = 0; i < sp.alg->rank(); ++i) {
      Matrix lhs = sp.alg->apply_anchor(i, h.h);
      Matrix rhs = c.omega[(std::size_t)i].conj_transpose() * h.h +
                   h.h * ch.omega[(std::size_t)i];
      CHECK(lhs == rhs);
    }

    // Double adjoint returns the original connection.
    GConnection chh = adjoint_connection(ch, h);
    for (int i = 0; i < sp.alg->rank(); ++i)
      CHECK(chh.omega[(std::size_t)i] == c.omega[(std::size_t)i]);

    // k_{nabla^h}(X,Y) = -k_nabla(X,Y)^* with the h-twisted adjoint.
    Matrix hinv = mat_inverse(h.h);
    MForm k = curvature(c), kh = curvature(ch);
    for (auto& [t, m] : k.components()) {
      Matrix star = hinv * m.conj_transpose() * h.h;
      CHECK(kh.eval(t) == -star);
    }
  }
}

TEST_CASE("metric connection") {
  Rng r(29);
  // Constant metric gives the zero connection; point algebroids always do.
  auto na = testutil::nonabelian2(Field::Qi);
  auto cx = testutil::two_term(na->ctx(), 2, 1, {{2, 0}});
  Metric h = testutil::random_metric(r, *cx);
  GConnection mc = metric_connection(h, *na, *cx);
  for (auto& w : mc.omega) CHECK(w.is_zero());

  // Self-adjointness for varying metrics over a positive-dimensional base.
  auto t2 = testutil::tangent_r2(Field::Q);
  auto cx2 = testutil::two_term(t2->ctx(), 2, 1, {{2, 0}});
  Matrix hm = Matrix::identity(t2->ctx(), 3);
  hm.at(0, 0) = parse_expr("1 + x^2", t2->ctx());
  hm.at(2, 2) = parse_expr("1 + y^4", t2->ctx());
  Metric h2{cx2.get(), hm};
  REQUIRE(h2.validate().ok());
  GConnection mc2 = metric_connection(h2, *t2, *cx2);
  GConnection mc2h = adjoint_connection(mc2, h2);
  for (int i = 0; i < 2; ++i)
    CHECK(mc2h.omega[(std::size_t)i] == mc2.omega[(std::size_t)i]);
}

TEST_CASE("flat_up_to_homotopy") {
  Rng r(31);
  auto na = testutil::nonabelian2(Field::Q);
  auto cx = testutil::two_term(na->ctx(), 1, 1, {{1, 0}});

  // A flat connection admits eta = 0 (free unknowns are zeroed).
  GConnection flat = zero_connection(*na, *cx);
  flat.commutes_with_partial = true;
  auto eta = flat_up_to_homotopy(flat);
  REQUIRE(eta.has_value());
  CHECK(eta->is_zero());

  // partial = 0 with nonzero curvature is unsolvable.
  auto cx0 = testutil::two_term(na->ctx(), 1, 1, {});
  GConnection c0 = zero_connection(*na, *cx0);
  c0.commutes_with_partial = true;
  c0.omega[1] = Matrix::identity(na->ctx(), 2);
  CHECK(!curvature(c0).is_zero());
  CHECK(!flat_up_to_homotopy(c0).has_value());

  // Solvable case: block-scalar connections on an acyclic complex.
  GConnection c = testutil::random_commuting_connection(r, *na, *cx, 0);
  auto eta2 = flat_up_to_homotopy(c);
  REQUIRE(eta2.has_value());
  MForm k = curvature(c);
  const Matrix& partial = cx->partial();
  for (auto& [t, m] : k.components()) {
    Matrix y = eta2->eval(t);
    CHECK(y * partial + partial * y == m);
    CHECK(cx->is_odd(y));
  }
}

TEST_CASE("connect_by_theta links commuting connections") {
  Rng r(37);
  auto sl2 = testutil::sl2(Field::Q);
  auto cx = testutil::two_term(sl2->ctx(), 2, 2, {{2, 0}, {3, 1}});
  GConnection a = testutil::random_commuting_connection(r, *sl2, *cx, 0);
  GConnection b = testutil::random_commuting_connection(r, *sl2, *cx, 0);
  auto th = connect_by_theta(a, b);
  REQUIRE(th.has_value());
  GConnection b2 = apply_equivalence(a, *th);
  for (int i = 0; i < 3; ++i)
    CHECK(b2.omega[(std::size_t)i] == b.omega[(std::size_t)i]);
}
