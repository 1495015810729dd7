#pragma once

// Shared fixtures: the corpus of algebroids the suites run over, and seeded
// random generators for properties that must hold on arbitrary inputs.

#include <memory>
#include <random>

#include "algchar/linalg.hpp"
#include "algchar/superbundle.hpp"

namespace testutil {

using namespace algchar;

struct Rng {
  std::mt19937_64 g;
  explicit Rng(unsigned long seed) : g(seed) {}
  int pick(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(g);
  }
};

inline Scalar random_scalar(Rng& r, Field f, bool allow_imag = true) {
  BigRat re(r.pick(-4, 4), r.pick(1, 3));
  if (f == Field::Qi && allow_imag && r.pick(0, 2) == 0)
    return Scalar(f, re, BigRat(r.pick(-3, 3)));
  return Scalar(f, re);
}

inline Poly random_poly(Rng& r, const CtxPtr& ctx, int max_deg,
                        bool allow_imag = true) {
  Poly p(ctx);
  int terms = r.pick(1, 3);
  for (int t = 0; t < terms; ++t) {
    Exps e((std::size_t)ctx->size(), 0);
    int deg = r.pick(0, max_deg);
    for (int d = 0; d < deg; ++d) {
      if (ctx->n_chart() == 0) break;
      e[(std::size_t)r.pick(0, ctx->n_chart() - 1)] += 1;
    }
    p += Poly::monomial(ctx, e, random_scalar(r, ctx->field(), allow_imag));
  }
  return p;
}

inline RatExpr random_ratexpr(Rng& r, const CtxPtr& ctx, int max_deg,
                              bool allow_den = false) {
  Poly num = random_poly(r, ctx, max_deg);
  if (!allow_den || ctx->n_chart() == 0) return RatExpr(num);
  Poly den = Poly::variable(ctx, 0) * Poly::variable(ctx, 0) +
             Poly::from_int(ctx, r.pick(1, 3));
  return r.pick(0, 1) ? RatExpr(num, den) : RatExpr(num);
}

inline Matrix random_matrix(Rng& r, const CtxPtr& ctx, int rows, int cols,
                            int max_deg, bool allow_imag = true) {
  Matrix m(ctx, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m.at(i, j) = RatExpr(random_poly(r, ctx, max_deg, allow_imag));
  return m;
}

// ---------------------------------------------------------------------------
// Corpus algebroids.  All are validated before being returned.

inline std::shared_ptr<LieAlgebroid> finish(std::shared_ptr<LieAlgebroid> a) {
  auto rep = a->validate();
  if (!rep.ok()) throw Error("corpus algebroid invalid: " + rep.summary());
  return a;
}

inline std::shared_ptr<LieAlgebroid> tangent_r2(Field f) {
  auto ctx = make_context(f, {"x", "y"});
  Matrix anchor = Matrix::identity(ctx, 2);
  return finish(std::make_shared<LieAlgebroid>(ctx, 2, anchor,
                                               std::vector<std::tuple<int, int, int, RatExpr>>{}));
}

inline std::shared_ptr<LieAlgebroid> tangent_r1(Field f) {
  auto ctx = make_context(f, {"x"});
  Matrix anchor = Matrix::identity(ctx, 1);
  return finish(std::make_shared<LieAlgebroid>(ctx, 1, anchor,
                                               std::vector<std::tuple<int, int, int, RatExpr>>{}));
}

// sl2 with basis H, E, F: [H,E] = 2E, [H,F] = -2F, [E,F] = H.
inline std::shared_ptr<LieAlgebroid> sl2(Field f) {
  auto ctx = make_context(f, {});
  Matrix anchor(ctx, 3, 0);
  std::vector<std::tuple<int, int, int, RatExpr>> c{
      {0, 1, 1, RatExpr::from_int(ctx, 2)},
      {0, 2, 2, RatExpr::from_int(ctx, -2)},
      {1, 2, 0, RatExpr::one(ctx)}};
  return finish(std::make_shared<LieAlgebroid>(ctx, 3, anchor, c));
}

// Two-dimensional nonabelian Lie algebra [e1, e2] = e2.
inline std::shared_ptr<LieAlgebroid> nonabelian2(Field f) {
  auto ctx = make_context(f, {});
  Matrix anchor(ctx, 2, 0);
  std::vector<std::tuple<int, int, int, RatExpr>> c{
      {0, 1, 1, RatExpr::one(ctx)}};
  return finish(std::make_shared<LieAlgebroid>(ctx, 2, anchor, c));
}

// Cotangent algebroid of the Poisson structure pi = y dx ^ dy on R^2:
// rho(dx) = y d/dy, rho(dy) = -y d/dx, [dx, dy] = dy.
inline std::shared_ptr<LieAlgebroid> cotangent_poisson(Field f) {
  auto ctx = make_context(f, {"x", "y"});
  Matrix anchor(ctx, 2, 2);
  anchor.at(0, 1) = RatExpr::variable(ctx, 1);
  anchor.at(1, 0) = -RatExpr::variable(ctx, 1);
  std::vector<std::tuple<int, int, int, RatExpr>> c{
      {0, 1, 1, RatExpr::one(ctx)}};
  return finish(std::make_shared<LieAlgebroid>(ctx, 2, anchor, c));
}

inline std::shared_ptr<LieAlgebroid> abelian(Field f, int n) {
  auto ctx = make_context(f, {});
  Matrix anchor(ctx, n, 0);
  return finish(std::make_shared<LieAlgebroid>(ctx, n, anchor,
                                               std::vector<std::tuple<int, int, int, RatExpr>>{}));
}

// gl2 with basis E11, E12, E21, E22; rank 4 gives nontrivial ch_2.
inline std::shared_ptr<LieAlgebroid> gl2(Field f) {
  auto ctx = make_context(f, {});
  Matrix anchor(ctx, 4, 0);
  auto idx = [](int a, int b) { return 2 * a + b; };  // E_{a b}, 0-based
  std::vector<std::tuple<int, int, int, RatExpr>> c;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) {
          int i = idx(a, b), j = idx(p, q);
          if (i >= j) continue;
          // [E_ab, E_pq] = delta_bp E_aq - delta_qa E_pb.
          if (b == p) c.emplace_back(i, j, idx(a, q), RatExpr::one(ctx));
          if (q == a) c.emplace_back(i, j, idx(p, b), RatExpr::from_int(ctx, -1));
        }
  return finish(std::make_shared<LieAlgebroid>(ctx, 4, anchor, c));
}

// ---------------------------------------------------------------------------
// Complexes and connections.

// Z-graded two-term complex with ranks (r0, r1) and a constant partial.
inline std::shared_ptr<SuperComplex> two_term(const CtxPtr& ctx, int r0, int r1,
                                              const std::vector<std::pair<int, int>>& ones) {
  Matrix d = Matrix::zero(ctx, r0 + r1, r0 + r1);
  for (auto& [r, c] : ones) d.at(r, c) = RatExpr::one(ctx);
  return std::make_shared<SuperComplex>(ctx, std::vector<int>{r0, r1}, true, d);
}

inline GForm random_gform(Rng& r, const LieAlgebroid& a, int degree, int deg) {
  GForm w(&a);
  for (const Tuple& t : increasing_tuples(a.rank(), degree))
    if (r.pick(0, 2) > 0) w.set_component(t, RatExpr(random_poly(r, a.ctx(), deg)));
  return w;
}

inline Matrix random_even_matrix(Rng& r, const SuperComplex& cx, int deg,
                                 bool allow_imag = true) {
  Matrix m = random_matrix(r, cx.ctx(), cx.total_rank(), cx.total_rank(), deg,
                           allow_imag);
  return cx.even_part(m);
}

inline Matrix random_odd_matrix(Rng& r, const SuperComplex& cx, int deg,
                                bool allow_imag = true) {
  Matrix m = random_matrix(r, cx.ctx(), cx.total_rank(), cx.total_rank(), deg,
                           allow_imag);
  return cx.odd_part(m);
}

inline MForm random_mform(Rng& r, const LieAlgebroid& a, const SuperComplex& cx,
                          int degree, int deg) {
  MForm w(&a, &cx);
  for (const Tuple& t : increasing_tuples(a.rank(), degree))
    if (r.pick(0, 2) > 0)
      w.set_component(t, random_matrix(r, a.ctx(), cx.total_rank(),
                                       cx.total_rank(), deg));
  return w;
}

// Random grading-preserving connection (no compatibility with partial).
inline GConnection random_connection(Rng& r, const LieAlgebroid& a,
                                     const SuperComplex& cx, int deg,
                                     bool allow_imag = true) {
  GConnection c = zero_connection(a, cx);
  for (int i = 0; i < a.rank(); ++i)
    c.omega[(std::size_t)i] = random_even_matrix(r, cx, deg, allow_imag);
  return c;
}

// Random connection commuting with partial: solves the affine constraint
// [omega_i, partial] = -rho_i(partial) and adds a random kernel element.
inline GConnection random_commuting_connection(Rng& r, const LieAlgebroid& a,
                                               const SuperComplex& cx, int deg) {
  CtxPtr ctx = a.ctx();
  int n = cx.total_rank();
  std::vector<std::pair<int, int>> even_slots, odd_slots;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      (cx.parity(i) == cx.parity(j) ? even_slots : odd_slots).push_back({i, j});
  // Columns: even unknowns; rows: odd entries of [X, partial].
  Matrix A = Matrix::zero(ctx, (int)odd_slots.size(), (int)even_slots.size());
  const Matrix& d = cx.partial();
  for (int c = 0; c < (int)even_slots.size(); ++c) {
    auto [xi, xj] = even_slots[(std::size_t)c];
    for (int e = 0; e < (int)odd_slots.size(); ++e) {
      auto [r0, c0] = odd_slots[(std::size_t)e];
      RatExpr v(ctx);
      if (xi == r0) v += d.at(xj, c0);
      if (xj == c0) v -= d.at(r0, xi);
      A.at(e, c) = v;
    }
  }
  auto kernel = nullspace(A);
  GConnection conn = zero_connection(a, cx);
  for (int i = 0; i < a.rank(); ++i) {
    Matrix rhs = Matrix::zero(ctx, (int)odd_slots.size(), 1);
    Matrix target = -a.apply_anchor(i, d);
    for (int e = 0; e < (int)odd_slots.size(); ++e)
      rhs.at(e, 0) = target.at(odd_slots[(std::size_t)e].first,
                               odd_slots[(std::size_t)e].second);
    auto x = solve_linear(A, rhs);
    if (!x) throw Error("corpus complex admits no compatible connection");
    Matrix coeffs = *x;
    for (auto& kvec : kernel) {
      Scalar s = random_scalar(r, ctx->field(), false);
      Poly sp = random_poly(r, ctx, deg, false);
      for (int c = 0; c < coeffs.rows(); ++c)
        coeffs.at(c, 0) += kvec.at(c, 0) * RatExpr(sp).scaled(s);
    }
    Matrix w = Matrix::zero(ctx, n, n);
    for (int c = 0; c < (int)even_slots.size(); ++c)
      w.at(even_slots[(std::size_t)c].first, even_slots[(std::size_t)c].second) =
          coeffs.at(c, 0);
    conn.omega[(std::size_t)i] = std::move(w);
  }
  conn.commutes_with_partial = true;
  auto rep = conn.validate();
  if (!rep.ok()) throw Error("random commuting connection invalid: " + rep.summary());
  return conn;
}

// Random hermitian grading-preserving metric (not necessarily positive, but
// invertible), built as I + small hermitian perturbation.
inline Metric random_metric(Rng& r, const SuperComplex& cx) {
  CtxPtr ctx = cx.ctx();
  int n = cx.total_rank();
  Matrix h = Matrix::identity(ctx, n).scaled(Scalar::integer(ctx->field(), 8));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (cx.zdeg(i) != cx.zdeg(j)) continue;
      if (i == j) {
        h.at(i, i) += RatExpr::from_int(ctx, r.pick(0, 3));
      } else {
        Scalar s = random_scalar(r, ctx->field());
        h.at(i, j) += RatExpr::constant(ctx, s);
        h.at(j, i) += RatExpr::constant(ctx, s.conj());
      }
    }
  Metric m{&cx, std::move(h)};
  if (determinant(m.h).is_zero()) return random_metric(r, cx);  // retry
  return m;
}

}  // namespace testutil
