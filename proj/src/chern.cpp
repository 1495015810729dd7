#include "algchar/chern.hpp"

namespace algchar {

RatExpr SimplexExtension::lift(const RatExpr& f) const {
  std::vector<int> map((std::size_t)base->ctx()->size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = (int)i;
  return f.with_context(ext_ctx, map);
}

Matrix SimplexExtension::lift(const Matrix& m) const {
  Matrix out(ext_ctx, m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.at(r, c) = lift(m.at(r, c));
  return out;
}

RatExpr SimplexExtension::t_var(int a) const {
  return RatExpr::variable(ext_ctx, ext_ctx->n_chart() + a);
}

RatExpr SimplexExtension::to_base(const RatExpr& f) const {
  std::vector<int> map((std::size_t)base->ctx()->size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = (int)i;
  return f.drop_to_context(base->ctx(), map);
}

SimplexExtension make_extension(const LieAlgebroid& base, const SuperComplex& cx,
                                int k) {
  base.require_validated();
  require(base.ctx()->n_simplex() == 0, "base already carries simplex variables");
  SimplexExtension ext;
  ext.k = k;
  ext.base = &base;
  ext.base_cx = &cx;
  ext.ext_ctx = make_context(base.field(), base.ctx()->names(), k);

  int n = base.rank(), m = base.dim_m();
  Matrix anchor = Matrix::zero(ext.ext_ctx, n + k, m + k);
  for (int a = 0; a < k; ++a) anchor.at(a, m + a) = RatExpr::one(ext.ext_ctx);
  for (int i = 0; i < n; ++i)
    for (int mu = 0; mu < m; ++mu)
      anchor.at(k + i, mu) = ext.lift(base.anchor().at(i, mu));

  std::vector<std::tuple<int, int, int, RatExpr>> triples;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto cij = base.bracket_coeffs(i, j);
      for (int t = 0; t < n; ++t)
        if (!cij[(std::size_t)t].is_zero())
          triples.emplace_back(k + i, k + j, k + t, ext.lift(cij[(std::size_t)t]));
    }
  ext.alg = std::make_shared<LieAlgebroid>(ext.ext_ctx, n + k, std::move(anchor),
                                           triples);
  ext.alg->mark_validated();

  ext.cx = std::make_shared<SuperComplex>(ext.ext_ctx, cx.ranks(), cx.z_graded(),
                                          ext.lift(cx.partial()));
  return ext;
}

GConnection affine_connection(const SimplexExtension& ext,
                              const std::vector<const GConnection*>& conns) {
  require(!conns.empty(), "affine combination needs at least one connection");
  require((int)conns.size() == ext.k + 1,
          "affine combination arity does not match the simplex dimension");
  for (auto* c : conns)
    require(c->alg == ext.base && c->cx == ext.base_cx,
            "affine combination inputs over different spaces");

  GConnection out = zero_connection(*ext.alg, *ext.cx);
  RatExpr w0 = RatExpr::one(ext.ext_ctx);
  for (int a = 0; a < ext.k; ++a) w0 -= ext.t_var(a);
  for (int i = 0; i < ext.base->rank(); ++i) {
    Matrix m = ext.lift(conns[0]->omega[(std::size_t)i]).scaled(w0);
    for (int a = 0; a < ext.k; ++a)
      m += ext.lift(conns[(std::size_t)a + 1]->omega[(std::size_t)i])
               .scaled(ext.t_var(a));
    out.omega[(std::size_t)(ext.k + i)] = std::move(m);
  }
  out.commutes_with_partial = true;
  for (auto* c : conns) out.commutes_with_partial &= c->commutes_with_partial;
  return out;
}

GConnection restrict_at_vertex(const SimplexExtension& ext,
                               const GConnection& conn, int vertex) {
  require(conn.alg == ext.alg.get(), "connection not over this extension");
  require(vertex >= 0 && vertex <= ext.k, "vertex out of range");
  GConnection out = zero_connection(*ext.base, *ext.base_cx);
  Field f = ext.base->field();
  for (int i = 0; i < ext.base->rank(); ++i) {
    Matrix m = conn.omega[(std::size_t)(ext.k + i)];
    Matrix reduced(ext.base->ctx(), m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) {
        RatExpr v = m.at(r, c);
        for (int a = 0; a < ext.k; ++a)
          v = v.substitute_scalar(ext.ext_ctx->n_chart() + a,
                                  Scalar::integer(f, a + 1 == vertex ? 1 : 0));
        reduced.at(r, c) = ext.to_base(v);
      }
    out.omega[(std::size_t)i] = std::move(reduced);
  }
  out.commutes_with_partial = conn.commutes_with_partial;
  return out;
}

GForm fiber_integrate(const SimplexExtension& ext, const GForm& w) {
  require(w.algebroid() == ext.alg.get(), "form not over this extension");
  GForm out(ext.base);
  for (auto& [t, v] : w.components()) {
    if ((int)t.size() < ext.k) continue;
    bool full_dt = true;
    for (int a = 0; a < ext.k; ++a) full_dt &= (a < (int)t.size() && t[(std::size_t)a] == a);
    if (!full_dt) continue;
    Tuple rest(t.begin() + ext.k, t.end());
    for (auto& idx : rest) idx -= ext.k;
    out.add_component(rest, ext.to_base(simplex_integrate(v, ext.k)));
  }
  return out;
}

MForm fiber_integrate(const SimplexExtension& ext, const MForm& w,
                      const SuperComplex& base_cx) {
  require(w.algebroid() == ext.alg.get(), "form not over this extension");
  MForm out(ext.base, &base_cx);
  for (auto& [t, m] : w.components()) {
    if ((int)t.size() < ext.k) continue;
    bool full_dt = true;
    for (int a = 0; a < ext.k; ++a) full_dt &= (a < (int)t.size() && t[(std::size_t)a] == a);
    if (!full_dt) continue;
    Tuple rest(t.begin() + ext.k, t.end());
    for (auto& idx : rest) idx -= ext.k;
    Matrix reduced(ext.base->ctx(), m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c)
        reduced.at(r, c) = ext.to_base(simplex_integrate(m.at(r, c), ext.k));
    out.add_component(rest, reduced);
  }
  return out;
}

GForm chern_character(const GConnection& conn, int p) {
  require(p >= 1, "chern_character needs p >= 1");
  conn.alg->require_validated();
  MForm k = curvature(conn);
  MForm pw = k;
  for (int a = 1; a < p; ++a) pw = pw * k;
  return pw.supertrace();
}

GForm chern_simons(const std::vector<const GConnection*>& conns, int p) {
  require(!conns.empty(), "chern_simons needs at least one connection");
  int k = (int)conns.size() - 1;
  if (k == 0) return chern_character(*conns[0], p);
  const GConnection& c0 = *conns[0];
  SimplexExtension ext = make_extension(*c0.alg, *c0.cx, k);
  GConnection aff = affine_connection(ext, conns);
  GForm ch = chern_character(aff, p);
  return fiber_integrate(ext, ch);
}

GForm verify_stokes(const std::vector<const GConnection*>& conns, int p) {
  require(conns.size() >= 2, "stokes needs at least two connections");
  GForm lhs = d_algebroid(*conns[0]->alg, chern_simons(conns, p));
  GForm rhs(conns[0]->alg);
  for (std::size_t i = 0; i < conns.size(); ++i) {
    std::vector<const GConnection*> sub;
    for (std::size_t j = 0; j < conns.size(); ++j)
      if (j != i) sub.push_back(conns[j]);
    GForm term = chern_simons(sub, p);
    rhs += (i % 2 == 0) ? term : -term;
  }
  return lhs - rhs;
}

namespace {

Scalar i_power(Field f, int e) {
  if (f == Field::Qi) return Scalar::imaginary_unit(f).pow((unsigned)e);
  // Over Q only even powers of i make sense.
  if (e % 2 != 0)
    throw MathError("an odd power of i requires the field Qi");
  return (e / 2) % 2 == 0 ? Scalar::integer(f, 1) : Scalar::integer(f, -1);
}

void check_flat_structure(const GConnection& conn) {
  require(conn.commutes_with_partial,
          "secondary classes need connections on (E, partial)");
  if (!flat_up_to_homotopy(conn))
    throw MathError("connection is not flat up to homotopy");
}

}  // namespace

GForm secondary_class_i(const GConnection& nabla_flat, const GConnection& nabla0,
                        const Metric& h, int p) {
  require(p >= 1, "secondary class needs p >= 1");
  check_flat_structure(nabla_flat);
  require(nabla0.commutes_with_partial,
          "reference connection must commute with partial");
  GConnection n0h = adjoint_connection(nabla0, h);
  GConnection nfh = adjoint_connection(nabla_flat, h);
  GForm s = chern_simons({&nabla_flat, &nabla0}, p) +
            chern_simons({&nabla0, &n0h}, p) + chern_simons({&n0h, &nfh}, p);
  return s.scaled(i_power(nabla0.alg->field(), p + 1));
}

GForm secondary_class_ii(const GConnection& nabla0, const Metric& h, int p) {
  require(p >= 1, "secondary class needs p >= 1");
  require(nabla0.commutes_with_partial,
          "reference connection must commute with partial");
  GConnection n0h = adjoint_connection(nabla0, h);
  GForm s = chern_simons({&nabla0, &n0h}, p);
  return s.scaled(i_power(nabla0.alg->field(), p + 1));
}

GForm secondary_class_real(const GConnection& nabla0, const GConnection& nabla_m,
                           int p) {
  require(p >= 1, "secondary class needs p >= 1");
  if (nabla0.alg->field() != Field::Q)
    throw MathError("the real pathway requires the field Q");
  if (p % 2 == 0)
    throw MathError("p even is rejected: the real class vanishes identically");
  GForm s = chern_simons({&nabla0, &nabla_m}, p);
  Scalar sign = ((p + 1) / 2) % 2 == 0 ? Scalar::integer(Field::Q, 1)
                                       : Scalar::integer(Field::Q, -1);
  return s.scaled(sign);
}

GForm transport_form(const GForm& w, const LieAlgebroid& target) {
  const LieAlgebroid& src = *w.algebroid();
  require(src.rank() == target.rank() &&
              src.ctx()->names() == target.ctx()->names(),
          "transport_form: incompatible shapes");
  GForm out(&target);
  auto move_poly = [&](const Poly& p) {
    Poly q(target.ctx());
    for (auto& t : p.terms()) {
      if (t.c.im() != 0)
        throw MathError("transport_form: value has a nonzero imaginary part");
      q += Poly::monomial(target.ctx(), t.exps,
                          Scalar(target.field(), t.c.re()));
    }
    return q;
  };
  for (auto& [t, v] : w.components())
    out.set_component(t, RatExpr(move_poly(v.num()), move_poly(v.den())));
  return out;
}

}  // namespace algchar
