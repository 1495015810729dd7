#include "algchar/acyclic.hpp"

#include "algchar/linalg.hpp"

namespace algchar {

Matrix hodge_homotopy(const SuperComplex& cx, const Metric& h) {
  require(h.cx == &cx, "metric over a different complex");
  Matrix dh = adjoint_partial(cx, h);
  const Matrix& d = cx.partial();
  Matrix laplacian = dh * d + d * dh;
  Matrix inv(cx.ctx(), 0, 0);
  try {
    inv = mat_inverse(laplacian);
  } catch (const MathError&) {
    throw MathError(
        "Laplacian is singular: complex not acyclic or metric degenerate");
  }
  return -(inv * dh);
}

HomotopyEquivalence connect_equivalence(const GConnection& from,
                                        const GConnection& to, const Matrix& a) {
  require(from.alg == to.alg && from.cx == to.cx,
          "connections over different spaces");
  require(from.commutes_with_partial && to.commutes_with_partial,
          "both connections must commute with partial");
  const Matrix& partial = from.cx->partial();
  MForm theta(from.alg, from.cx);
  for (int i = 0; i < from.alg->rank(); ++i) {
    Matrix diff = to.omega[(std::size_t)i] - from.omega[(std::size_t)i];
    Matrix th = -(diff * a);
    if (th * partial + partial * th != diff)
      throw MathError("connect_equivalence: homotopy identity failed");
    theta.set_component({i}, std::move(th));
  }
  return HomotopyEquivalence{std::move(theta)};
}

MForm Superconnection::lower_and_higher() const {
  MForm s = MForm::zero_form(alg, cx, cx->partial());
  for (auto& [j, piece] : pieces) s += piece;
  return s;
}

MForm superconnection_square(const Superconnection& a) {
  MForm s = a.lower_and_higher();
  return curvature(a.a1) + cov_ext_derivative(a.a1, s) + s * s;
}

Superconnection fedosov_superconnection(const SuperComplex& cx,
                                        const GConnection& conn, const Metric& h) {
  require(cx.z_graded(), "fedosov construction needs a Z-graded complex");
  require(conn.cx == &cx, "connection over a different complex");
  require(conn.commutes_with_partial, "connection must commute with partial");
  for (auto& w : conn.omega)
    require(cx.has_z_shift(w, 0), "connection must preserve the Z-grading");

  Matrix a = hodge_homotopy(cx, h);
  Superconnection sc{conn.alg, &cx, conn, {}};
  MForm dform = MForm::zero_form(conn.alg, &cx, cx.partial());

  int n = conn.alg->rank();
  for (int layer = 1; layer + 1 <= n; ++layer) {
    MForm residual = superconnection_square(sc);
    MForm u = residual.degree_part(layer + 1);
    if (u.is_zero()) continue;
    if (!dform.supercommutator(u).is_zero())
      throw MathError("fedosov layer residual does not commute with partial");
    MForm next(conn.alg, &cx);
    for (auto& [t, m] : u.components()) next.set_component(t, m * a);
    sc.pieces.emplace(layer + 1, std::move(next));
  }
  MForm total = superconnection_square(sc);
  if (!total.is_zero())
    throw MathError("fedosov construction failed to flatten the superconnection");
  for (auto& [j, piece] : sc.pieces)
    for (auto& [t, m] : piece.components())
      require(cx.has_z_shift(m, 1 - j), "fedosov piece has a wrong block shape");
  return sc;
}

}  // namespace algchar
