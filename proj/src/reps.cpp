#include "algchar/reps.hpp"

#include "algchar/linalg.hpp"

namespace algchar {

std::shared_ptr<SuperComplex> adjoint_complex(const LieAlgebroid& a) {
  a.require_validated();
  int n = a.rank(), m = a.dim_m();
  Matrix partial = Matrix::zero(a.ctx(), n + m, n + m);
  for (int mu = 0; mu < m; ++mu)
    for (int j = 0; j < n; ++j) partial.at(n + mu, j) = a.anchor().at(j, mu);
  return std::make_shared<SuperComplex>(a.ctx(), std::vector<int>{n, m}, true,
                                        std::move(partial));
}

GConnection basic_connection(const LieAlgebroid& a, const SuperComplex& adcx,
                             const std::vector<Matrix>& aux) {
  a.require_validated();
  int n = a.rank(), m = a.dim_m();
  require(adcx.blocks() == 2 && adcx.block_rank(0) == n && adcx.block_rank(1) == m,
          "complex is not the adjoint complex of this algebroid");
  require((int)aux.size() == m, "need one auxiliary matrix per coordinate");
  for (auto& g : aux)
    require(g.rows() == n && g.cols() == n, "auxiliary matrices must be n x n");

  GConnection out = zero_connection(a, adcx);
  for (int i = 0; i < n; ++i) {
    Matrix& w = out.omega[(std::size_t)i];
    // Block on g: c_ij^k + sum_mu rho_{j mu} aux_mu[k][i].
    for (int j = 0; j < n; ++j) {
      auto cij = a.bracket_coeffs(i, j);
      for (int k = 0; k < n; ++k) {
        RatExpr v = cij[(std::size_t)k];
        for (int mu = 0; mu < m; ++mu)
          v += a.anchor().at(j, mu) * aux[(std::size_t)mu].at(k, i);
        w.at(k, j) = v;
      }
    }
    // Block on TM: -d_nu(rho_{i mu}) + sum_k rho_{k mu} aux_nu[k][i].
    for (int mu = 0; mu < m; ++mu)
      for (int nu = 0; nu < m; ++nu) {
        RatExpr v = -a.anchor().at(i, mu).derivative(nu);
        for (int k = 0; k < n; ++k)
          v += a.anchor().at(k, mu) * aux[(std::size_t)nu].at(k, i);
        w.at(n + mu, n + nu) = v;
      }
  }
  out.commutes_with_partial = true;
  auto rep = out.validate();
  if (!rep.ok())
    throw MathError("basic connection failed validation: " + rep.summary());
  return out;
}

GForm intrinsic_classes(const LieAlgebroid& a, int p, const GConnection& bas,
                        const GConnection& metric_conn) {
  require(p >= 1, "intrinsic classes need p >= 1");
  if (a.field() != Field::Q)
    throw MathError("intrinsic classes use the real pathway: field Q required");
  if (p % 2 == 0) return GForm(&a);
  GForm cs = chern_simons({&bas, &metric_conn}, p);
  Scalar c = Scalar::rational(Field::Q, ((p + 1) / 2) % 2 == 0 ? 1 : -1, 2);
  return cs.scaled(c);
}

// ---------------------------------------------------------------------------

namespace {

bool all_constant(const Matrix& m) {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (!m.at(r, c).is_constant()) return false;
  return true;
}

// Solve frame^T x = v for x (coordinates of v in the rows of `frame`);
// MathError when v leaves the span.
Matrix in_frame(const Matrix& frame, const Matrix& v, const char* what) {
  auto x = solve_linear(frame.transpose(), v);
  if (!x || frame.transpose() * *x != v)
    throw MathError(std::string("vector leaves the span of ") + what);
  return *x;
}

}  // namespace

ValidationReport Splitting::validate(const LieAlgebroid& a) const {
  ValidationReport rep;
  int n = a.rank(), m = a.dim_m();
  int f = f_basis.rows(), kdim = k_basis.rows(), nudim = nu_basis.rows();
  if (f_basis.cols() != m || nu_basis.cols() != m || k_basis.cols() != n ||
      alpha.rows() != n || alpha.cols() != f || beta.rows() != f ||
      beta.cols() != m) {
    rep.add("splitting shape mismatch");
    return rep;
  }
  if (kdim + f != n) rep.add("K and F ranks do not add up to rank(g)");
  if (nudim + f != m) rep.add("nu and F ranks do not add up to dim(M)");
  if (!all_constant(f_basis) || !all_constant(k_basis) || !all_constant(nu_basis))
    rep.add("frames must be constant on the chart");
  if (rank(a.anchor()) != f) rep.add("anchor rank differs from rank(F)");

  // rho(alpha(F_a)) = F_a.
  Matrix rho_alpha = a.anchor().transpose() * alpha;  // m x f
  if (rho_alpha != f_basis.transpose()) rep.add("rho after alpha is not id on F");
  // beta restricted to F is the identity.
  Matrix id_f = Matrix::identity(a.ctx(), f);
  if (beta * f_basis.transpose() != id_f) rep.add("beta is not id on F");
  // K inside ker rho.
  if (!(k_basis * a.anchor()).is_zero()) rep.add("K frame is not in ker(rho)");
  // Direct sums.
  Matrix g_frame(a.ctx(), n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < kdim; ++c) g_frame.at(r, c) = k_basis.at(c, r);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < f; ++c) g_frame.at(r, kdim + c) = alpha.at(r, c);
  if (rank(g_frame) != n) rep.add("K + alpha(F) does not span g");
  Matrix tm_frame(a.ctx(), m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < nudim; ++c) tm_frame.at(r, c) = nu_basis.at(c, r);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < f; ++c) tm_frame.at(r, nudim + c) = f_basis.at(c, r);
  if (rank(tm_frame) != m) rep.add("nu + F does not span TM");
  return rep;
}

BottRepresentations bott_representation(const LieAlgebroid& a, const Splitting& s) {
  a.require_validated();
  auto rep = s.validate(a);
  if (!rep.ok()) throw MathError("invalid splitting: " + rep.summary());
  int n = a.rank(), m = a.dim_m();
  int kdim = s.k_basis.rows(), nudim = s.nu_basis.rows();
  CtxPtr ctx = a.ctx();

  BottRepresentations out{
      std::make_shared<SuperComplex>(ctx, std::vector<int>{kdim}, true,
                                     Matrix::zero(ctx, kdim, kdim)),
      std::make_shared<SuperComplex>(ctx, std::vector<int>{nudim}, true,
                                     Matrix::zero(ctx, nudim, nudim)),
      GConnection{}, GConnection{}};
  out.on_k = zero_connection(a, *out.k_cx);
  out.on_k.commutes_with_partial = true;
  out.on_nu = zero_connection(a, *out.nu_cx);
  out.on_nu.commutes_with_partial = true;

  for (int i = 0; i < n; ++i) {
    // K: coordinates of [e_i, k_b] in the K frame.
    if (kdim > 0) {
      Matrix rhs(ctx, n, kdim);
      for (int b = 0; b < kdim; ++b)
        for (int j = 0; j < n; ++j) {
          if (s.k_basis.at(b, j).is_zero()) continue;
          auto cij = a.bracket_coeffs(i, j);
          for (int l = 0; l < n; ++l)
            rhs.at(l, b) += s.k_basis.at(b, j) * cij[(std::size_t)l];
        }
      out.on_k.omega[(std::size_t)i] = in_frame(s.k_basis, rhs, "K");
    }
    // nu: [rho(e_i), v_b] projected along F.
    if (nudim > 0) {
      Matrix rhs(ctx, m, nudim);
      for (int b = 0; b < nudim; ++b)
        for (int mu = 0; mu < m; ++mu) {
          RatExpr v(ctx);
          for (int nu = 0; nu < m; ++nu)
            v -= s.nu_basis.at(b, nu) * a.anchor().at(i, mu).derivative(nu);
          rhs.at(mu, b) = v;
        }
      // Solve in the combined (nu | F) frame and keep the nu block.
      Matrix combined(ctx, nudim + s.f_basis.rows(), m);
      for (int r = 0; r < nudim; ++r)
        for (int c = 0; c < m; ++c) combined.at(r, c) = s.nu_basis.at(r, c);
      for (int r = 0; r < s.f_basis.rows(); ++r)
        for (int c = 0; c < m; ++c) combined.at(nudim + r, c) = s.f_basis.at(r, c);
      Matrix coords = in_frame(combined, rhs, "nu + F");
      Matrix w(ctx, nudim, nudim);
      for (int r = 0; r < nudim; ++r)
        for (int c = 0; c < nudim; ++c) w.at(r, c) = coords.at(r, c);
      out.on_nu.omega[(std::size_t)i] = std::move(w);
    }
  }
  return out;
}

GConnection regular_splitting_connection(const LieAlgebroid& a,
                                         const SuperComplex& adcx,
                                         const Splitting& s,
                                         const std::vector<Matrix>& f_conn) {
  a.require_validated();
  auto srep = s.validate(a);
  if (!srep.ok()) throw MathError("invalid splitting: " + srep.summary());
  int n = a.rank(), m = a.dim_m();
  int f = s.f_basis.rows();
  require((int)f_conn.size() == f, "need one F-connection matrix per F frame row");
  for (auto& g : f_conn)
    require(g.rows() == f && g.cols() == f, "F-connection matrices must be f x f");
  CtxPtr ctx = a.ctx();

  // F-frame vector fields applied to a function.
  auto f_vf = [&](int fa, const RatExpr& g) {
    RatExpr v(ctx);
    for (int mu = 0; mu < m; ++mu)
      if (!s.f_basis.at(fa, mu).is_zero())
        v += s.f_basis.at(fa, mu) * g.derivative(mu);
    return v;
  };
  // F-connection of an F-coordinate column along an F-coordinate direction.
  auto nabla_f = [&](const Matrix& w, const Matrix& sec) {
    Matrix out(ctx, f, 1);
    for (int b = 0; b < f; ++b) {
      RatExpr v(ctx);
      for (int fa = 0; fa < f; ++fa) {
        if (w.at(fa, 0).is_zero()) continue;
        RatExpr term = f_vf(fa, sec.at(b, 0));
        for (int c = 0; c < f; ++c)
          term += f_conn[(std::size_t)fa].at(b, c) * sec.at(c, 0);
        v += w.at(fa, 0) * term;
      }
      out.at(b, 0) = v;
    }
    return out;
  };
  // F coordinates of each anchor image.
  std::vector<Matrix> phi;  // f x 1 per generator
  for (int i = 0; i < n; ++i) {
    Matrix rho_i(ctx, m, 1);
    for (int mu = 0; mu < m; ++mu) rho_i.at(mu, 0) = a.anchor().at(i, mu);
    phi.push_back(in_frame(s.f_basis, rho_i, "F"));
  }

  GConnection out = zero_connection(a, adcx);
  for (int i = 0; i < n; ++i) {
    Matrix& w = out.omega[(std::size_t)i];
    Section ei{&a, std::vector<RatExpr>((std::size_t)n, RatExpr(ctx))};
    ei.coeffs[(std::size_t)i] = RatExpr::one(ctx);
    // Block on g.
    for (int j = 0; j < n; ++j) {
      Matrix aj = s.alpha * phi[(std::size_t)j];  // alpha rho(e_j) in g coords
      Section sj{&a, std::vector<RatExpr>((std::size_t)n, RatExpr(ctx))};
      for (int l = 0; l < n; ++l) sj.coeffs[(std::size_t)l] = -aj.at(l, 0);
      sj.coeffs[(std::size_t)j] += RatExpr::one(ctx);
      Section br = bracket(a, ei, sj);
      Matrix corr = s.alpha * nabla_f(phi[(std::size_t)j], phi[(std::size_t)i]);
      for (int l = 0; l < n; ++l) w.at(l, j) = br.coeffs[(std::size_t)l] + corr.at(l, 0);
    }
    // Block on TM.
    for (int nu = 0; nu < m; ++nu) {
      Matrix vf(ctx, m, 1);  // [rho(e_i), d_nu]
      for (int mu = 0; mu < m; ++mu)
        vf.at(mu, 0) = -a.anchor().at(i, mu).derivative(nu);
      Matrix beta_vf = s.beta * vf;                       // f coords
      Matrix beta_col(ctx, f, 1);                         // beta(d_nu)
      for (int b = 0; b < f; ++b) beta_col.at(b, 0) = s.beta.at(b, nu);
      Matrix corr = nabla_f(phi[(std::size_t)i], beta_col);
      Matrix total = vf - s.f_basis.transpose() * beta_vf +
                     s.f_basis.transpose() * corr;
      for (int mu = 0; mu < m; ++mu) w.at(n + mu, n + nu) = total.at(mu, 0);
    }
  }
  out.commutes_with_partial = true;
  auto rep = out.validate();
  if (!rep.ok())
    throw MathError("splitting connection failed validation: " + rep.summary());
  return out;
}

}  // namespace algchar
