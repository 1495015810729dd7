#include "algchar/superbundle.hpp"

#include "algchar/linalg.hpp"
#include "algchar/parallel.hpp"

namespace algchar {

SuperComplex::SuperComplex(CtxPtr ctx, std::vector<int> ranks, bool z_graded,
                           Matrix partial)
    : ctx_(std::move(ctx)), ranks_(std::move(ranks)), z_graded_(z_graded),
      partial_(std::move(partial)) {
  require(!ranks_.empty(), "complex needs at least one block");
  total_ = 0;
  for (int r : ranks_) {
    require(r >= 0, "negative block rank");
    offsets_.push_back(total_);
    total_ += r;
  }
  require(partial_.rows() == total_ && partial_.cols() == total_,
          "partial must be square of the total rank");
}

int SuperComplex::zdeg(int index) const {
  for (int b = (int)ranks_.size() - 1; b >= 0; --b)
    if (index >= offsets_[(std::size_t)b]) return b;
  throw ShapeError("index out of range");
}

ValidationReport SuperComplex::validate() const {
  ValidationReport rep;
  for (int r = 0; r < total_; ++r)
    for (int c = 0; c < total_; ++c) {
      if (partial_.at(r, c).is_zero()) continue;
      if (z_graded_) {
        if (zdeg(r) != zdeg(c) + 1)
          rep.add("partial entry (" + std::to_string(r + 1) + "," +
                  std::to_string(c + 1) + ") does not raise the Z-degree by 1");
      } else if (parity(r) == parity(c)) {
        rep.add("partial entry (" + std::to_string(r + 1) + "," +
                std::to_string(c + 1) + ") is not odd");
      }
    }
  if (!(partial_ * partial_).is_zero()) rep.add("partial squared is nonzero");
  return rep;
}

Matrix SuperComplex::even_part(const Matrix& m) const {
  Matrix out = Matrix::zero(m.ctx(), m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (parity(r) == parity(c)) out.at(r, c) = m.at(r, c);
  return out;
}

Matrix SuperComplex::odd_part(const Matrix& m) const {
  Matrix out = Matrix::zero(m.ctx(), m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (parity(r) != parity(c)) out.at(r, c) = m.at(r, c);
  return out;
}

int SuperComplex::matrix_parity(const Matrix& m) const {
  bool even = false, odd = false;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      if (m.at(r, c).is_zero()) continue;
      (parity(r) == parity(c) ? even : odd) = true;
    }
  if (even && odd) return 2;
  if (even) return 0;
  if (odd) return 1;
  return -1;
}

RatExpr SuperComplex::supertrace(const Matrix& m) const {
  require(m.rows() == total_ && m.cols() == total_, "supertrace shape mismatch");
  RatExpr s(ctx_);
  for (int i = 0; i < total_; ++i)
    s += parity(i) == 0 ? m.at(i, i) : -m.at(i, i);
  return s;
}

bool SuperComplex::has_z_shift(const Matrix& m, int shift) const {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (!m.at(r, c).is_zero() && zdeg(r) != zdeg(c) + shift) return false;
  return true;
}

// ---------------------------------------------------------------------------

ValidationReport Metric::validate() const {
  ValidationReport rep;
  if (h.rows() != cx->total_rank() || h.cols() != cx->total_rank()) {
    rep.add("metric shape mismatch");
    return rep;
  }
  if (h.conj_transpose() != h) rep.add("metric is not hermitian");
  for (int r = 0; r < h.rows(); ++r)
    for (int c = 0; c < h.cols(); ++c)
      if (!h.at(r, c).is_zero() && cx->zdeg(r) != cx->zdeg(c))
        rep.add("metric does not preserve the grading");
  if (determinant(h).is_zero()) rep.add("metric is singular");
  return rep;
}

Metric identity_metric(const SuperComplex& cx) {
  return Metric{&cx, Matrix::identity(cx.ctx(), cx.total_rank())};
}

ValidationReport GConnection::validate() const {
  ValidationReport rep;
  if ((int)omega.size() != alg->rank()) {
    rep.add("connection needs one coefficient matrix per generator");
    return rep;
  }
  for (int i = 0; i < alg->rank(); ++i) {
    if (omega[(std::size_t)i].rows() != cx->total_rank() ||
        omega[(std::size_t)i].cols() != cx->total_rank()) {
      rep.add("coefficient matrix " + std::to_string(i + 1) + " has wrong shape");
      continue;
    }
    if (!cx->is_even(omega[(std::size_t)i]))
      rep.add("coefficient matrix " + std::to_string(i + 1) +
              " does not preserve the grading");
    if (commutes_with_partial) {
      Matrix lhs = alg->apply_anchor(i, cx->partial()) +
                   commutator(omega[(std::size_t)i], cx->partial());
      if (!lhs.is_zero())
        rep.add("connection does not commute with partial at generator " +
                std::to_string(i + 1));
    }
  }
  return rep;
}

GConnection zero_connection(const LieAlgebroid& a, const SuperComplex& cx) {
  GConnection c{&a, &cx, {}, false};
  for (int i = 0; i < a.rank(); ++i)
    c.omega.push_back(Matrix::zero(a.ctx(), cx.total_rank(), cx.total_rank()));
  return c;
}

MForm curvature(const GConnection& conn) {
  conn.alg->require_validated();
  const LieAlgebroid& a = *conn.alg;
  MForm k(conn.alg, conn.cx);
  for (int i = 0; i < a.rank(); ++i)
    for (int j = i + 1; j < a.rank(); ++j) {
      Matrix m = a.apply_anchor(i, conn.omega[(std::size_t)j]) -
                 a.apply_anchor(j, conn.omega[(std::size_t)i]) +
                 commutator(conn.omega[(std::size_t)i], conn.omega[(std::size_t)j]);
      auto cij = a.bracket_coeffs(i, j);
      for (int t = 0; t < a.rank(); ++t)
        if (!cij[(std::size_t)t].is_zero())
          m -= conn.omega[(std::size_t)t].scaled(cij[(std::size_t)t]);
      k.add_component({i, j}, m);
    }
  return k;
}

MForm cov_ext_derivative(const GConnection& conn, const MForm& w) {
  conn.alg->require_validated();
  require(w.algebroid() == conn.alg && w.complex_ref() == conn.cx,
          "form over different spaces");
  const LieAlgebroid& a = *conn.alg;
  int n = a.rank();
  int r = conn.cx->total_rank();
  std::vector<bool> deg_present;
  for (auto& [t, m] : w.components()) {
    if ((int)t.size() >= (int)deg_present.size()) deg_present.resize(t.size() + 1, false);
    deg_present[t.size()] = true;
  }
  MForm out(conn.alg, conn.cx);
  for (int q = 0; q < (int)deg_present.size(); ++q) {
    if (!deg_present[q] || q + 1 > n) continue;
    std::vector<Tuple> tuples = increasing_tuples(n, q + 1);
    std::vector<Matrix> vals(tuples.size(), Matrix::zero(a.ctx(), r, r));
    par::parallel_for(tuples.size(), [&](std::size_t ti) {
      const Tuple& t = tuples[ti];
      Matrix val = Matrix::zero(a.ctx(), r, r);
      for (int p = 0; p <= q; ++p) {
        Tuple rest = tuple_erase(t, p);
        const Matrix* c = w.component(rest);
        if (c) {
          int gen = t[(std::size_t)p];
          Matrix term = a.apply_anchor(gen, *c) +
                        commutator(conn.omega[(std::size_t)gen], *c);
          val += (p % 2 == 0) ? term : -term;
        }
      }
      for (int pa = 0; pa <= q; ++pa)
        for (int pb = pa + 1; pb <= q; ++pb) {
          auto cab = a.bracket_coeffs(t[(std::size_t)pa], t[(std::size_t)pb]);
          Tuple rest = tuple_erase(tuple_erase(t, pb), pa);
          int sgn = ((pa + pb) % 2 == 0) ? 1 : -1;
          for (int k = 0; k < n; ++k) {
            if (cab[(std::size_t)k].is_zero()) continue;
            std::vector<int> idx;
            idx.push_back(k);
            idx.insert(idx.end(), rest.begin(), rest.end());
            Matrix term = w.eval(idx);
            if (term.is_zero()) continue;
            term = term.scaled(cab[(std::size_t)k]);
            val += sgn > 0 ? term : -term;
          }
        }
      vals[ti] = std::move(val);
    });
    for (std::size_t ti = 0; ti < tuples.size(); ++ti)
      out.add_component(tuples[ti], vals[ti]);
  }
  return out;
}

ValidationReport HomotopyEquivalence::validate() const {
  ValidationReport rep;
  for (auto& [t, m] : theta.components()) {
    if (t.size() != 1) rep.add("theta must be a 1-form");
    if (!theta.complex_ref()->is_odd(m))
      rep.add("theta values must be odd endomorphisms");
  }
  return rep;
}

GConnection apply_equivalence(const GConnection& conn,
                              const HomotopyEquivalence& th) {
  auto rep = th.validate();
  if (!rep.ok()) throw ShapeError("invalid equivalence: " + rep.summary());
  require(th.theta.algebroid() == conn.alg && th.theta.complex_ref() == conn.cx,
          "equivalence over different spaces");
  const Matrix& partial = conn.cx->partial();
  GConnection out = conn;
  for (int i = 0; i < conn.alg->rank(); ++i) {
    const Matrix* t = th.theta.component({i});
    if (!t) continue;
    // theta(e_i) and partial are both odd: [theta, partial] = anticommutator.
    out.omega[(std::size_t)i] += *t * partial + partial * *t;
  }
  return out;
}

Matrix adjoint_partial(const SuperComplex& cx, const Metric& h) {
  Matrix hinv = mat_inverse(h.h);
  return hinv * cx.partial().conj_transpose() * h.h;
}

GConnection adjoint_connection(const GConnection& conn, const Metric& h) {
  require(h.cx == conn.cx, "metric over a different complex");
  Matrix hinv = mat_inverse(h.h);
  GConnection out = conn;
  for (int i = 0; i < conn.alg->rank(); ++i) {
    Matrix rho_h = conn.alg->apply_anchor(i, h.h);
    out.omega[(std::size_t)i] =
        hinv * rho_h - hinv * conn.omega[(std::size_t)i].conj_transpose() * h.h;
  }
  // The adjoint lives on (E, partial^h); commutation with the original
  // partial is not implied.
  out.commutes_with_partial = false;
  return out;
}

GConnection metric_connection(const Metric& h, const LieAlgebroid& a,
                              const SuperComplex& cx) {
  Matrix hinv = mat_inverse(h.h);
  GConnection out = zero_connection(a, cx);
  Scalar half = Scalar::rational(a.field(), 1, 2);
  for (int i = 0; i < a.rank(); ++i)
    out.omega[(std::size_t)i] = (hinv * a.apply_anchor(i, h.h)).scaled(half);
  return out;
}

std::optional<Matrix> solve_odd_commutator(const SuperComplex& cx,
                                           const Matrix& target) {
  const Matrix& partial = cx.partial();
  int r = cx.total_rank();
  CtxPtr ctx = cx.ctx();
  require(cx.is_even(target), "commutator target must be even");
  // Unknown odd entries.
  std::vector<std::pair<int, int>> odd_slots;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (cx.parity(i) != cx.parity(j)) odd_slots.push_back({i, j});
  // Equations on even entries of Y*partial + partial*Y.
  std::vector<std::pair<int, int>> even_slots;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (cx.parity(i) == cx.parity(j)) even_slots.push_back({i, j});
  Matrix A = Matrix::zero(ctx, (int)even_slots.size(), (int)odd_slots.size());
  for (int c = 0; c < (int)odd_slots.size(); ++c) {
    auto [yi, yj] = odd_slots[(std::size_t)c];
    for (int e = 0; e < (int)even_slots.size(); ++e) {
      auto [r0, c0] = even_slots[(std::size_t)e];
      RatExpr v(ctx);
      // (Y*partial)[r0][c0] picks Y[r0][yj]=... only when yi==r0.
      if (yi == r0) v += partial.at(yj, c0);
      if (yj == c0) v += partial.at(r0, yi);
      A.at(e, c) = v;
    }
  }
  Matrix b = Matrix::zero(ctx, (int)even_slots.size(), 1);
  for (int e = 0; e < (int)even_slots.size(); ++e)
    b.at(e, 0) = target.at(even_slots[(std::size_t)e].first,
                           even_slots[(std::size_t)e].second);
  auto x = solve_linear(A, b);
  if (!x) return std::nullopt;
  Matrix y = Matrix::zero(ctx, r, r);
  for (int c = 0; c < (int)odd_slots.size(); ++c)
    y.at(odd_slots[(std::size_t)c].first, odd_slots[(std::size_t)c].second) =
        x->at(c, 0);
  // Exactness guard.
  if (y * partial + partial * y != target) return std::nullopt;
  return y;
}

std::optional<MForm> flat_up_to_homotopy(const GConnection& conn) {
  require(conn.commutes_with_partial,
          "flat_up_to_homotopy needs a connection on (E, partial)");
  MForm k = curvature(conn);
  MForm eta(conn.alg, conn.cx);
  for (auto& [t, m] : k.components()) {
    auto y = solve_odd_commutator(*conn.cx, m);
    if (!y) return std::nullopt;
    eta.set_component(t, std::move(*y));
  }
  return eta;
}

std::optional<HomotopyEquivalence> connect_by_theta(const GConnection& from,
                                                    const GConnection& to) {
  require(from.alg == to.alg && from.cx == to.cx,
          "connections over different spaces");
  MForm theta(from.alg, from.cx);
  for (int i = 0; i < from.alg->rank(); ++i) {
    Matrix diff = to.omega[(std::size_t)i] - from.omega[(std::size_t)i];
    auto y = solve_odd_commutator(*from.cx, diff);
    if (!y) return std::nullopt;
    theta.set_component({i}, std::move(*y));
  }
  return HomotopyEquivalence{std::move(theta)};
}

}  // namespace algchar
