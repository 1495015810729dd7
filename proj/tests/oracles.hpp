#pragma once

// Independent reference implementations used as oracles.  They share the
// arithmetic kernel with the library but not the code paths under test.

#include "algchar/algebroid.hpp"
#include "algchar/simplex.hpp"

namespace oracle {

using namespace algchar;

// Antiderivative of a polynomial in variable `var`.
inline Poly antiderivative(const Poly& p, int var) {
  Poly out(p.ctx());
  for (auto& t : p.terms()) {
    Exps e = t.exps;
    e[(std::size_t)var] += 1;
    out += Poly::monomial(p.ctx(), e,
                          t.c / Scalar::integer(p.field(), e[(std::size_t)var]));
  }
  return out;
}

// Substitute a polynomial value for one variable.
inline Poly substitute_poly(const Poly& p, int var, const Poly& value) {
  Poly out(p.ctx());
  for (auto& t : p.terms()) {
    Exps e = t.exps;
    unsigned d = e[(std::size_t)var];
    e[(std::size_t)var] = 0;
    out += Poly::monomial(p.ctx(), e, t.c) * value.pow(d);
  }
  return out;
}

// Iterated integration over the standard simplex: integrate t_k from 0 to
// 1 - t_1 - ... - t_{k-1}, then t_{k-1}, and so on.  Independent of the
// closed-form monomial formula under test.
inline RatExpr simplex_integral_iterated(const Poly& p, int k) {
  CtxPtr ctx = p.ctx();
  int nc = ctx->n_chart();
  Poly cur = p;
  for (int j = k; j >= 1; --j) {
    int var = nc + j - 1;
    Poly anti = antiderivative(cur, var);
    Poly upper = Poly::from_int(ctx, 1);
    for (int a = 1; a < j; ++a) upper -= Poly::variable(ctx, nc + a - 1);
    Poly at_upper = substitute_poly(anti, var, upper);
    Poly at_zero = anti.substitute_scalar(var, Scalar(ctx->field()));
    cur = at_upper - at_zero;
  }
  return RatExpr(cur);
}

// Coordinate de Rham differential for the tangent algebroid (anchor = id,
// zero structure functions): (dw)(i_0..i_q) = sum_a (-1)^a d_{i_a} w(rest).
// A direct implementation that never touches brackets.
inline GForm de_rham(const LieAlgebroid& a, const GForm& w) {
  GForm out(&a);
  int n = a.rank();
  for (auto& [t, v] : w.components()) {
    for (int gen = 0; gen < n; ++gen) {
      std::vector<int> idx{gen};
      idx.insert(idx.end(), t.begin(), t.end());
      auto [sorted, sign] = normalize_tuple(idx);
      if (sign == 0) continue;
      RatExpr dv = v.derivative(gen);
      if (dv.is_zero()) continue;
      out.add_component(sorted, sign > 0 ? dv : -dv);
    }
  }
  return out;
}

}  // namespace oracle
