#include "algchar/simplex.hpp"

namespace algchar {

RatExpr simplex_integrate(const RatExpr& p, int k) {
  if (k < 0) throw MathError("simplex dimension must be nonnegative");
  const CtxPtr& ctx = p.ctx();
  int nc = ctx->n_chart();
  int nt = ctx->n_simplex();
  for (int a = k; a < nt; ++a)
    if (p.num().depends_on(nc + a) || p.den().depends_on(nc + a))
      throw MathError("integrand involves t" + std::to_string(a + 1) +
                      " beyond the simplex dimension");
  require(k <= nt, "context lacks the requested simplex variables");
  for (int a = 0; a < k; ++a)
    if (p.den().depends_on(nc + a))
      throw MathError("integrand denominator depends on simplex variables");

  auto factorial = [](long n) {
    BigRat f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
  };

  Poly out(ctx);
  for (auto& t : p.num().terms()) {
    long total = 0;
    BigRat numfac = 1;
    Exps e = t.exps;
    for (int a = 0; a < k; ++a) {
      long d = e[(std::size_t)(nc + a)];
      total += d;
      numfac *= factorial(d);
      e[(std::size_t)(nc + a)] = 0;
    }
    Scalar w(ctx->field(), numfac / factorial(k + total));
    out += Poly::monomial(ctx, std::move(e), t.c * w);
  }
  return RatExpr(out, p.den());
}

}  // namespace algchar
