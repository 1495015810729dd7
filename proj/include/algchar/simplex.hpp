#pragma once

#include "algchar/ratexpr.hpp"

namespace algchar {

/// Exact integral over the standard k-simplex {t_a >= 0, sum t_a <= 1} of a
/// polynomial in the simplex variables t_1..t_k (coefficients may involve
/// chart variables; the denominator must be free of the t's).  Monomials
/// integrate by prod(a_i!) / (k + sum a_i)!, extended linearly.  The result
/// lives in the same context with all t-degrees zero.
RatExpr simplex_integrate(const RatExpr& p, int k);

}  // namespace algchar
