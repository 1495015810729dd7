#pragma once

#include <optional>

#include "algchar/algebroid.hpp"

namespace algchar {

/// Bound on the polynomial degree of primitives searched over a
/// positive-dimensional base.
struct TruncationWindow {
  int max_poly_degree = 0;
};

/// Default window: 2 plus the highest coefficient degree in the inputs.
TruncationWindow default_window(std::initializer_list<const GForm*> forms);

enum class Exactness { EXACT, NOT_EXACT, NOT_FOUND_AT_TRUNCATION };

struct ExactnessResult {
  Exactness status;
  std::optional<GForm> primitive;  // present iff EXACT; verifies d(p) = w
};

/// Exact ranks of the Chevalley-Eilenberg cohomology at a point base.
std::vector<int> cohomology_dims(const LieAlgebroid& a);

/// Decide exactness of a closed form.  At a point base the answer is exact
/// (EXACT or NOT_EXACT).  Over a positive-dimensional base, primitives with
/// polynomial coefficients of degree <= window are searched; failure is
/// reported as NOT_FOUND_AT_TRUNCATION, never as NOT_EXACT.
ExactnessResult is_exact(const LieAlgebroid& a, const GForm& w,
                         TruncationWindow window);

enum class ClassCompare { EQUAL, NOT_EQUAL, UNDECIDED_AT_TRUNCATION };

struct CompareResult {
  ClassCompare status;
  std::optional<GForm> witness;  // primitive of w - v when EQUAL
};

CompareResult classes_equal(const LieAlgebroid& a, const GForm& w, const GForm& v,
                            TruncationWindow window);

}  // namespace algchar
