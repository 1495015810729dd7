#pragma once

#include <memory>

#include "algchar/simplex.hpp"
#include "algchar/superbundle.hpp"

namespace algchar {

/// Pullback geometry over base x standard k-simplex.  The extension is a
/// genuine Lie algebroid: generators d/dt_1..d/dt_k (indices 0..k-1) followed
/// by the base generators (shifted by k); brackets with d/dt vanish and its
/// anchor differentiates in t.  All base operations then apply verbatim.
struct SimplexExtension {
  int k = 0;
  const LieAlgebroid* base = nullptr;
  const SuperComplex* base_cx = nullptr;
  CtxPtr ext_ctx;
  std::shared_ptr<LieAlgebroid> alg;
  std::shared_ptr<SuperComplex> cx;

  RatExpr lift(const RatExpr& f) const;
  Matrix lift(const Matrix& m) const;
  RatExpr t_var(int a) const;  // t_{a+1} as an extension scalar

  /// Drop a t-free extension scalar back to the base context.
  RatExpr to_base(const RatExpr& f) const;
};

SimplexExtension make_extension(const LieAlgebroid& base, const SuperComplex& cx,
                                int k);

/// (1 - sum t_a) nabla_0 + sum t_a nabla_a over the extension; the d/dt
/// coefficients vanish.
GConnection affine_connection(const SimplexExtension& ext,
                              const std::vector<const GConnection*>& conns);

/// Evaluate an extension connection at a simplex vertex (vertex 0 is t = 0,
/// vertex a >= 1 sets t_a = 1); returns a base connection.
GConnection restrict_at_vertex(const SimplexExtension& ext,
                               const GConnection& conn, int vertex);

/// Keep only components carrying every dt slot, then integrate the
/// coefficients over the simplex.  Degree drops by k.
GForm fiber_integrate(const SimplexExtension& ext, const GForm& w);
MForm fiber_integrate(const SimplexExtension& ext, const MForm& w,
                      const SuperComplex& base_cx);

/// Unnormalized Chern character form Tr_s(k_nabla^p), a closed 2p-form.
GForm chern_character(const GConnection& conn, int p);

/// Transgression cs_p(nabla_0..nabla_k) = integral over the k-simplex of
/// ch_p of the affine combination.
GForm chern_simons(const std::vector<const GConnection*>& conns, int p);

/// d cs_p(nabla_0..nabla_k) - sum_i (-1)^i cs_p(..omit i..); identically zero.
GForm verify_stokes(const std::vector<const GConnection*>& conns, int p);

/// i^{p+1} (cs_p(nabla, nabla_0) + cs_p(nabla_0, nabla_0^h) +
/// cs_p(nabla_0^h, nabla^h)): real, closed, degree 2p-1.
GForm secondary_class_i(const GConnection& nabla_flat, const GConnection& nabla0,
                        const Metric& h, int p);

/// i^{p+1} cs_p(nabla_0, nabla_0^h) for nabla_0 equivalent to the flat
/// structure.
GForm secondary_class_ii(const GConnection& nabla0, const Metric& h, int p);

/// Real pathway: (-1)^{(p+1)/2} cs_p(nabla_0, nabla_m), field Q, p odd.
GForm secondary_class_real(const GConnection& nabla0, const GConnection& nabla_m,
                           int p);

/// Move a form with real coefficients between same-shape algebroids over
/// different fields (used to compare the Q and Q(i) pathways).
GForm transport_form(const GForm& w, const LieAlgebroid& target);

}  // namespace algchar
