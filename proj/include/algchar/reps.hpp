#pragma once

#include <memory>

#include "algchar/chern.hpp"

namespace algchar {

/// Adjoint complex g -> TM with the anchor as differential (g in Z-degree 0,
/// TM in Z-degree 1).
std::shared_ptr<SuperComplex> adjoint_complex(const LieAlgebroid& a);

/// Basic connection on Ad(g) induced by an ordinary TM-connection on the
/// bundle g (one n x n coefficient matrix per chart coordinate):
///   on g:  nabla_X(Y) = [X, Y] + aux_{rho(Y)}(X)
///   on TM: nabla_X(V) = [rho(X), V] + rho(aux_V(X)).
/// Always a connection on (Ad(g), rho) and always flat up to homotopy.
GConnection basic_connection(const LieAlgebroid& a, const SuperComplex& adcx,
                             const std::vector<Matrix>& aux);

/// Intrinsic classes of the algebroid: 0 for even p, else
/// (1/2)(-1)^{(p+1)/2} cs_p(nabla_bas, nabla_m) over the field Q.
GForm intrinsic_classes(const LieAlgebroid& a, int p, const GConnection& bas,
                        const GConnection& metric_conn);

/// Splitting data for a regular algebroid: constant frames for F = im(rho),
/// K = ker(rho) and a complement nu of F in TM, alpha a right inverse of rho
/// on F, beta a projection of TM onto F (coordinates in the F frame).
struct Splitting {
  Matrix f_basis;   // f x m, rows are TM coefficient vectors
  Matrix k_basis;   // (n-f) x n, rows are g coefficient vectors
  Matrix nu_basis;  // (m-f) x m
  Matrix alpha;     // n x f, column a = alpha(F_a) in g coordinates
  Matrix beta;      // f x m, beta(V)_a = sum_mu beta[a][mu] V^mu

  ValidationReport validate(const LieAlgebroid& a) const;
};

/// Bott's honest flat representations on K and on nu = TM/F.
struct BottRepresentations {
  std::shared_ptr<SuperComplex> k_cx;
  std::shared_ptr<SuperComplex> nu_cx;
  GConnection on_k;
  GConnection on_nu;
};

BottRepresentations bott_representation(const LieAlgebroid& a, const Splitting& s);

/// The splitting-induced basic connection on Ad(g):
///   nabla_X(Y) = [X, Y - alpha rho(Y)] + alpha aux^F_{rho(Y)}(rho X)
///   nabla_X(V) = [rho X, V] - incl beta [rho X, V] + incl aux^F_{rho X}(beta V)
/// with aux^F an F-connection on F (one f x f matrix per F frame direction).
GConnection regular_splitting_connection(const LieAlgebroid& a,
                                         const SuperComplex& adcx,
                                         const Splitting& s,
                                         const std::vector<Matrix>& f_conn);

}  // namespace algchar
