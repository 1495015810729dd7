#pragma once

#include <map>

#include "algchar/superbundle.hpp"

namespace algchar {

/// Hodge-style contraction a = -(d^h d + d d^h)^{-1} d^h for an acyclic
/// complex; satisfies [partial, a] = -1 exactly.  MathError when the
/// Laplacian is singular (not acyclic, or degenerate metric).
Matrix hodge_homotopy(const SuperComplex& cx, const Metric& h);

/// theta(e_i) = -(omega'_i - omega_i) a; exhibits any two connections on
/// an acyclic (E, partial) as equivalent.  Verifies exactly.
HomotopyEquivalence connect_equivalence(const GConnection& from,
                                        const GConnection& to, const Matrix& a);

/// A = partial + nabla + A_2 + A_3 + ...; pieces[j] is the degree-j form with
/// endomorphism block mapping Z-degree * to * + 1 - j.
struct Superconnection {
  const LieAlgebroid* alg = nullptr;
  const SuperComplex* cx = nullptr;
  GConnection a1;
  std::map<int, MForm> pieces;  // j >= 2

  /// partial plus all higher pieces as one mixed-degree form.
  MForm lower_and_higher() const;
};

/// Total curvature k_nabla + d_nabla(S) + S*S with S = partial + sum A_j;
/// zero iff the superconnection is flat.
MForm superconnection_square(const Superconnection& a);

/// Inductive construction of a flat superconnection extending partial +
/// nabla on an acyclic Z-graded complex; each layer solves
/// [partial, A_{n+1}] = -u_n via A_{n+1} = u_n a.  The result verifies
/// superconnection_square == 0 exactly.
Superconnection fedosov_superconnection(const SuperComplex& cx,
                                        const GConnection& conn, const Metric& h);

}  // namespace algchar
