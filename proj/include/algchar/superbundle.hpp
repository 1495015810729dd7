#pragma once

#include <optional>

#include "algchar/algebroid.hpp"

namespace algchar {

/// Graded vector bundle with an odd differential.  Blocks are listed by
/// Z-degree 0..N; parity is degree mod 2.  With z_graded set, the
/// differential must raise the Z-degree by exactly one; otherwise only
/// oddness is required (the plain super case E0 <-> E1).
class SuperComplex {
 public:
  SuperComplex(CtxPtr ctx, std::vector<int> ranks, bool z_graded, Matrix partial);

  const CtxPtr& ctx() const { return ctx_; }
  int total_rank() const { return total_; }
  int blocks() const { return (int)ranks_.size(); }
  int block_rank(int b) const { return ranks_[(std::size_t)b]; }
  int block_offset(int b) const { return offsets_[(std::size_t)b]; }
  bool z_graded() const { return z_graded_; }
  const std::vector<int>& ranks() const { return ranks_; }

  int zdeg(int index) const;          // Z-degree of a basis index
  int parity(int index) const { return zdeg(index) % 2; }
  const Matrix& partial() const { return partial_; }

  ValidationReport validate() const;

  /// Parity projections of an endomorphism matrix.
  Matrix even_part(const Matrix& m) const;
  Matrix odd_part(const Matrix& m) const;
  /// -1 zero, 0 even, 1 odd, 2 mixed.
  int matrix_parity(const Matrix& m) const;
  bool is_even(const Matrix& m) const { return odd_part(m).is_zero(); }
  bool is_odd(const Matrix& m) const { return even_part(m).is_zero(); }

  RatExpr supertrace(const Matrix& m) const;

  /// True when m maps Z-degree * to * + shift only.
  bool has_z_shift(const Matrix& m, int shift) const;

 private:
  CtxPtr ctx_;
  std::vector<int> ranks_;
  std::vector<int> offsets_;
  int total_;
  bool z_graded_;
  Matrix partial_;
};

/// Hermitian grading-preserving metric with invertible matrix.
struct Metric {
  const SuperComplex* cx;
  Matrix h;
  ValidationReport validate() const;
};

Metric identity_metric(const SuperComplex& cx);

/// Linear g-connection in coefficient form: nabla_{e_i} = rho(e_i) + omega_i
/// acting on coefficient columns.  Coefficients must preserve the grading;
/// commutes_with_partial additionally requires rho(e_i)(partial) +
/// [omega_i, partial] = 0, making it a connection on (E, partial).
struct GConnection {
  const LieAlgebroid* alg;
  const SuperComplex* cx;
  std::vector<Matrix> omega;  // one r x r matrix per generator
  bool commutes_with_partial = false;

  ValidationReport validate() const;
};

GConnection zero_connection(const LieAlgebroid& a, const SuperComplex& cx);

/// End(E)-valued algebroid form.  Components may mix degrees (needed for
/// superconnection totals); products use the Koszul rule
/// (w ox A)(h ox B) = (-1)^{|A||h|} (w^h) ox (AB) with |A| the endomorphism
/// parity and |h| the form degree.
class MForm {
 public:
  MForm(const LieAlgebroid* alg, const SuperComplex* cx) : alg_(alg), cx_(cx) {}
  static MForm zero_form(const LieAlgebroid* alg, const SuperComplex* cx,
                         Matrix m);  // degree-0 form

  const LieAlgebroid* algebroid() const { return alg_; }
  const SuperComplex* complex_ref() const { return cx_; }
  const std::map<Tuple, Matrix>& components() const { return comp_; }

  void add_component(const Tuple& t, const Matrix& m);
  void set_component(const Tuple& t, Matrix m);
  const Matrix* component(const Tuple& t) const;
  Matrix eval(const std::vector<int>& idx) const;  // signed lookup

  bool is_zero() const { return comp_.empty(); }
  int degree() const;       // -1 zero, throws when mixed
  bool homogeneous() const;
  /// Endomorphism parity of all components: -1 zero, 0 even, 1 odd, 2 mixed.
  int endo_parity() const;
  /// Restrict to components of one form degree.
  MForm degree_part(int k) const;

  MForm operator-() const;
  MForm operator+(const MForm& o) const;
  MForm operator-(const MForm& o) const;
  MForm& operator+=(const MForm& o) { return *this = *this + o; }
  MForm scaled(const RatExpr& f) const;
  MForm scaled(const Scalar& s) const;
  MForm conj() const;

  /// Koszul product (see class comment).
  MForm operator*(const MForm& o) const;
  /// Graded commutator [a, b] with total degree = form degree + parity.
  MForm supercommutator(const MForm& o) const;

  GForm supertrace() const;

  bool operator==(const MForm& o) const;
  bool operator!=(const MForm& o) const { return !(*this == o); }

 private:
  const LieAlgebroid* alg_;
  const SuperComplex* cx_;
  std::map<Tuple, Matrix> comp_;
};

/// Reference and OpenMP implementations of the Koszul product; operator*
/// dispatches between them.
MForm mform_product_serial(const MForm& a, const MForm& b);
MForm mform_product_parallel(const MForm& a, const MForm& b);

/// Curvature k(e_i, e_j) = rho_i(omega_j) - rho_j(omega_i) +
/// [omega_i, omega_j] - sum_k c_ij^k omega_k; an even 2-form.
MForm curvature(const GConnection& conn);

/// Lie-type extension of the connection to End(E)-valued forms; the
/// connection acts on coefficients by rho(e_i)(-) + [omega_i, -].
MForm cov_ext_derivative(const GConnection& conn, const MForm& w);

GForm supertrace(const MForm& w);

struct HomotopyEquivalence {
  MForm theta;  // degree 1, endomorphism-odd
  ValidationReport validate() const;
};

/// nabla'_i = nabla_i + [theta(e_i), partial].
GConnection apply_equivalence(const GConnection& conn, const HomotopyEquivalence& th);

Matrix adjoint_partial(const SuperComplex& cx, const Metric& h);
GConnection adjoint_connection(const GConnection& conn, const Metric& h);
/// omega_i = (1/2) H^{-1} rho(e_i)(H); equals its own h-adjoint.
GConnection metric_connection(const Metric& h, const LieAlgebroid& a,
                              const SuperComplex& cx);

/// Solve [Y, partial] = target with Y odd (free unknowns zeroed);
/// nullopt when unsolvable.
std::optional<Matrix> solve_odd_commutator(const SuperComplex& cx,
                                           const Matrix& target);

/// Degree-2 endomorphism-odd eta with curvature = [eta, partial], when one
/// exists; the returned form verifies exactly.
std::optional<MForm> flat_up_to_homotopy(const GConnection& conn);

/// Linear theta with omega'_i - omega_i = [theta(e_i), partial] for all i.
std::optional<HomotopyEquivalence> connect_by_theta(const GConnection& from,
                                                    const GConnection& to);

}  // namespace algchar
