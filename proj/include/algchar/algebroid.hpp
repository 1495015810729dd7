#pragma once

#include <map>
#include <string>
#include <vector>

#include "algchar/matrix.hpp"
#include "algchar/tuple.hpp"

namespace algchar {

struct ValidationReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
  void add(std::string p) { problems.push_back(std::move(p)); }
  std::string summary() const;
};

/// Lie algebroid over a single coordinate chart.  Generators e_1..e_n,
/// anchor rho stored as an n x m matrix whose row i lists the coordinate
/// components of rho(e_i), structure functions c_ij^k with antisymmetry
/// built into storage.  dim_m = 0 models a Lie algebra.
class LieAlgebroid {
 public:
  /// triples: (i, j, k, expr) meaning [e_i, e_j] has e_k-coefficient expr,
  /// 0-based.  Entries with i > j are folded through antisymmetry;
  /// inconsistent or diagonal entries surface in validate().
  LieAlgebroid(CtxPtr ctx, int rank, Matrix anchor,
               const std::vector<std::tuple<int, int, int, RatExpr>>& triples);

  const CtxPtr& ctx() const { return ctx_; }
  Field field() const { return ctx_->field(); }
  int rank() const { return rank_; }
  int dim_m() const { return ctx_->n_chart(); }
  bool point_base() const { return dim_m() == 0; }
  const Matrix& anchor() const { return anchor_; }

  /// c_ij^. as a coefficient vector of length rank (signs handled).
  std::vector<RatExpr> bracket_coeffs(int i, int j) const;

  /// rho(e_i) applied to a function.
  RatExpr apply_anchor(int i, const RatExpr& f) const;
  Matrix apply_anchor(int i, const Matrix& m) const;

  ValidationReport validate();
  bool validated() const { return validated_; }
  void require_validated() const {
    if (!validated_) throw ShapeError("algebroid has not passed validation");
  }
  /// For internally constructed algebroids that are valid by construction.
  void mark_validated() { validated_ = true; }

 private:
  CtxPtr ctx_;
  int rank_;
  Matrix anchor_;
  // c_[i][j], i<j, vector of length rank.
  std::map<std::pair<int, int>, std::vector<RatExpr>> c_;
  std::vector<std::string> construction_problems_;
  bool validated_ = false;
};

/// Section written in the generator basis.
struct Section {
  const LieAlgebroid* alg;
  std::vector<RatExpr> coeffs;  // length rank
};

Section bracket(const LieAlgebroid& a, const Section& s1, const Section& s2);

/// Scalar algebroid form: components on strictly increasing generator
/// tuples; the empty tuple holds the degree-0 (function) part.  Mixed
/// degrees are allowed; absent tuples are zero.
class GForm {
 public:
  explicit GForm(const LieAlgebroid* alg) : alg_(alg) {}
  static GForm function(const LieAlgebroid* alg, RatExpr f);

  const LieAlgebroid* algebroid() const { return alg_; }
  const std::map<Tuple, RatExpr>& components() const { return comp_; }

  void add_component(const Tuple& t, const RatExpr& v);
  void set_component(const Tuple& t, RatExpr v);
  /// Signed lookup at an arbitrary index list.
  RatExpr eval(const std::vector<int>& idx) const;
  const RatExpr* component(const Tuple& t) const;

  bool is_zero() const { return comp_.empty(); }
  /// Common degree of all components; -1 for the zero form.  Throws when
  /// degrees are mixed.
  int degree() const;
  bool homogeneous() const;

  GForm operator-() const;
  GForm operator+(const GForm& o) const;
  GForm operator-(const GForm& o) const;
  GForm& operator+=(const GForm& o) { return *this = *this + o; }
  GForm scaled(const RatExpr& f) const;
  GForm scaled(const Scalar& s) const;
  GForm conj() const;
  bool operator==(const GForm& o) const;
  bool operator!=(const GForm& o) const { return !(*this == o); }

  std::string str() const;

 private:
  const LieAlgebroid* alg_;
  std::map<Tuple, RatExpr> comp_;
};

/// Exterior product (shuffle signs; bilinear; graded commutative).
GForm wedge(const GForm& a, const GForm& b);

/// Chevalley-Eilenberg / de Rham style differential, Lie-type formula with
/// the anchor acting on coefficients.  Requires a validated algebroid.
GForm d_algebroid(const LieAlgebroid& a, const GForm& w);

}  // namespace algchar
