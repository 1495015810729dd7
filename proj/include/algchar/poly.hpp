#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "algchar/varctx.hpp"

namespace algchar {

using Exps = std::vector<std::uint16_t>;

/// grlex: higher total degree wins; ties broken lexicographically with the
/// earlier variable dominating.  Returns <0, 0, >0 like strcmp.
int cmp_grlex(const Exps& a, const Exps& b);

/// Sparse multivariate polynomial with Scalar coefficients.  Terms are kept
/// sorted in descending grlex order with no zero coefficients, so structural
/// equality is semantic equality.
class Poly {
 public:
  struct Term {
    Exps exps;
    Scalar c;
  };

  explicit Poly(CtxPtr ctx) : ctx_(std::move(ctx)) {}
  static Poly zero(CtxPtr ctx) { return Poly(std::move(ctx)); }
  static Poly constant(CtxPtr ctx, Scalar c);
  static Poly from_int(CtxPtr ctx, long long v);
  static Poly variable(CtxPtr ctx, int var);
  static Poly monomial(CtxPtr ctx, Exps e, Scalar c);

  const CtxPtr& ctx() const { return ctx_; }
  Field field() const { return ctx_->field(); }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_of(terms_[0].exps) == 0);
  }
  bool is_one() const { return is_constant() && constant_value().is_one(); }
  Scalar constant_value() const;  // requires is_constant()

  int total_degree() const;  // -1 for zero
  int degree_in(int var) const;
  bool depends_on(int var) const { return degree_in(var) > 0; }
  /// Leading (grlex-greatest) coefficient; zero scalar for the zero poly.
  Scalar leading_coeff() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const Scalar& s) const;
  Poly pow(unsigned e) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly derivative(int var) const;
  Poly conj() const;

  /// Substitute a scalar for one variable (result stays in the same context,
  /// with that variable now absent).
  Poly substitute_scalar(int var, const Scalar& v) const;

  /// View as univariate in `var`: index d holds the coefficient of var^d.
  std::vector<Poly> coeffs_in(int var) const;
  static Poly assemble_in(int var, const std::vector<Poly>& coeffs, CtxPtr ctx);

  /// Exact division; nullopt when the divisor does not divide exactly.
  std::optional<Poly> divide_exact(const Poly& d) const;

  /// Monic (leading coefficient 1) greatest common divisor.
  static Poly gcd(const Poly& a, const Poly& b);

  /// Re-embed into a context with more variables.  var_map[i] = index of my
  /// i-th variable in the new context.
  Poly with_context(CtxPtr bigger, const std::vector<int>& var_map) const;

  std::string str() const;

 private:
  static int total_of(const Exps& e) {
    int t = 0;
    for (auto x : e) t += x;
    return t;
  }
  void push_term(Exps e, Scalar c);  // assumes descending insertion order
  static Poly from_sorted(CtxPtr ctx, std::vector<Term> t);

  CtxPtr ctx_;
  std::vector<Term> terms_;
};

}  // namespace algchar
