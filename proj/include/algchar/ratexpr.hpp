#pragma once

#include <optional>
#include <string>

#include "algchar/poly.hpp"

namespace algchar {

/// Exact rational function in canonical form: numerator and denominator are
/// coprime and the denominator's grlex-leading coefficient is 1.  Structural
/// equality therefore decides semantic equality.
class RatExpr {
 public:
  explicit RatExpr(CtxPtr ctx)
      : num_(Poly::zero(ctx)), den_(Poly::from_int(ctx, 1)) {}
  RatExpr(Poly num, Poly den);  // normalizes; den must be nonzero
  explicit RatExpr(Poly num);

  static RatExpr zero(CtxPtr ctx) { return RatExpr(std::move(ctx)); }
  static RatExpr one(CtxPtr ctx) { return from_int(std::move(ctx), 1); }
  static RatExpr from_int(CtxPtr ctx, long long v) {
    return RatExpr(Poly::from_int(std::move(ctx), v));
  }
  static RatExpr constant(CtxPtr ctx, Scalar c) {
    return RatExpr(Poly::constant(std::move(ctx), std::move(c)));
  }
  static RatExpr variable(CtxPtr ctx, int var) {
    return RatExpr(Poly::variable(std::move(ctx), var));
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const CtxPtr& ctx() const { return num_.ctx(); }
  Field field() const { return ctx()->field(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  Scalar constant_value() const { return num_.constant_value(); }

  RatExpr operator-() const;
  RatExpr operator+(const RatExpr& o) const;
  RatExpr operator-(const RatExpr& o) const;
  RatExpr operator*(const RatExpr& o) const;
  RatExpr operator/(const RatExpr& o) const;  // MathError on zero divisor
  RatExpr& operator+=(const RatExpr& o) { return *this = *this + o; }
  RatExpr& operator-=(const RatExpr& o) { return *this = *this - o; }
  RatExpr& operator*=(const RatExpr& o) { return *this = *this * o; }
  RatExpr inverse() const;
  RatExpr pow(int e) const;  // negative allowed on invertible inputs
  RatExpr scaled(const Scalar& s) const;

  bool operator==(const RatExpr& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RatExpr& o) const { return !(*this == o); }

  RatExpr derivative(int var) const;
  RatExpr conj() const;
  RatExpr substitute_scalar(int var, const Scalar& v) const;
  RatExpr substitute(int var, const RatExpr& v) const;

  RatExpr with_context(CtxPtr bigger, const std::vector<int>& var_map) const;
  /// Project onto a smaller context; every dropped variable must be absent.
  RatExpr drop_to_context(CtxPtr smaller, const std::vector<int>& var_map) const;

  std::string str() const;

 private:
  Poly num_, den_;
};

/// Pretty-printer for the expression grammar (see parser.hpp).  Printing then
/// parsing is the identity on canonical values.
std::string to_string(const Poly& p);
std::string to_string(const RatExpr& r);

}  // namespace algchar
