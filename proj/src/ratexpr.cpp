#include "algchar/ratexpr.hpp"

#include <sstream>

namespace algchar {

RatExpr::RatExpr(Poly num) : num_(std::move(num)), den_(Poly::from_int(num_.ctx(), 1)) {}

RatExpr::RatExpr(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  check_context(num_.ctx(), den_.ctx());
  if (den_.is_zero()) throw MathError("division by the zero polynomial");
  if (num_.is_zero()) {
    den_ = Poly::from_int(num_.ctx(), 1);
    return;
  }
  if (den_.is_one()) return;
  if (den_.is_constant()) {
    num_ = num_.scaled(den_.constant_value().inverse());
    den_ = Poly::from_int(num_.ctx(), 1);
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (!g.is_one()) {
    num_ = *num_.divide_exact(g);
    den_ = *den_.divide_exact(g);
  }
  Scalar lc = den_.leading_coeff();
  if (!lc.is_one()) {
    Scalar inv = lc.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatExpr RatExpr::operator-() const {
  RatExpr r(ctx());
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

RatExpr RatExpr::operator+(const RatExpr& o) const {
  if (den_ == o.den_) return RatExpr(num_ + o.num_, den_);
  return RatExpr(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatExpr RatExpr::operator-(const RatExpr& o) const { return *this + (-o); }

RatExpr RatExpr::operator*(const RatExpr& o) const {
  return RatExpr(num_ * o.num_, den_ * o.den_);
}

RatExpr RatExpr::operator/(const RatExpr& o) const {
  if (o.is_zero()) throw MathError("division by zero rational function");
  return RatExpr(num_ * o.den_, den_ * o.num_);
}

RatExpr RatExpr::inverse() const {
  if (is_zero()) throw MathError("inverse of zero");
  return RatExpr(den_, num_);
}

RatExpr RatExpr::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatExpr r = one(ctx()), b = *this;
  for (unsigned k = (unsigned)e; k; k >>= 1) {
    if (k & 1) r = r * b;
    if (k > 1) b = b * b;
  }
  return r;
}

RatExpr RatExpr::scaled(const Scalar& s) const {
  RatExpr r(ctx());
  r.num_ = num_.scaled(s);
  r.den_ = r.num_.is_zero() ? Poly::from_int(ctx(), 1) : den_;
  return r;
}

RatExpr RatExpr::derivative(int var) const {
  if (den_.is_one()) return RatExpr(num_.derivative(var));
  return RatExpr(num_.derivative(var) * den_ - num_ * den_.derivative(var),
                 den_ * den_);
}

RatExpr RatExpr::conj() const { return RatExpr(num_.conj(), den_.conj()); }

RatExpr RatExpr::substitute_scalar(int var, const Scalar& v) const {
  return RatExpr(num_.substitute_scalar(var, v), den_.substitute_scalar(var, v));
}

RatExpr RatExpr::substitute(int var, const RatExpr& v) const {
  auto eval_poly = [&](const Poly& p) {
    // Collect by powers of var, then Horner in v.
    auto cs = p.coeffs_in(var);
    RatExpr acc = RatExpr::zero(ctx());
    for (int d = (int)cs.size() - 1; d >= 0; --d)
      acc = acc * v + RatExpr(cs[(std::size_t)d]);
    return acc;
  };
  return eval_poly(num_) / eval_poly(den_);
}

RatExpr RatExpr::with_context(CtxPtr bigger, const std::vector<int>& var_map) const {
  return RatExpr(num_.with_context(bigger, var_map),
                 den_.with_context(bigger, var_map));
}

RatExpr RatExpr::drop_to_context(CtxPtr smaller,
                                 const std::vector<int>& var_map) const {
  // var_map[i] = index in *this* context of smaller's i-th variable.
  std::vector<int> present(ctx()->size(), -1);
  for (std::size_t i = 0; i < var_map.size(); ++i) present[var_map[i]] = (int)i;
  auto drop_poly = [&](const Poly& p) {
    std::vector<Poly::Term> out;
    for (auto& t : p.terms()) {
      Exps e(smaller->size(), 0);
      for (int k = 0; k < (int)t.exps.size(); ++k) {
        if (t.exps[k] == 0) continue;
        if (present[k] < 0)
          throw ShapeError("drop_to_context: value depends on dropped variable");
        e[present[k]] = t.exps[k];
      }
      out.push_back({std::move(e), t.c});
    }
    Poly q(smaller);
    for (auto& t : out) q += Poly::monomial(smaller, t.exps, t.c);
    return q;
  };
  return RatExpr(drop_poly(num_), drop_poly(den_));
}

// ---------------------------------------------------------------------------
// Printing.  The emitted text is inside the parser grammar and re-parses to
// the same canonical value.

namespace {

std::string rat_str(const BigRat& q) {
  std::ostringstream os;
  os << q;  // "a" or "a/b", b > 0
  return os.str();
}

// Scalar as a factor.  `lead` selects the bare form used for a term's first
// factor; when false the result is safe to follow a '*'.
std::string scalar_factor(const Scalar& c) {
  if (c.is_real()) {
    std::string s = rat_str(c.re());
    if (c.re() < 0) return "(" + s + ")";
    return s;
  }
  if (c.re() == 0) {
    if (c.im() == 1) return "i";
    if (c.im() == -1) return "(-i)";
    if (c.im() < 0) return "(-" + rat_str(-c.im()) + "*i)";
    return rat_str(c.im()) + "*i";
  }
  std::string s = rat_str(c.re());
  if (c.im() > 0)
    s += " + " + (c.im() == 1 ? std::string("i") : rat_str(c.im()) + "*i");
  else
    s += " - " + (c.im() == -1 ? std::string("i") : rat_str(-c.im()) + "*i");
  return "(" + s + ")";
}

std::string monomial_str(const VarContext& ctx, const Exps& e) {
  std::string s;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!s.empty()) s += "*";
    s += ctx.name((int)k);
    if (e[k] > 1) s += "^" + std::to_string(e[k]);
  }
  return s;
}

}  // namespace

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  const VarContext& ctx = *p.ctx();
  std::string s;
  bool first = true;
  for (auto& t : p.terms()) {
    std::string mono = monomial_str(ctx, t.exps);
    Scalar c = t.c;
    std::string sep;
    if (first) {
      sep = "";
      // Pull a real minus sign out front for readability.
      if (c.is_real() && c.re() < 0) {
        sep = "-";
        c = -c;
      }
    } else if (c.is_real()) {
      sep = c.re() < 0 ? " - " : " + ";
      if (c.re() < 0) c = -c;
    } else {
      sep = " + ";
    }
    std::string body;
    if (mono.empty()) {
      body = c.is_real() ? rat_str(c.re()) : scalar_factor(c);
    } else if (c.is_one()) {
      body = mono;
    } else {
      body = (c.is_real() ? rat_str(c.re()) : scalar_factor(c)) + "*" + mono;
    }
    s += sep + body;
    first = false;
  }
  return s;
}

std::string to_string(const RatExpr& r) {
  if (r.is_polynomial()) return to_string(r.num());
  return "(" + to_string(r.num()) + ")/(" + to_string(r.den()) + ")";
}

std::string RatExpr::str() const { return to_string(*this); }
std::string Poly::str() const { return to_string(*this); }

}  // namespace algchar
