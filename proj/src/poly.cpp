#include "algchar/poly.hpp"

#include <algorithm>
#include <map>

namespace algchar {

int cmp_grlex(const Exps& a, const Exps& b) {
  int ta = 0, tb = 0;
  for (auto x : a) ta += x;
  for (auto x : b) tb += x;
  if (ta != tb) return ta < tb ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

namespace {
struct GrlexGreater {
  bool operator()(const Exps& a, const Exps& b) const {
    return cmp_grlex(a, b) > 0;
  }
};
}  // namespace

Poly Poly::constant(CtxPtr ctx, Scalar c) {
  Poly p(ctx);
  if (!c.is_zero()) p.terms_.push_back({Exps(ctx->size(), 0), std::move(c)});
  return p;
}

Poly Poly::from_int(CtxPtr ctx, long long v) {
  Field f = ctx->field();
  return constant(std::move(ctx), Scalar::integer(f, v));
}

Poly Poly::variable(CtxPtr ctx, int var) {
  require(var >= 0 && var < ctx->size(), "variable index out of range");
  Exps e(ctx->size(), 0);
  e[var] = 1;
  Field f = ctx->field();
  return monomial(std::move(ctx), std::move(e), Scalar::integer(f, 1));
}

Poly Poly::monomial(CtxPtr ctx, Exps e, Scalar c) {
  require((int)e.size() == ctx->size(), "exponent vector size mismatch");
  Poly p(std::move(ctx));
  if (!c.is_zero()) p.terms_.push_back({std::move(e), std::move(c)});
  return p;
}

Scalar Poly::constant_value() const {
  if (terms_.empty()) return Scalar(field());
  require(is_constant(), "polynomial is not constant");
  return terms_[0].c;
}

int Poly::total_degree() const {
  int d = -1;
  for (auto& t : terms_) d = std::max(d, total_of(t.exps));
  return d;
}

int Poly::degree_in(int var) const {
  int d = 0;
  for (auto& t : terms_) d = std::max<int>(d, t.exps[var]);
  return d;
}

Scalar Poly::leading_coeff() const {
  if (terms_.empty()) return Scalar(field());
  return terms_[0].c;
}

Poly Poly::from_sorted(CtxPtr ctx, std::vector<Term> t) {
  Poly p(std::move(ctx));
  p.terms_ = std::move(t);
  return p;
}

Poly Poly::operator-() const {
  std::vector<Term> t = terms_;
  for (auto& x : t) x.c = -x.c;
  return from_sorted(ctx_, std::move(t));
}

Poly Poly::operator+(const Poly& o) const {
  check_context(ctx_, o.ctx_);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (i == terms_.size()) {
      out.push_back(o.terms_[j++]);
    } else if (j == o.terms_.size()) {
      out.push_back(terms_[i++]);
    } else {
      int c = cmp_grlex(terms_[i].exps, o.terms_[j].exps);
      if (c > 0) {
        out.push_back(terms_[i++]);
      } else if (c < 0) {
        out.push_back(o.terms_[j++]);
      } else {
        Scalar s = terms_[i].c + o.terms_[j].c;
        if (!s.is_zero()) out.push_back({terms_[i].exps, std::move(s)});
        ++i, ++j;
      }
    }
  }
  return from_sorted(ctx_, std::move(out));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  check_context(ctx_, o.ctx_);
  if (is_zero() || o.is_zero()) return Poly(ctx_);
  std::map<Exps, Scalar, GrlexGreater> acc;
  for (auto& a : terms_)
    for (auto& b : o.terms_) {
      Exps e(a.exps.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = a.exps[k] + b.exps[k];
      Scalar prod = a.c * b.c;
      auto it = acc.find(e);
      if (it == acc.end())
        acc.emplace(std::move(e), std::move(prod));
      else
        it->second += prod;
    }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (!c.is_zero()) out.push_back({e, c});
  return from_sorted(ctx_, std::move(out));
}

Poly Poly::scaled(const Scalar& s) const {
  if (s.is_zero()) return Poly(ctx_);
  std::vector<Term> t = terms_;
  for (auto& x : t) x.c = x.c * s;
  return from_sorted(ctx_, std::move(t));
}

Poly Poly::pow(unsigned e) const {
  Poly r = from_int(ctx_, 1), b = *this;
  for (; e; e >>= 1) {
    if (e & 1) r = r * b;
    if (e > 1) b = b * b;
  }
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (!same_context(ctx_, o.ctx_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].exps != o.terms_[i].exps || terms_[i].c != o.terms_[i].c)
      return false;
  return true;
}

Poly Poly::derivative(int var) const {
  require(var >= 0 && var < ctx_->size(), "derivative: variable out of range");
  std::vector<Term> out;
  for (auto& t : terms_) {
    if (t.exps[var] == 0) continue;
    Exps e = t.exps;
    Scalar c = t.c * Scalar::integer(field(), e[var]);
    e[var] -= 1;
    out.push_back({std::move(e), std::move(c)});
  }
  // Dropping one exponent preserves the relative grlex order.
  return from_sorted(ctx_, std::move(out));
}

Poly Poly::conj() const {
  std::vector<Term> t = terms_;
  for (auto& x : t) x.c = x.c.conj();
  return from_sorted(ctx_, std::move(t));
}

Poly Poly::substitute_scalar(int var, const Scalar& v) const {
  Poly out(ctx_);
  for (auto& t : terms_) {
    Exps e = t.exps;
    unsigned d = e[var];
    e[var] = 0;
    out += monomial(ctx_, std::move(e), t.c * v.pow(d));
  }
  return out;
}

std::vector<Poly> Poly::coeffs_in(int var) const {
  int d = degree_in(var);
  std::vector<Poly> out((std::size_t)d + 1, Poly(ctx_));
  for (auto& t : terms_) {
    Exps e = t.exps;
    int k = e[var];
    e[var] = 0;
    out[k] += monomial(ctx_, std::move(e), t.c);
  }
  return out;
}

Poly Poly::assemble_in(int var, const std::vector<Poly>& coeffs, CtxPtr ctx) {
  Poly out(ctx);
  Poly x = variable(ctx, var);
  for (std::size_t d = 0; d < coeffs.size(); ++d)
    out += coeffs[d] * x.pow((unsigned)d);
  return out;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  check_context(ctx_, d.ctx_);
  if (d.is_zero()) return std::nullopt;
  Poly r = *this, q(ctx_);
  const Exps& de = d.terms_[0].exps;
  const Scalar& dc = d.terms_[0].c;
  while (!r.is_zero()) {
    const Exps& re = r.terms_[0].exps;
    Exps e(re.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (re[k] < de[k]) return std::nullopt;
      e[k] = re[k] - de[k];
    }
    Poly t = monomial(ctx_, std::move(e), r.terms_[0].c / dc);
    q += t;
    r -= t * d;
  }
  return q;
}

namespace {

Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scaled(p.leading_coeff().inverse());
}

// gcd over the coefficient ring of the univariate view (content).
Poly content_in(const Poly& p, int var) {
  Poly g(p.ctx());
  for (auto& c : p.coeffs_in(var)) {
    if (c.is_zero()) continue;
    g = Poly::gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

// Exact pseudo-remainder lc(g)^{delta+1} f mod g with respect to var
// (deg_v f >= deg_v g > 0).
Poly pseudo_rem(const Poly& f, const Poly& g, int var) {
  auto gc = g.coeffs_in(var);
  int dg = (int)gc.size() - 1;
  Poly lg = gc[(std::size_t)dg];
  Poly r = f;
  Poly x = Poly::variable(f.ctx(), var);
  int e = f.degree_in(var) - dg + 1;
  while (!r.is_zero() && r.degree_in(var) >= dg) {
    auto rc = r.coeffs_in(var);
    int dr = (int)rc.size() - 1;
    Poly t = rc[(std::size_t)dr] * x.pow((unsigned)(dr - dg));
    r = lg * r - t * g;
    --e;
  }
  // Top up skipped multiplier factors so the subresultant divisions stay
  // exact when the degree dropped by more than one per step.
  if (e > 0) r = r * lg.pow((unsigned)e);
  return r;
}

int top_var(const Poly& p) {
  for (int v = p.ctx()->size() - 1; v >= 0; --v)
    if (p.depends_on(v)) return v;
  return -1;
}

int count_vars(const Poly& a, const Poly& b) {
  int n = 0;
  for (int v = 0; v < a.ctx()->size(); ++v)
    if (a.depends_on(v) || b.depends_on(v)) ++n;
  return n;
}

// Field-coefficient Euclid for inputs in a single shared variable.
Poly gcd_univariate(Poly a, Poly b, int var) {
  while (!b.is_zero()) {
    // a mod b by monic long division.
    Poly bm = monic(b);
    auto bc = bm.coeffs_in(var);
    int db = (int)bc.size() - 1;
    Poly x = Poly::variable(a.ctx(), var);
    Poly r = a;
    while (!r.is_zero() && r.degree_in(var) >= db) {
      auto rc = r.coeffs_in(var);
      int dr = (int)rc.size() - 1;
      r = r - rc[(std::size_t)dr] * x.pow((unsigned)(dr - db)) * bm;
    }
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
  check_context(a.ctx_, b.ctx_);
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return from_int(a.ctx_, 1);
  if (a == b) return monic(a);
  // Trial divisions settle the common exact cases cheaply.
  if (a.divide_exact(b)) return monic(b);
  if (b.divide_exact(a)) return monic(a);

  int v = std::max(top_var(a), top_var(b));
  if (count_vars(a, b) == 1) return gcd_univariate(a, b, v);

  if (a.degree_in(v) == 0) return gcd(a, content_in(b, v));
  if (b.degree_in(v) == 0) return gcd(content_in(a, v), b);

  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly c = gcd(ca, cb);
  Poly pa = *a.divide_exact(ca), pb = *b.divide_exact(cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  // Subresultant PRS: pseudo-remainders scaled down by the standard
  // g, h factors to keep coefficient growth polynomial.
  Poly g = from_int(a.ctx_, 1), h = from_int(a.ctx_, 1);
  while (true) {
    int delta = pa.degree_in(v) - pb.degree_in(v);
    Poly r = pseudo_rem(pa, pb, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) return monic(c);
    pa = pb;
    Poly div = g * h.pow((unsigned)delta);
    pb = *r.divide_exact(div);
    g = pa.coeffs_in(v).back();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = *g.pow((unsigned)delta).divide_exact(h.pow((unsigned)(delta - 1)));
    }
  }
  return monic(c * *pb.divide_exact(content_in(pb, v)));
}

Poly Poly::with_context(CtxPtr bigger, const std::vector<int>& var_map) const {
  require((int)var_map.size() == ctx_->size(), "with_context: bad map size");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    Exps e(bigger->size(), 0);
    for (std::size_t k = 0; k < var_map.size(); ++k) e[var_map[k]] = t.exps[k];
    out.push_back({std::move(e), t.c});
  }
  std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) {
    return cmp_grlex(x.exps, y.exps) > 0;
  });
  return from_sorted(std::move(bigger), std::move(out));
}

}  // namespace algchar
