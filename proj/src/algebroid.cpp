#include "algchar/algebroid.hpp"

#include <sstream>

namespace algchar {

std::string ValidationReport::summary() const {
  if (ok()) return "valid";
  std::ostringstream os;
  for (auto& p : problems) os << p << "; ";
  return os.str();
}

LieAlgebroid::LieAlgebroid(
    CtxPtr ctx, int rank, Matrix anchor,
    const std::vector<std::tuple<int, int, int, RatExpr>>& triples)
    : ctx_(std::move(ctx)), rank_(rank), anchor_(std::move(anchor)) {
  require(rank_ >= 0, "negative rank");
  require(anchor_.rows() == rank_ && anchor_.cols() == ctx_->n_chart(),
          "anchor must be rank x dim_m");
  for (auto& [i, j, k, v] : triples) {
    if (i < 0 || i >= rank_ || j < 0 || j >= rank_ || k < 0 || k >= rank_) {
      construction_problems_.push_back("structure index out of range");
      continue;
    }
    if (v.is_zero()) continue;
    if (i == j) {
      construction_problems_.push_back(
          "antisymmetry violation: nonzero c[" + std::to_string(i + 1) + "][" +
          std::to_string(i + 1) + "]");
      continue;
    }
    int a = i, b = j;
    RatExpr val = v;
    if (a > b) {
      std::swap(a, b);
      val = -val;
    }
    auto it = c_.find({a, b});
    if (it == c_.end()) {
      std::vector<RatExpr> row((std::size_t)rank_, RatExpr(ctx_));
      row[(std::size_t)k] = val;
      c_.emplace(std::make_pair(a, b), std::move(row));
    } else {
      auto& slot = it->second[(std::size_t)k];
      if (slot.is_zero()) {
        slot = val;
      } else if (slot != val) {
        // Duplicate declaration, or a (j,i) mirror that breaks antisymmetry.
        construction_problems_.push_back(
            "antisymmetry violation: conflicting entries for c[" +
            std::to_string(i + 1) + "][" + std::to_string(j + 1) + "][" +
            std::to_string(k + 1) + "]");
      }
    }
  }
}

std::vector<RatExpr> LieAlgebroid::bracket_coeffs(int i, int j) const {
  std::vector<RatExpr> out((std::size_t)rank_, RatExpr(ctx_));
  if (i == j) return out;
  bool flip = i > j;
  auto it = c_.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
  if (it == c_.end()) return out;
  for (int k = 0; k < rank_; ++k)
    out[(std::size_t)k] = flip ? -it->second[(std::size_t)k] : it->second[(std::size_t)k];
  return out;
}

RatExpr LieAlgebroid::apply_anchor(int i, const RatExpr& f) const {
  RatExpr out(ctx_);
  for (int mu = 0; mu < dim_m(); ++mu) {
    if (anchor_.at(i, mu).is_zero()) continue;
    out += anchor_.at(i, mu) * f.derivative(mu);
  }
  return out;
}

Matrix LieAlgebroid::apply_anchor(int i, const Matrix& m) const {
  Matrix out(ctx_, m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.at(r, c) = apply_anchor(i, m.at(r, c));
  return out;
}

namespace {

// Vector-field commutator of the anchor images of two sections given by
// constant generator indices.
std::vector<RatExpr> vf_commutator(const LieAlgebroid& a, int i, int j) {
  int m = a.dim_m();
  std::vector<RatExpr> out((std::size_t)m, RatExpr(a.ctx()));
  for (int mu = 0; mu < m; ++mu) {
    RatExpr s(a.ctx());
    for (int nu = 0; nu < m; ++nu) {
      s += a.anchor().at(i, nu) * a.anchor().at(j, mu).derivative(nu);
      s -= a.anchor().at(j, nu) * a.anchor().at(i, mu).derivative(nu);
    }
    out[(std::size_t)mu] = s;
  }
  return out;
}

}  // namespace

ValidationReport LieAlgebroid::validate() {
  ValidationReport rep;
  for (auto& p : construction_problems_) rep.add(p);

  if (field() == Field::Qi) {
    if (anchor_.conj() != anchor_)
      rep.add("anchor has non-real coefficients (base data must be real)");
    for (auto& [ij, row] : c_)
      for (auto& v : row)
        if (v.conj() != v) {
          rep.add("structure functions have non-real coefficients");
          break;
        }
  }
  if (point_base()) {
    for (auto& [ij, row] : c_)
      for (auto& v : row)
        if (!v.is_constant())
          rep.add("point-base algebroid with non-constant structure entries");
  }

  // Anchor-bracket compatibility rho([e_i,e_j]) = [rho(e_i), rho(e_j)].
  for (int i = 0; i < rank_; ++i)
    for (int j = i + 1; j < rank_; ++j) {
      auto cij = bracket_coeffs(i, j);
      auto vf = vf_commutator(*this, i, j);
      for (int mu = 0; mu < dim_m(); ++mu) {
        RatExpr lhs(ctx_);
        for (int k = 0; k < rank_; ++k) lhs += cij[(std::size_t)k] * anchor_.at(k, mu);
        if (lhs != vf[(std::size_t)mu])
          rep.add("anchor incompatible with bracket on (e" + std::to_string(i + 1) +
                  ", e" + std::to_string(j + 1) + ")");
      }
    }

  // Jacobi, expanded with the Leibniz rule through the bracket on sections.
  auto basis = [&](int i) {
    Section s{this, std::vector<RatExpr>((std::size_t)rank_, RatExpr(ctx_))};
    s.coeffs[(std::size_t)i] = RatExpr::one(ctx_);
    return s;
  };
  for (int i = 0; i < rank_; ++i)
    for (int j = i + 1; j < rank_; ++j)
      for (int k = j + 1; k < rank_; ++k) {
        Section jac{this, std::vector<RatExpr>((std::size_t)rank_, RatExpr(ctx_))};
        auto acc = [&](int a, int b, int c) {
          Section inner = bracket(*this, basis(b), basis(c));
          Section outer = bracket(*this, basis(a), inner);
          for (int t = 0; t < rank_; ++t)
            jac.coeffs[(std::size_t)t] += outer.coeffs[(std::size_t)t];
        };
        acc(i, j, k);
        acc(j, k, i);
        acc(k, i, j);
        for (int t = 0; t < rank_; ++t)
          if (!jac.coeffs[(std::size_t)t].is_zero()) {
            rep.add("Jacobi fails on (e" + std::to_string(i + 1) + ", e" +
                    std::to_string(j + 1) + ", e" + std::to_string(k + 1) + ")");
            break;
          }
      }

  validated_ = rep.ok();
  return rep;
}

Section bracket(const LieAlgebroid& a, const Section& s1, const Section& s2) {
  require(s1.alg == &a && s2.alg == &a, "sections over a different algebroid");
  int n = a.rank();
  Section out{&a, std::vector<RatExpr>((std::size_t)n, RatExpr(a.ctx()))};
  for (int i = 0; i < n; ++i) {
    const RatExpr& f = s1.coeffs[(std::size_t)i];
    for (int j = 0; j < n; ++j) {
      const RatExpr& g = s2.coeffs[(std::size_t)j];
      if (!f.is_zero() && !g.is_zero()) {
        auto cij = a.bracket_coeffs(i, j);
        RatExpr fg = f * g;
        for (int k = 0; k < n; ++k)
          if (!cij[(std::size_t)k].is_zero())
            out.coeffs[(std::size_t)k] += fg * cij[(std::size_t)k];
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    const RatExpr& g = s2.coeffs[(std::size_t)j];
    RatExpr s(a.ctx());
    for (int i = 0; i < n; ++i)
      if (!s1.coeffs[(std::size_t)i].is_zero() && !g.is_zero())
        s += s1.coeffs[(std::size_t)i] * a.apply_anchor(i, g);
    out.coeffs[(std::size_t)j] += s;
  }
  for (int i = 0; i < n; ++i) {
    const RatExpr& f = s1.coeffs[(std::size_t)i];
    RatExpr s(a.ctx());
    for (int j = 0; j < n; ++j)
      if (!s2.coeffs[(std::size_t)j].is_zero() && !f.is_zero())
        s += s2.coeffs[(std::size_t)j] * a.apply_anchor(j, f);
    out.coeffs[(std::size_t)i] -= s;
  }
  return out;
}

// ---------------------------------------------------------------------------

GForm GForm::function(const LieAlgebroid* alg, RatExpr f) {
  GForm w(alg);
  w.set_component({}, std::move(f));
  return w;
}

void GForm::add_component(const Tuple& t, const RatExpr& v) {
  if (v.is_zero()) return;
  auto it = comp_.find(t);
  if (it == comp_.end()) {
    comp_.emplace(t, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) comp_.erase(it);
  }
}

void GForm::set_component(const Tuple& t, RatExpr v) {
  if (v.is_zero())
    comp_.erase(t);
  else
    comp_.insert_or_assign(t, std::move(v));
}

const RatExpr* GForm::component(const Tuple& t) const {
  auto it = comp_.find(t);
  return it == comp_.end() ? nullptr : &it->second;
}

RatExpr GForm::eval(const std::vector<int>& idx) const {
  auto [t, sign] = normalize_tuple(idx);
  if (sign == 0) return RatExpr(alg_->ctx());
  const RatExpr* v = component(t);
  if (!v) return RatExpr(alg_->ctx());
  return sign > 0 ? *v : -*v;
}

int GForm::degree() const {
  if (comp_.empty()) return -1;
  int d = (int)comp_.begin()->first.size();
  for (auto& [t, v] : comp_)
    if ((int)t.size() != d) throw ShapeError("mixed-degree form has no degree");
  return d;
}

bool GForm::homogeneous() const {
  if (comp_.empty()) return true;
  std::size_t d = comp_.begin()->first.size();
  for (auto& [t, v] : comp_)
    if (t.size() != d) return false;
  return true;
}

GForm GForm::operator-() const {
  GForm w(alg_);
  for (auto& [t, v] : comp_) w.comp_.emplace(t, -v);
  return w;
}

GForm GForm::operator+(const GForm& o) const {
  require(alg_ == o.alg_, "forms over different algebroids");
  GForm w = *this;
  for (auto& [t, v] : o.comp_) w.add_component(t, v);
  return w;
}

GForm GForm::operator-(const GForm& o) const { return *this + (-o); }

GForm GForm::scaled(const RatExpr& f) const {
  GForm w(alg_);
  if (f.is_zero()) return w;
  for (auto& [t, v] : comp_) w.set_component(t, v * f);
  return w;
}

GForm GForm::scaled(const Scalar& s) const {
  GForm w(alg_);
  if (s.is_zero()) return w;
  for (auto& [t, v] : comp_) w.set_component(t, v.scaled(s));
  return w;
}

GForm GForm::conj() const {
  GForm w(alg_);
  for (auto& [t, v] : comp_) w.comp_.emplace(t, v.conj());
  return w;
}

bool GForm::operator==(const GForm& o) const {
  if (alg_ != o.alg_ || comp_.size() != o.comp_.size()) return false;
  return comp_ == o.comp_;
}

std::string GForm::str() const {
  if (comp_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [t, v] : comp_) {
    if (!first) os << " ; ";
    first = false;
    os << "[";
    for (std::size_t a = 0; a < t.size(); ++a) os << (a ? "," : "") << t[a] + 1;
    os << "] " << v.str();
  }
  return os.str();
}

GForm wedge(const GForm& a, const GForm& b) {
  require(a.algebroid() == b.algebroid(), "wedge over different algebroids");
  GForm out(a.algebroid());
  for (auto& [i, u] : a.components())
    for (auto& [j, v] : b.components()) {
      int s = shuffle_sign(i, j);
      if (s == 0) continue;
      RatExpr val = u * v;
      if (s < 0) val = -val;
      out.add_component(merge_tuples(i, j), val);
    }
  return out;
}

GForm d_algebroid(const LieAlgebroid& a, const GForm& w) {
  a.require_validated();
  require(w.algebroid() == &a, "form over a different algebroid");
  int n = a.rank();
  // Group input degrees present, then work per output tuple.
  std::vector<bool> deg_present;
  for (auto& [t, v] : w.components()) {
    if ((int)t.size() >= (int)deg_present.size()) deg_present.resize(t.size() + 1, false);
    deg_present[t.size()] = true;
  }
  GForm out(w.algebroid());
  for (int q = 0; q < (int)deg_present.size(); ++q) {
    if (!deg_present[q] || q + 1 > n) continue;
    for (const Tuple& t : increasing_tuples(n, q + 1)) {
      RatExpr val(a.ctx());
      for (int p = 0; p <= q; ++p) {
        Tuple rest = tuple_erase(t, p);
        const RatExpr* c = w.component(rest);
        if (c) {
          RatExpr term = a.apply_anchor(t[(std::size_t)p], *c);
          val += (p % 2 == 0) ? term : -term;
        }
      }
      for (int pa = 0; pa <= q; ++pa)
        for (int pb = pa + 1; pb <= q; ++pb) {
          auto cab = a.bracket_coeffs(t[(std::size_t)pa], t[(std::size_t)pb]);
          Tuple rest = tuple_erase(tuple_erase(t, pb), pa);
          int sgn = ((pa + pb) % 2 == 0) ? 1 : -1;
          for (int k = 0; k < n; ++k) {
            if (cab[(std::size_t)k].is_zero()) continue;
            std::vector<int> idx;
            idx.push_back(k);
            idx.insert(idx.end(), rest.begin(), rest.end());
            RatExpr term = w.eval(idx);
            if (term.is_zero()) continue;
            term = cab[(std::size_t)k] * term;
            val += sgn > 0 ? term : -term;
          }
        }
      out.add_component(t, val);
    }
  }
  return out;
}

}  // namespace algchar
