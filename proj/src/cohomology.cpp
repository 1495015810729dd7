#include "algchar/cohomology.hpp"

#include <map>

#include "algchar/linalg.hpp"

namespace algchar {

TruncationWindow default_window(std::initializer_list<const GForm*> forms) {
  int d = 0;
  for (const GForm* w : forms)
    for (auto& [t, v] : w->components())
      d = std::max({d, v.num().total_degree(), v.den().total_degree()});
  return TruncationWindow{d + 2};
}

namespace {

// d of the dual-basis (q-1)-form on tuple s, as a GForm.
GForm d_of_basis(const LieAlgebroid& a, const Tuple& s, const Poly& coeff) {
  GForm w(&a);
  w.set_component(s, RatExpr(coeff));
  return d_algebroid(a, w);
}

bool polynomial_data(const LieAlgebroid& a) {
  for (int i = 0; i < a.rank(); ++i) {
    for (int mu = 0; mu < a.dim_m(); ++mu)
      if (!a.anchor().at(i, mu).is_polynomial()) return false;
    for (int j = i + 1; j < a.rank(); ++j)
      for (auto& c : a.bracket_coeffs(i, j))
        if (!c.is_polynomial()) return false;
  }
  return true;
}

bool polynomial_form(const GForm& w) {
  for (auto& [t, v] : w.components())
    if (!v.is_polynomial()) return false;
  return true;
}

// Row key of the linear system: (tuple, monomial exponents).
using RowKey = std::pair<Tuple, Exps>;

void expand_into(const GForm& w, std::map<RowKey, Scalar>& out, Field f) {
  for (auto& [t, v] : w.components())
    for (auto& term : v.num().terms()) {
      RowKey key{t, term.exps};
      auto it = out.find(key);
      if (it == out.end())
        out.emplace(std::move(key), term.c);
      else
        it->second += term.c;
    }
  (void)f;
}

// All chart monomials of total degree <= d.
std::vector<Exps> monomials_up_to(const CtxPtr& ctx, int d) {
  std::vector<Exps> out;
  Exps cur((std::size_t)ctx->size(), 0);
  int m = ctx->n_chart();
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == m) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[(std::size_t)var] = (std::uint16_t)e;
      rec(var + 1, left - e);
    }
    cur[(std::size_t)var] = 0;
  };
  rec(0, d);
  return out;
}

ExactnessResult search_primitive(const LieAlgebroid& a, const GForm& w, int q,
                                 int max_deg, bool exact_decision) {
  Field f = a.field();
  // Candidate basis for primitives.
  struct Basis {
    Tuple t;
    Exps mono;
    GForm image;
  };
  std::vector<Basis> basis;
  std::vector<Exps> monos =
      a.point_base() ? std::vector<Exps>{Exps((std::size_t)a.ctx()->size(), 0)}
                     : monomials_up_to(a.ctx(), max_deg);
  for (const Tuple& t : increasing_tuples(a.rank(), q - 1))
    for (const Exps& e : monos) {
      Poly coeff = Poly::monomial(a.ctx(), e, Scalar::integer(f, 1));
      GForm img = d_of_basis(a, t, coeff);
      if (img.is_zero() && !exact_decision) continue;
      basis.push_back({t, e, std::move(img)});
    }

  // Assemble the scalar system sum_b x_b image_b = w.
  std::map<RowKey, Scalar> wanted;
  expand_into(w, wanted, f);
  std::map<RowKey, int> row_index;
  auto row_of = [&](const RowKey& k) {
    auto it = row_index.find(k);
    if (it != row_index.end()) return it->second;
    int idx = (int)row_index.size();
    row_index.emplace(k, idx);
    return idx;
  };
  for (auto& [k, v] : wanted) row_of(k);
  std::vector<std::map<int, Scalar>> cols;
  for (auto& b : basis) {
    std::map<RowKey, Scalar> img;
    expand_into(b.image, img, f);
    std::map<int, Scalar> col;
    for (auto& [k, v] : img) col.emplace(row_of(k), v);
    cols.push_back(std::move(col));
  }
  int rows = (int)row_index.size();
  ScalarMat sys(f, rows, (int)basis.size());
  for (int c = 0; c < (int)cols.size(); ++c)
    for (auto& [r, v] : cols[(std::size_t)c]) sys.at(r, c) = v;
  std::vector<Scalar> rhs((std::size_t)rows, Scalar(f));
  for (auto& [k, v] : wanted) rhs[(std::size_t)row_index.at(k)] = v;

  auto sol = scalar_solve(std::move(sys), std::move(rhs));
  if (!sol) {
    if (exact_decision) return {Exactness::NOT_EXACT, std::nullopt};
    return {Exactness::NOT_FOUND_AT_TRUNCATION, std::nullopt};
  }
  GForm prim(&a);
  for (std::size_t b = 0; b < basis.size(); ++b) {
    if ((*sol)[b].is_zero()) continue;
    prim.add_component(basis[b].t,
                       RatExpr(Poly::monomial(a.ctx(), basis[b].mono, (*sol)[b])));
  }
  GForm check = d_algebroid(a, prim);
  if (check != w) throw MathError("primitive failed verification");
  return {Exactness::EXACT, std::move(prim)};
}

}  // namespace

std::vector<int> cohomology_dims(const LieAlgebroid& a) {
  a.require_validated();
  if (!a.point_base())
    throw MathError("cohomology_dims is only defined at a point base");
  int n = a.rank();
  Field f = a.field();
  // rank of d: C^q -> C^{q+1} for each q.
  std::vector<int> dranks((std::size_t)n + 1, 0);
  for (int q = 0; q <= n; ++q) {
    auto dom = increasing_tuples(n, q);
    auto cod = increasing_tuples(n, q + 1);
    std::map<Tuple, int> cod_index;
    for (int c = 0; c < (int)cod.size(); ++c) cod_index.emplace(cod[(std::size_t)c], c);
    ScalarMat m(f, (int)cod.size(), (int)dom.size());
    for (int c = 0; c < (int)dom.size(); ++c) {
      GForm img = d_of_basis(a, dom[(std::size_t)c],
                             Poly::from_int(a.ctx(), 1));
      for (auto& [t, v] : img.components())
        m.at(cod_index.at(t), c) = v.constant_value();
    }
    dranks[(std::size_t)q] = scalar_rank(std::move(m));
  }
  std::vector<int> dims;
  auto binom = [&](int k) {
    long b = 1;
    for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return (int)b;
  };
  for (int q = 0; q <= n; ++q) {
    int prev = q == 0 ? 0 : dranks[(std::size_t)q - 1];
    dims.push_back(binom(q) - dranks[(std::size_t)q] - prev);
  }
  return dims;
}

ExactnessResult is_exact(const LieAlgebroid& a, const GForm& w,
                         TruncationWindow window) {
  a.require_validated();
  if (!d_algebroid(a, w).is_zero()) throw MathError("form is not closed");
  if (w.is_zero()) return {Exactness::EXACT, GForm(&a)};
  int q = w.degree();
  if (q == 0) {
    // Closed functions: no (-1)-forms, so only the zero function is exact.
    if (a.point_base()) return {Exactness::NOT_EXACT, std::nullopt};
    return {Exactness::NOT_FOUND_AT_TRUNCATION, std::nullopt};
  }
  if (a.point_base()) return search_primitive(a, w, q, 0, true);
  if (!polynomial_data(a) || !polynomial_form(w))
    return {Exactness::NOT_FOUND_AT_TRUNCATION, std::nullopt};
  return search_primitive(a, w, q, window.max_poly_degree, false);
}

CompareResult classes_equal(const LieAlgebroid& a, const GForm& w, const GForm& v,
                            TruncationWindow window) {
  if (!w.is_zero() && !v.is_zero() && w.homogeneous() && v.homogeneous() &&
      w.degree() != v.degree())
    throw ShapeError("classes_equal: degree mismatch");
  ExactnessResult r = is_exact(a, w - v, window);
  switch (r.status) {
    case Exactness::EXACT:
      return {ClassCompare::EQUAL, std::move(r.primitive)};
    case Exactness::NOT_EXACT:
      return {ClassCompare::NOT_EQUAL, std::nullopt};
    default:
      return {ClassCompare::UNDECIDED_AT_TRUNCATION, std::nullopt};
  }
}

}  // namespace algchar
