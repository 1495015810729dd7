#include "algchar/linalg.hpp"

namespace algchar {

namespace {

// Denominator-cleared working matrix: rows of polynomials plus the rational
// scale each row was multiplied by.
struct PolyRows {
  std::vector<std::vector<Poly>> w;
  std::vector<RatExpr> row_scale;
};

PolyRows clear_denominators(const Matrix& a, const Matrix* b) {
  CtxPtr ctx = a.ctx();
  PolyRows out;
  int cols = a.cols() + (b ? b->cols() : 0);
  for (int r = 0; r < a.rows(); ++r) {
    Poly lcm = Poly::from_int(ctx, 1);
    auto fold = [&](const RatExpr& x) {
      if (x.is_zero()) return;
      Poly g = Poly::gcd(lcm, x.den());
      lcm = lcm * *x.den().divide_exact(g);
    };
    for (int c = 0; c < a.cols(); ++c) fold(a.at(r, c));
    if (b)
      for (int c = 0; c < b->cols(); ++c) fold(b->at(r, c));
    std::vector<Poly> row;
    row.reserve((std::size_t)cols);
    auto scale = [&](const RatExpr& x) {
      if (x.is_zero()) return Poly::zero(ctx);
      return x.num() * *lcm.divide_exact(x.den());
    };
    for (int c = 0; c < a.cols(); ++c) row.push_back(scale(a.at(r, c)));
    if (b)
      for (int c = 0; c < b->cols(); ++c) row.push_back(scale(b->at(r, c)));
    out.w.push_back(std::move(row));
    out.row_scale.push_back(RatExpr(lcm));
  }
  return out;
}

struct Echelon {
  PolyRows m;
  std::vector<int> pivot_col;  // one entry per pivot row
  int sign = 1;
  Poly last_pivot;
  Echelon(CtxPtr ctx) : last_pivot(Poly::from_int(ctx, 1)) {}
};

// Fraction-free forward elimination with column pivoting.  Pivots are
// searched in the first `lead_cols` columns only; trailing columns (the
// right-hand side) are carried along.
Echelon bareiss(PolyRows m, int lead_cols, CtxPtr ctx) {
  Echelon e(ctx);
  int rows = (int)m.w.size();
  int cols = rows ? (int)m.w[0].size() : 0;
  Poly prev = Poly::from_int(ctx, 1);
  int r = 0;
  for (int col = 0; col < lead_cols && r < rows; ++col) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!m.w[i][col].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r) {
      std::swap(m.w[p], m.w[r]);
      std::swap(m.row_scale[p], m.row_scale[r]);
      e.sign = -e.sign;
    }
    const Poly pivot = m.w[r][col];
    for (int i = r + 1; i < rows; ++i) {
      const Poly head = m.w[i][col];
      for (int j = col + 1; j < cols; ++j) {
        Poly t = pivot * m.w[i][j] - head * m.w[r][j];
        auto q = t.divide_exact(prev);
        require(q.has_value(), "bareiss: inexact division");
        m.w[i][j] = std::move(*q);
      }
      m.w[i][col] = Poly::zero(ctx);
    }
    prev = pivot;
    e.pivot_col.push_back(col);
    ++r;
  }
  e.last_pivot = prev;
  e.m = std::move(m);
  return e;
}

}  // namespace

RatExpr determinant(const Matrix& m) {
  require(m.is_square(), "determinant of non-square matrix");
  CtxPtr ctx = m.ctx();
  if (m.rows() == 0) return RatExpr::one(ctx);
  PolyRows pr = clear_denominators(m, nullptr);
  RatExpr scale = RatExpr::one(ctx);
  for (auto& s : pr.row_scale) scale *= s;
  Echelon e = bareiss(std::move(pr), m.cols(), ctx);
  if ((int)e.pivot_col.size() < m.rows()) return RatExpr::zero(ctx);
  RatExpr d = RatExpr(e.last_pivot) / scale;
  return e.sign < 0 ? -d : d;
}

std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), "solve: row mismatch");
  CtxPtr ctx = a.ctx();
  Echelon e = bareiss(clear_denominators(a, &b), a.cols(), ctx);
  int rows = a.rows(), n = a.cols(), k = b.cols();
  int rk = (int)e.pivot_col.size();
  // Consistency: zero rows of A must carry zero right-hand sides.
  for (int i = rk; i < rows; ++i)
    for (int j = 0; j < k; ++j)
      if (!e.m.w[i][n + j].is_zero()) return std::nullopt;
  Matrix x = Matrix::zero(ctx, n, k);
  for (int i = rk - 1; i >= 0; --i) {
    int pc = e.pivot_col[i];
    RatExpr pivot = RatExpr(e.m.w[i][pc]);
    for (int j = 0; j < k; ++j) {
      RatExpr s = RatExpr(e.m.w[i][n + j]);
      for (int c = pc + 1; c < n; ++c) {
        if (e.m.w[i][c].is_zero() || x.at(c, j).is_zero()) continue;
        s -= RatExpr(e.m.w[i][c]) * x.at(c, j);
      }
      x.at(pc, j) = s / pivot;
    }
  }
  return x;
}

Matrix mat_inverse(const Matrix& m) {
  require(m.is_square(), "inverse of non-square matrix");
  auto x = solve_linear(m, Matrix::identity(m.ctx(), m.rows()));
  if (!x) throw MathError("matrix is singular");
  // A rank-deficient square system can still be "consistent" for some RHS
  // columns; verify the product to rule that out.
  if ((*x * m) != Matrix::identity(m.ctx(), m.rows()))
    throw MathError("matrix is singular");
  return *x;
}

int rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Echelon e = bareiss(clear_denominators(m, nullptr), m.cols(), m.ctx());
  return (int)e.pivot_col.size();
}

std::vector<Matrix> nullspace(const Matrix& m) {
  CtxPtr ctx = m.ctx();
  int n = m.cols();
  Echelon e = bareiss(clear_denominators(m, nullptr), n, ctx);
  std::vector<bool> is_pivot(n, false);
  for (int c : e.pivot_col) is_pivot[c] = true;
  std::vector<Matrix> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Matrix v = Matrix::zero(ctx, n, 1);
    v.at(f, 0) = RatExpr::one(ctx);
    for (int i = (int)e.pivot_col.size() - 1; i >= 0; --i) {
      int pc = e.pivot_col[i];
      RatExpr s(ctx);
      for (int c = pc + 1; c < n; ++c)
        if (!e.m.w[i][c].is_zero() && !v.at(c, 0).is_zero())
          s -= RatExpr(e.m.w[i][c]) * v.at(c, 0);
      v.at(pc, 0) = s / RatExpr(e.m.w[i][pc]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------

int scalar_rank(ScalarMat m) {
  int r = 0;
  for (int col = 0; col < m.cols() && r < m.rows(); ++col) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m.at(i, col).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int c = 0; c < m.cols(); ++c) std::swap(m.at(p, c), m.at(r, c));
    Scalar inv = m.at(r, col).inverse();
    for (int i = r + 1; i < m.rows(); ++i) {
      Scalar f = m.at(i, col) * inv;
      if (f.is_zero()) continue;
      for (int c = col; c < m.cols(); ++c)
        m.at(i, c) -= f * m.at(r, c);
    }
    ++r;
  }
  return r;
}

namespace {

struct SEchelon {
  ScalarMat m;
  std::vector<int> pivot_col;
};

SEchelon sreduce(ScalarMat m, int lead_cols) {
  SEchelon e{std::move(m), {}};
  int r = 0;
  for (int col = 0; col < lead_cols && r < e.m.rows(); ++col) {
    int p = -1;
    for (int i = r; i < e.m.rows(); ++i)
      if (!e.m.at(i, col).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int c = 0; c < e.m.cols(); ++c) std::swap(e.m.at(p, c), e.m.at(r, c));
    Scalar inv = e.m.at(r, col).inverse();
    for (int c = col; c < e.m.cols(); ++c) e.m.at(r, c) *= inv;
    for (int i = 0; i < e.m.rows(); ++i) {
      if (i == r || e.m.at(i, col).is_zero()) continue;
      Scalar f = e.m.at(i, col);
      for (int c = col; c < e.m.cols(); ++c) e.m.at(i, c) -= f * e.m.at(r, c);
    }
    e.pivot_col.push_back(col);
    ++r;
  }
  return e;
}

}  // namespace

std::optional<std::vector<Scalar>> scalar_solve(ScalarMat a, std::vector<Scalar> b) {
  int rows = a.rows(), n = a.cols();
  ScalarMat aug(a.field(), rows, n + 1);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < n; ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, n) = b[(std::size_t)r];
  }
  SEchelon e = sreduce(std::move(aug), n);
  int rk = (int)e.pivot_col.size();
  for (int i = rk; i < rows; ++i)
    if (!e.m.at(i, n).is_zero()) return std::nullopt;
  std::vector<Scalar> x((std::size_t)n, Scalar(a.field()));
  for (int i = 0; i < rk; ++i) x[(std::size_t)e.pivot_col[i]] = e.m.at(i, n);
  return x;
}

std::vector<std::vector<Scalar>> scalar_nullspace(ScalarMat a) {
  int n = a.cols();
  Field f = a.field();
  SEchelon e = sreduce(std::move(a), n);
  std::vector<bool> is_pivot((std::size_t)n, false);
  for (int c : e.pivot_col) is_pivot[(std::size_t)c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int fr = 0; fr < n; ++fr) {
    if (is_pivot[(std::size_t)fr]) continue;
    std::vector<Scalar> v((std::size_t)n, Scalar(f));
    v[(std::size_t)fr] = Scalar::integer(f, 1);
    for (int i = 0; i < (int)e.pivot_col.size(); ++i)
      v[(std::size_t)e.pivot_col[i]] = -e.m.at(i, fr);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace algchar
