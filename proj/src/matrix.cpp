#include "algchar/matrix.hpp"

#include <sstream>

#include "algchar/parallel.hpp"

namespace algchar {

Matrix Matrix::identity(CtxPtr ctx, int n) {
  Matrix m(ctx, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = RatExpr::one(ctx);
  return m;
}

bool Matrix::is_zero() const {
  for (auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

Matrix Matrix::operator-() const {
  Matrix m(ctx_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = -e_[i];
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch in +");
  Matrix m(ctx_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] + o.e_[i];
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix mat_mul_serial(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "matrix shape mismatch in *");
  Matrix m(a.ctx(), a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      RatExpr s(a.ctx());
      for (int k = 0; k < a.cols(); ++k) {
        if (a.at(i, k).is_zero() || b.at(k, j).is_zero()) continue;
        s += a.at(i, k) * b.at(k, j);
      }
      m.at(i, j) = std::move(s);
    }
  return m;
}

Matrix mat_mul_parallel(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "matrix shape mismatch in *");
  Matrix m(a.ctx(), a.rows(), b.cols());
  const std::size_t n = (std::size_t)a.rows() * b.cols();
  par::parallel_for(n, [&](std::size_t idx) {
    int i = (int)(idx / b.cols());
    int j = (int)(idx % b.cols());
    RatExpr s(a.ctx());
    for (int k = 0; k < a.cols(); ++k) {
      if (a.at(i, k).is_zero() || b.at(k, j).is_zero()) continue;
      s += a.at(i, k) * b.at(k, j);
    }
    m.at(i, j) = std::move(s);
  });
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (par::enabled() && (std::size_t)rows_ * o.cols_ >= par::grain())
    return mat_mul_parallel(*this, o);
  return mat_mul_serial(*this, o);
}

Matrix Matrix::scaled(const RatExpr& f) const {
  Matrix m(ctx_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] * f;
  return m;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix m(ctx_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i].scaled(s);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(ctx_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
  return m;
}

Matrix Matrix::conj() const {
  return map([](const RatExpr& x) { return x.conj(); });
}

RatExpr Matrix::trace() const {
  require(is_square(), "trace of non-square matrix");
  RatExpr s(ctx_);
  for (int i = 0; i < rows_; ++i) s += at(i, i);
  return s;
}

Matrix Matrix::map(const std::function<RatExpr(const RatExpr&)>& f) const {
  Matrix m(ctx_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = f(e_[i]);
  return m;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] != o.e_[i]) return false;
  return true;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int r = 0; r < rows_; ++r) {
    os << (r ? "; " : "");
    for (int c = 0; c < cols_; ++c) os << (c ? ", " : "") << at(r, c).str();
  }
  os << "]";
  return os.str();
}

}  // namespace algchar
