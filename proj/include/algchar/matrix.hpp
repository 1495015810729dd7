#pragma once

#include <functional>
#include <vector>

#include "algchar/ratexpr.hpp"

namespace algchar {

/// Dense matrix of exact rational functions over one shared context.
class Matrix {
 public:
  Matrix(CtxPtr ctx, int rows, int cols)
      : ctx_(std::move(ctx)), rows_(rows), cols_(cols),
        e_((std::size_t)rows * cols, RatExpr(ctx_)) {
    require(rows >= 0 && cols >= 0, "negative matrix dimension");
  }

  static Matrix identity(CtxPtr ctx, int n);
  static Matrix zero(CtxPtr ctx, int rows, int cols) {
    return Matrix(std::move(ctx), rows, cols);
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const CtxPtr& ctx() const { return ctx_; }

  RatExpr& at(int r, int c) { return e_[(std::size_t)r * cols_ + c]; }
  const RatExpr& at(int r, int c) const { return e_[(std::size_t)r * cols_ + c]; }

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  Matrix operator-() const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;  // kernel-dispatched product
  Matrix scaled(const RatExpr& f) const;
  Matrix scaled(const Scalar& s) const;
  Matrix& operator+=(const Matrix& o) { return *this = *this + o; }
  Matrix& operator-=(const Matrix& o) { return *this = *this - o; }

  Matrix transpose() const;
  Matrix conj() const;
  Matrix conj_transpose() const { return conj().transpose(); }
  RatExpr trace() const;

  Matrix map(const std::function<RatExpr(const RatExpr&)>& f) const;

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  std::string str() const;

 private:
  CtxPtr ctx_;
  int rows_, cols_;
  std::vector<RatExpr> e_;
};

/// Reference product, plain triple loop on one thread.
Matrix mat_mul_serial(const Matrix& a, const Matrix& b);
/// OpenMP product, one task per output entry; exact same result.
Matrix mat_mul_parallel(const Matrix& a, const Matrix& b);

/// Commutator ab - ba.
Matrix commutator(const Matrix& a, const Matrix& b);

}  // namespace algchar
