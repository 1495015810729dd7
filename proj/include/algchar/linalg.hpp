#pragma once

#include <optional>

#include "algchar/matrix.hpp"

namespace algchar {

/// Exact determinant by fraction-free (Bareiss) elimination on the
/// denominator-cleared polynomial matrix.
RatExpr determinant(const Matrix& m);

/// Exact inverse; MathError when singular as a rational-function matrix.
Matrix mat_inverse(const Matrix& m);

/// Solve A X = B over the rational-function field.  A may be rectangular or
/// rank-deficient; free variables are set to zero (deterministic).  Returns
/// nullopt when the system is inconsistent.
std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& b);

int rank(const Matrix& m);

/// Basis of the right kernel, one column vector per basis element.
std::vector<Matrix> nullspace(const Matrix& m);

// ---------------------------------------------------------------------------
// Dense scalar (degree-zero) linear algebra used by the cohomology module.

class ScalarMat {
 public:
  ScalarMat(Field f, int rows, int cols)
      : field_(f), rows_(rows), cols_(cols),
        a_((std::size_t)rows * cols, Scalar(f)) {}
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Field field() const { return field_; }
  Scalar& at(int r, int c) { return a_[(std::size_t)r * cols_ + c]; }
  const Scalar& at(int r, int c) const { return a_[(std::size_t)r * cols_ + c]; }

 private:
  Field field_;
  int rows_, cols_;
  std::vector<Scalar> a_;
};

int scalar_rank(ScalarMat m);
/// Solve A x = b exactly, free variables zero; nullopt when inconsistent.
std::optional<std::vector<Scalar>> scalar_solve(ScalarMat a, std::vector<Scalar> b);
std::vector<std::vector<Scalar>> scalar_nullspace(ScalarMat a);

}  // namespace algchar
