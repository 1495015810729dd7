// Compares the serial reference kernels against the OpenMP paths on
// synthetic workloads and checks that both produce identical results.

#include <chrono>
#include <iostream>
#include <random>

#include "algchar/parallel.hpp"
#include "algchar/superbundle.hpp"

using namespace algchar;

namespace {

std::mt19937_64 rng(12345);

RatExpr random_poly(const CtxPtr& ctx, int deg) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  Poly p(ctx);
  for (int d = 0; d <= deg; ++d)
    for (int v = 0; v < ctx->size(); ++v) {
      Exps e((std::size_t)ctx->size(), 0);
      e[(std::size_t)v] = (std::uint16_t)d;
      p += Poly::monomial(ctx, e, Scalar::integer(ctx->field(), coeff(rng)));
    }
  return RatExpr(p);
}

Matrix random_matrix(const CtxPtr& ctx, int n, int deg) {
  Matrix m(ctx, n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m.at(r, c) = random_poly(ctx, deg);
  return m;
}

template <class F>
double time_ms(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main() {
  auto ctx = make_context(Field::Q, {"x", "y"});
  std::cout << "threads available: " << par::hardware_threads() << "\n\n";

  std::cout << "matrix product (polynomial entries, degree 2)\n";
  std::cout << "  n    serial(ms)  openmp(ms)  speedup  equal\n";
  for (int n : {8, 16, 24, 32}) {
    Matrix a = random_matrix(ctx, n, 2), b = random_matrix(ctx, n, 2);
    Matrix r1(ctx, 0, 0), r2(ctx, 0, 0);
    double t1 = time_ms([&] { r1 = mat_mul_serial(a, b); });
    double t2 = time_ms([&] { r2 = mat_mul_parallel(a, b); });
    std::printf("  %-4d %-11.1f %-11.1f %-8.2f %s\n", n, t1, t2, t1 / t2,
                r1 == r2 ? "yes" : "NO");
  }

  std::cout << "\nmatrix-form product over a rank-6 point algebroid\n";
  LieAlgebroid alg(make_context(Field::Q, {}), 6,
                   Matrix::zero(make_context(Field::Q, {}), 6, 0), {});
  alg.mark_validated();
  SuperComplex cx(alg.ctx(), {3, 3}, true, Matrix::zero(alg.ctx(), 6, 6));
  std::uniform_int_distribution<int> coeff(-3, 3);
  auto random_mform = [&](int degree) {
    MForm w(&alg, &cx);
    for (const Tuple& t : increasing_tuples(6, degree)) {
      Matrix m(alg.ctx(), 6, 6);
      for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c)
          m.at(r, c) = RatExpr::from_int(alg.ctx(), coeff(rng));
      w.set_component(t, std::move(m));
    }
    return w;
  };
  std::cout << "  deg  serial(ms)  openmp(ms)  speedup  equal\n";
  for (int d : {2, 3}) {
    MForm a = random_mform(d), b = random_mform(d);
    MForm r1(&alg, &cx), r2(&alg, &cx);
    double t1 = time_ms([&] { r1 = mform_product_serial(a, b); });
    double t2 = time_ms([&] { r2 = mform_product_parallel(a, b); });
    std::printf("  %-4d %-11.1f %-11.1f %-8.2f %s\n", d, t1, t2, t1 / t2,
                r1 == r2 ? "yes" : "NO");
  }
  return 0;
}
