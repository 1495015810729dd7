#include <vector>

#include "algchar/parallel.hpp"
#include "algchar/superbundle.hpp"

namespace algchar {

MForm MForm::zero_form(const LieAlgebroid* alg, const SuperComplex* cx, Matrix m) {
  MForm w(alg, cx);
  w.set_component({}, std::move(m));
  return w;
}

void MForm::add_component(const Tuple& t, const Matrix& m) {
  if (m.is_zero()) return;
  auto it = comp_.find(t);
  if (it == comp_.end()) {
    comp_.emplace(t, m);
  } else {
    it->second += m;
    if (it->second.is_zero()) comp_.erase(it);
  }
}

void MForm::set_component(const Tuple& t, Matrix m) {
  if (m.is_zero())
    comp_.erase(t);
  else
    comp_.insert_or_assign(t, std::move(m));
}

const Matrix* MForm::component(const Tuple& t) const {
  auto it = comp_.find(t);
  return it == comp_.end() ? nullptr : &it->second;
}

Matrix MForm::eval(const std::vector<int>& idx) const {
  auto [t, sign] = normalize_tuple(idx);
  int r = cx_->total_rank();
  if (sign == 0) return Matrix::zero(alg_->ctx(), r, r);
  const Matrix* m = component(t);
  if (!m) return Matrix::zero(alg_->ctx(), r, r);
  return sign > 0 ? *m : -*m;
}

int MForm::degree() const {
  if (comp_.empty()) return -1;
  int d = (int)comp_.begin()->first.size();
  for (auto& [t, m] : comp_)
    if ((int)t.size() != d) throw ShapeError("mixed-degree matrix form");
  return d;
}

bool MForm::homogeneous() const {
  if (comp_.empty()) return true;
  std::size_t d = comp_.begin()->first.size();
  for (auto& [t, m] : comp_)
    if (t.size() != d) return false;
  return true;
}

int MForm::endo_parity() const {
  int p = -1;
  for (auto& [t, m] : comp_) {
    int q = cx_->matrix_parity(m);
    if (q < 0) continue;
    if (p < 0)
      p = q;
    else if (p != q)
      return 2;
    if (q == 2) return 2;
  }
  return p;
}

MForm MForm::degree_part(int k) const {
  MForm w(alg_, cx_);
  for (auto& [t, m] : comp_)
    if ((int)t.size() == k) w.comp_.emplace(t, m);
  return w;
}

MForm MForm::operator-() const {
  MForm w(alg_, cx_);
  for (auto& [t, m] : comp_) w.comp_.emplace(t, -m);
  return w;
}

MForm MForm::operator+(const MForm& o) const {
  require(alg_ == o.alg_ && cx_ == o.cx_, "matrix forms over different spaces");
  MForm w = *this;
  for (auto& [t, m] : o.comp_) w.add_component(t, m);
  return w;
}

MForm MForm::operator-(const MForm& o) const { return *this + (-o); }

MForm MForm::scaled(const RatExpr& f) const {
  MForm w(alg_, cx_);
  if (f.is_zero()) return w;
  for (auto& [t, m] : comp_) w.set_component(t, m.scaled(f));
  return w;
}

MForm MForm::scaled(const Scalar& s) const {
  MForm w(alg_, cx_);
  if (s.is_zero()) return w;
  for (auto& [t, m] : comp_) w.set_component(t, m.scaled(s));
  return w;
}

MForm MForm::conj() const {
  MForm w(alg_, cx_);
  for (auto& [t, m] : comp_) w.comp_.emplace(t, m.conj());
  return w;
}

namespace {

struct ProdTask {
  Tuple out;
  int sign;        // shuffle sign
  const Matrix* a;
  const Matrix* b;
  int jsize;       // form degree of the right factor
};

std::vector<ProdTask> product_tasks(const MForm& a, const MForm& b) {
  std::vector<ProdTask> tasks;
  for (auto& [i, am] : a.components())
    for (auto& [j, bm] : b.components()) {
      int s = shuffle_sign(i, j);
      if (s == 0) continue;
      tasks.push_back({merge_tuples(i, j), s, &am, &bm, (int)j.size()});
    }
  return tasks;
}

Matrix product_term(const SuperComplex& cx, const ProdTask& t) {
  // (w ox A)(h ox B) = (-1)^{p(A) |h|} w^h ox AB, per parity part of A.
  Matrix even = cx.even_part(*t.a);
  Matrix odd = cx.odd_part(*t.a);
  Matrix m = Matrix::zero(even.ctx(), even.rows(), even.cols());
  if (!even.is_zero()) m += mat_mul_serial(even, *t.b);
  if (!odd.is_zero()) {
    Matrix x = mat_mul_serial(odd, *t.b);
    m += (t.jsize % 2 ? -x : x);
  }
  return t.sign > 0 ? m : -m;
}

}  // namespace

MForm mform_product_serial(const MForm& a, const MForm& b) {
  require(a.algebroid() == b.algebroid() && a.complex_ref() == b.complex_ref(),
          "matrix forms over different spaces");
  MForm out(a.algebroid(), a.complex_ref());
  for (const ProdTask& t : product_tasks(a, b))
    out.add_component(t.out, product_term(*a.complex_ref(), t));
  return out;
}

MForm mform_product_parallel(const MForm& a, const MForm& b) {
  require(a.algebroid() == b.algebroid() && a.complex_ref() == b.complex_ref(),
          "matrix forms over different spaces");
  std::vector<ProdTask> tasks = product_tasks(a, b);
  std::vector<Matrix> terms;
  terms.reserve(tasks.size());
  CtxPtr ctx = a.algebroid()->ctx();
  int r = a.complex_ref()->total_rank();
  for (std::size_t i = 0; i < tasks.size(); ++i)
    terms.emplace_back(Matrix::zero(ctx, r, r));
  par::parallel_for(tasks.size(), [&](std::size_t i) {
    terms[i] = product_term(*a.complex_ref(), tasks[i]);
  });
  MForm out(a.algebroid(), a.complex_ref());
  for (std::size_t i = 0; i < tasks.size(); ++i)
    out.add_component(tasks[i].out, terms[i]);
  return out;
}

MForm MForm::operator*(const MForm& o) const {
  if (par::enabled() && comp_.size() * o.comp_.size() >= par::grain())
    return mform_product_parallel(*this, o);
  return mform_product_serial(*this, o);
}

MForm MForm::supercommutator(const MForm& o) const {
  require(alg_ == o.alg_ && cx_ == o.cx_, "matrix forms over different spaces");
  MForm out(alg_, cx_);
  for (auto& [i, am] : comp_) {
    Matrix parts_a[2] = {cx_->even_part(am), cx_->odd_part(am)};
    for (auto& [j, bm] : o.comp_) {
      int s1 = shuffle_sign(i, j);
      if (s1 == 0) continue;
      Matrix parts_b[2] = {cx_->even_part(bm), cx_->odd_part(bm)};
      int s2 = shuffle_sign(j, i);
      Tuple merged = merge_tuples(i, j);
      for (int p = 0; p < 2; ++p) {
        if (parts_a[p].is_zero()) continue;
        for (int q = 0; q < 2; ++q) {
          if (parts_b[q].is_zero()) continue;
          // a b term.
          {
            Matrix m = parts_a[p] * parts_b[q];
            int sg = s1 * ((p * (int)j.size()) % 2 ? -1 : 1);
            out.add_component(merged, sg > 0 ? m : -m);
          }
          // -(-1)^{|a||b|} b a term.
          {
            Matrix m = parts_b[q] * parts_a[p];
            int total = ((int)i.size() + p) * ((int)j.size() + q);
            int sg = -s2 * ((q * (int)i.size()) % 2 ? -1 : 1) *
                     (total % 2 ? -1 : 1);
            out.add_component(merged, sg > 0 ? m : -m);
          }
        }
      }
    }
  }
  return out;
}

GForm MForm::supertrace() const {
  GForm out(alg_);
  for (auto& [t, m] : comp_) out.add_component(t, cx_->supertrace(m));
  return out;
}

bool MForm::operator==(const MForm& o) const {
  return alg_ == o.alg_ && cx_ == o.cx_ && comp_ == o.comp_;
}

GForm supertrace(const MForm& w) { return w.supertrace(); }

}  // namespace algchar
