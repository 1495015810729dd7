#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "algchar/errors.hpp"

namespace algchar {

using BigRat = boost::multiprecision::cpp_rational;

enum class Field { Q, Qi };

inline const char* field_name(Field f) { return f == Field::Q ? "Q" : "Qi"; }

/// Exact scalar over Q or Q(i).  Boost keeps each rational part in lowest
/// terms with positive denominator, so structural equality is semantic
/// equality.  The imaginary part is identically zero in Q mode.
class Scalar {
 public:
  Scalar() : field_(Field::Q) {}
  explicit Scalar(Field f) : field_(f) {}
  Scalar(Field f, BigRat re) : field_(f), re_(std::move(re)) {}
  Scalar(Field f, BigRat re, BigRat im)
      : field_(f), re_(std::move(re)), im_(std::move(im)) {
    if (field_ == Field::Q && im_ != 0)
      throw MathError("imaginary part in a Q scalar");
  }

  static Scalar integer(Field f, long long v) { return Scalar(f, BigRat(v)); }
  static Scalar rational(Field f, long long num, long long den) {
    if (den == 0) throw MathError("rational with zero denominator");
    return Scalar(f, BigRat(num) / BigRat(den));
  }
  static Scalar imaginary_unit(Field f) {
    if (f != Field::Qi) throw MathError("imaginary unit requested over Q");
    return Scalar(f, 0, 1);
  }

  Field field() const { return field_; }
  const BigRat& re() const { return re_; }
  const BigRat& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  Scalar operator-() const { return Scalar(field_, -re_, -im_); }

  Scalar operator+(const Scalar& o) const {
    check(o);
    return Scalar(field_, re_ + o.re_, im_ + o.im_);
  }
  Scalar operator-(const Scalar& o) const {
    check(o);
    return Scalar(field_, re_ - o.re_, im_ - o.im_);
  }
  Scalar operator*(const Scalar& o) const {
    check(o);
    return Scalar(field_, re_ * o.re_ - im_ * o.im_,
                  re_ * o.im_ + im_ * o.re_);
  }
  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar inverse() const {
    if (is_zero()) throw MathError("scalar division by zero");
    BigRat n = re_ * re_ + im_ * im_;
    return Scalar(field_, re_ / n, -im_ / n);
  }

  Scalar conj() const { return Scalar(field_, re_, -im_); }

  Scalar pow(unsigned e) const {
    Scalar r = integer(field_, 1), b = *this;
    for (; e; e >>= 1) {
      if (e & 1) r = r * b;
      if (e > 1) b = b * b;
    }
    return r;
  }

  bool operator==(const Scalar& o) const {
    return field_ == o.field_ && re_ == o.re_ && im_ == o.im_;
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

 private:
  void check(const Scalar& o) const {
    if (field_ != o.field_) throw ShapeError("mixed scalar fields");
  }

  Field field_;
  BigRat re_{0};
  BigRat im_{0};
};

}  // namespace algchar
