#pragma once

// Exact Gaussian-rational scalars. All coefficient arithmetic in the
// project goes through this type; there is no floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace oshift {

using Rational = boost::multiprecision::cpp_rational;

struct Scalar {
  Rational re{0};
  Rational im{0};

  Scalar() = default;
  Scalar(int n) : re(n) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static Scalar imaginary_unit() { return Scalar(Rational(0), Rational(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_one() const { return re == 1 && im == 0; }
  bool is_real() const { return im == 0; }

  Scalar conj() const { return Scalar(re, -im); }

  Scalar& operator+=(const Scalar& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator-(const Scalar& a) { return Scalar(-a.re, -a.im); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return Scalar(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string str() const {
    auto rat = [](const Rational& r) { return r.str(); };
    if (im == 0) return rat(re);
    std::string imag;
    if (im == 1) {
      imag = "i";
    } else if (im == -1) {
      imag = "-i";
    } else {
      imag = rat(im) + "i";
    }
    if (re == 0) return imag;
    if (im > 0 && !(im == 1)) return "(" + rat(re) + "+" + imag + ")";
    if (im == 1) return "(" + rat(re) + "+i)";
    return "(" + rat(re) + imag + ")";
  }
};

}  // namespace oshift
