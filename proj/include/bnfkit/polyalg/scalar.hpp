#pragma once

// Scalar support for the polynomial algebra: a minimal complex type that works
// for both double and the MPFR-backed extended type, plus precision control.

#include <cmath>
#include <limits>

#include <boost/multiprecision/mpfr.hpp>

namespace bnfkit {

/// Variable-precision binary float; the mantissa is chosen at runtime through
/// ScopedPrecision.
using ExtendedReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                                   boost::multiprecision::et_off>;

/// Sets the default precision (decimal digits) of newly created ExtendedReal
/// values for the lifetime of the guard.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned digits10) : previous_(ExtendedReal::default_precision()) {
    ExtendedReal::default_precision(digits10);
  }
  ~ScopedPrecision() { ExtendedReal::default_precision(previous_); }
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned previous_;
};

template <class R>
struct ScalarTraits {
  /// Relative zero-pruning threshold (per homogeneous degree).
  static R prune_threshold() { return R(1e-14); }
  static R epsilon() { return std::numeric_limits<R>::epsilon(); }
};

template <>
struct ScalarTraits<ExtendedReal> {
  static ExtendedReal prune_threshold() { return epsilon() * 100; }
  static ExtendedReal epsilon() {
    using std::pow;
    return pow(ExtendedReal(10), -static_cast<int>(ExtendedReal::default_precision()));
  }
};

inline double to_double(double x) { return x; }
inline double to_double(const ExtendedReal& x) { return x.convert_to<double>(); }

template <class R>
struct Complex {
  R re{0};
  R im{0};

  Complex() = default;
  Complex(R r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(R r, R i) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    R r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator*=(const R& s) {
    re *= s;
    im *= s;
    return *this;
  }
  Complex& operator/=(const R& s) {
    re /= s;
    im /= s;
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    R d = o.re * o.re + o.im * o.im;
    R r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator*(Complex a, const R& s) { return a *= s; }
  friend Complex operator*(const R& s, Complex a) { return a *= s; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator/(Complex a, const R& s) { return a /= s; }
  friend Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

template <class R>
Complex<R> conj(const Complex<R>& z) {
  return Complex<R>(z.re, -z.im);
}

template <class R>
R norm(const Complex<R>& z) {
  return z.re * z.re + z.im * z.im;
}

template <class R>
R abs(const Complex<R>& z) {
  using std::sqrt;
  return sqrt(norm(z));
}

/// i^k for integer k.
template <class R>
Complex<R> i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return Complex<R>(R(1), R(0));
    case 1: return Complex<R>(R(0), R(1));
    case 2: return Complex<R>(R(-1), R(0));
    default: return Complex<R>(R(0), R(-1));
  }
}

}  // namespace bnfkit
