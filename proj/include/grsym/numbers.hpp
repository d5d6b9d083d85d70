#ifndef GRSYM_NUMBERS_HPP
#define GRSYM_NUMBERS_HPP

#include <gmpxx.h>
#include <complex>
#include <string>

namespace grsym {

using Int = mpz_class;
using Rat = mpq_class;

/// Gaussian rational a + b*i with exact rational parts.
struct GaussRat {
  Rat re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(long n) : re(n), im(0) {}
  GaussRat(const Rat& r) : re(r), im(0) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_one() const { return re == 1 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussRat conj() const { return GaussRat(re, -im); }

  GaussRat operator-() const { return GaussRat(-re, -im); }

  GaussRat& operator+=(const GaussRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) {
    Rat n = o.re * o.re + o.im * o.im;
    Rat r = (re * o.re + im * o.im) / n;
    Rat i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

  /// Total order used only for canonical tie-breaking, not arithmetic meaning.
  friend bool operator<(const GaussRat& a, const GaussRat& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }

  std::complex<double> to_complex() const {
    return {re.get_d(), im.get_d()};
  }
};

std::string to_string(const Rat& r);

/// Canonical text form: "3", "-1/2", "I", "-I", "2*I", "1+2*I", "1-I".
std::string to_string(const GaussRat& q);

/// True if q prints as a single product-friendly token (no embedded '+'/'-').
bool is_simple_coeff(const GaussRat& q);

}  // namespace grsym

#endif
