#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>

namespace qlip {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline double to_double(const Rat& r) { return r.get_d(); }

/// Gaussian rational a + b*i with exact rational parts.
struct GaussRat {
  Rat re{0};
  Rat im{0};

  GaussRat() = default;
  GaussRat(Rat r) : re(std::move(r)) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  GaussRat(long r) : re(rat(r)) {}

  static GaussRat i() { return GaussRat(rat(0), rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }

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

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }

  GaussRat inverse() const {
    Rat n = re * re + im * im;
    return GaussRat(re / n, -im / n);
  }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  std::string str() const;
};

std::string rat_str(const Rat& r);

inline std::string GaussRat::str() const {
  if (im == 0) return rat_str(re);
  if (re == 0) return rat_str(im) + "*i";
  return "(" + rat_str(re) + (im > 0 ? "+" : "") + rat_str(im) + "*i)";
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace qlip
