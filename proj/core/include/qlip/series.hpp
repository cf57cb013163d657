#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlip/param_poly.hpp"

namespace qlip {

/// Exact Laurent-type series in the two branch factors
///   (x1 - i*eps)^(a/2) * (x1 + i*eps)^(b/2),  a, b in Z,
/// with ParamPoly coefficients. Closed under +, *, d/dx1 and complex
/// conjugation (which swaps the two factors). Monomials in distinct (a,b)
/// are linearly independent as functions of x1 > 0, so representation is
/// unique and equality means an empty difference.
class BiSeries {
 public:
  BiSeries() = default;
  explicit BiSeries(const SymTable* tab) : tab_(tab) {}

  static BiSeries constant(const SymTable* tab, GaussRat c);
  static BiSeries constant(const SymTable* tab, ParamPoly c);
  /// c * (x1 - i eps)^(a/2) (x1 + i eps)^(b/2)
  static BiSeries monomial(const SymTable* tab, int a, int b, ParamPoly c);
  static BiSeries monomial(const SymTable* tab, int a, int b, GaussRat c);
  /// x1 = ((x1 - i eps) + (x1 + i eps)) / 2
  static BiSeries x1(const SymTable* tab);

  bool is_zero() const { return terms_.empty(); }
  const std::map<std::pair<int, int>, ParamPoly>& terms() const { return terms_; }
  const SymTable* table() const { return tab_; }

  BiSeries operator-() const;
  BiSeries& operator+=(const BiSeries& o);
  BiSeries& operator-=(const BiSeries& o);
  friend BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
  friend BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }
  friend BiSeries operator*(const BiSeries& a, const BiSeries& b);
  BiSeries& operator*=(const BiSeries& o) { return *this = *this * o; }
  bool operator==(const BiSeries& o) const { return terms_ == o.terms_; }

  BiSeries scaled(const GaussRat& c) const;
  BiSeries scaled(const ParamPoly& c) const;
  BiSeries conj() const;
  BiSeries ddx() const;

  /// Antiderivative; defined when every term has b == 0 and a != -2
  /// (a pure (x1 - i eps) series with no logarithmic term).
  std::optional<BiSeries> antiderivative() const;

  /// Inverse of a single-monomial series.
  BiSeries inverse_monomial() const;

  /// Extract the sub-series whose ParamPoly coefficient multiplies the exact
  /// parameter monomial `m`; result has scalar (constant) coefficients.
  BiSeries param_coefficient(const ParamPoly::Monomial& m) const;

  /// The two branch factors satisfy zp - zm = 2 i eps, so monomials are not
  /// linearly independent. For a fixed rational eps this reduces a series to
  /// the canonical partial-fraction form (poles split between zm = 0 and
  /// zp = 0, polynomial part in zm, half-integer sector units untouched), on
  /// which is_zero() is a true zero test.
  BiSeries normalized(const Rat& eps) const;

  std::complex<double> eval(double x1, double eps,
                            const std::vector<std::complex<double>>& params = {}) const;

  std::string str() const;

 private:
  void add_term(int a, int b, ParamPoly c);
  const SymTable* tab_ = nullptr;
  std::map<std::pair<int, int>, ParamPoly> terms_;
};

/// Polynomial in x2 and the formal inverse-order marker T (one unit of T per
/// power of tau^{-1} in an expansion), with BiSeries coefficients.
class X2TPoly {
 public:
  X2TPoly() = default;
  explicit X2TPoly(const SymTable* tab) : tab_(tab) {}

  static X2TPoly term(int x2_pow, int t_pow, BiSeries c);

  bool is_zero() const { return terms_.empty(); }
  const std::map<std::pair<int, int>, BiSeries>& terms() const { return terms_; }
  const SymTable* table() const { return tab_; }

  BiSeries coeff(int x2_pow, int t_pow) const;
  void set(int x2_pow, int t_pow, BiSeries c);
  void add(int x2_pow, int t_pow, const BiSeries& c);

  X2TPoly operator-() const;
  X2TPoly& operator+=(const X2TPoly& o);
  X2TPoly& operator-=(const X2TPoly& o);
  friend X2TPoly operator+(X2TPoly a, const X2TPoly& b) { return a += b; }
  friend X2TPoly operator-(X2TPoly a, const X2TPoly& b) { return a -= b; }
  friend X2TPoly operator*(const X2TPoly& a, const X2TPoly& b);
  bool operator==(const X2TPoly& o) const { return terms_ == o.terms_; }

  X2TPoly scaled(const BiSeries& c) const;
  X2TPoly scaled(const GaussRat& c) const;
  X2TPoly conj() const;
  X2TPoly ddx1() const;
  X2TPoly ddx2() const;
  /// Drop terms with x2 power > jmax or T power > mmax.
  X2TPoly truncated(int jmax, int mmax) const;
  int max_x2_power() const;

  std::string str() const;

 private:
  const SymTable* tab_ = nullptr;
  std::map<std::pair<int, int>, BiSeries> terms_;
};

/// Flat numeric form of a BiSeries for fast pointwise evaluation.
class CompiledSeries {
 public:
  CompiledSeries() = default;
  CompiledSeries(const BiSeries& s, double eps,
                 const std::vector<std::complex<double>>& params = {});

  std::complex<double> eval(double x1) const;
  bool empty() const { return terms_.empty(); }

 private:
  struct Term {
    std::complex<double> c;
    double ea;  // exponent on (x1 - i eps)
    double eb;  // exponent on (x1 + i eps)
  };
  std::vector<Term> terms_;
  double eps_ = 0.0;
};

}  // namespace qlip
