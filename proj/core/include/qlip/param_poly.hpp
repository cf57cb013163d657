#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qlip/rational.hpp"

namespace qlip {

/// Fixed table of formal scalar parameters (amplitude constants, sigma, ...).
/// Each symbol has a conjugation partner so that complex conjugation of a
/// polynomial is a symbol swap plus coefficient conjugation. Real symbols are
/// their own partner.
class SymTable {
 public:
  int add(const std::string& name);                // self-conjugate symbol
  std::pair<int, int> add_pair(const std::string& name);  // (sym, conj sym)

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  int conj_partner(int i) const { return conj_[i]; }

 private:
  std::vector<std::string> names_;
  std::vector<int> conj_;
};

/// Sparse polynomial in the symbols of a SymTable with GaussRat coefficients.
/// The zero-symbol case degenerates to a plain Gaussian rational.
class ParamPoly {
 public:
  using Monomial = std::vector<std::uint8_t>;  // exponent per symbol

  ParamPoly() = default;
  explicit ParamPoly(const SymTable* tab) : tab_(tab) {}
  ParamPoly(const SymTable* tab, GaussRat c) : tab_(tab) {
    if (!c.is_zero()) terms_[Monomial(tab ? tab->size() : 0, 0)] = std::move(c);
  }

  static ParamPoly symbol(const SymTable* tab, int sym, GaussRat c = GaussRat(1));

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  GaussRat constant_term() const;

  const SymTable* table() const { return tab_; }
  const std::map<Monomial, GaussRat>& terms() const { return terms_; }

  ParamPoly operator-() const;
  ParamPoly& operator+=(const ParamPoly& o);
  ParamPoly& operator-=(const ParamPoly& o);
  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
  ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }

  ParamPoly scaled(const GaussRat& c) const;
  ParamPoly conj() const;

  /// Coefficient (itself scalar) of an exact monomial.
  GaussRat coefficient(const Monomial& m) const;
  /// Sub-polynomial of all terms containing the given monomial exactly.
  /// (Exact-degree match, not divisibility.)
  bool operator==(const ParamPoly& o) const { return terms_ == o.terms_; }

  std::complex<double> eval(const std::vector<std::complex<double>>& values) const;

  std::string str() const;

 private:
  void prune(const Monomial& m);
  const SymTable* tab_ = nullptr;
  std::map<Monomial, GaussRat> terms_;
};

}  // namespace qlip
