#pragma once

#include <map>
#include <vector>

#include "qlip/grid.hpp"

namespace qlip {

/// Dense-exponent multivariate polynomial with double coefficients. The
/// harmonic bases built below have small integer coefficients, so double
/// arithmetic on them is exact.
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  Polynomial() = default;
  explicit Polynomial(int dim) : dim_(dim) {}
  static Polynomial monomial(Exponents e, double c);
  static Polynomial constant(int dim, double c);

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  const std::map<Exponents, double>& terms() const { return terms_; }

  void add_term(const Exponents& e, double c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(double s) const;

  Polynomial derivative(int axis) const;
  Polynomial laplacian() const;

  double eval(const std::vector<double>& x) const;
  std::vector<double> gradient_at(const std::vector<double>& x) const;

 private:
  int dim_ = 0;
  std::map<Exponents, double> terms_;
};

/// Harmonic polynomial with its exact gradient.
struct HarmonicPolynomial {
  int degree = 0;
  Polynomial p;
  std::vector<Polynomial> grad;
};

/// Classical dimension of the space of homogeneous harmonic polynomials.
long harmonic_dimension(int d, int m);

/// Spanning set of real harmonic polynomials for every degree 0..max_degree,
/// built from the exact rational nullspace of the Laplacian on homogeneous
/// monomials. max_degree <= 6.
std::vector<HarmonicPolynomial> harmonic_polynomials(int d, int max_degree);

}  // namespace qlip
