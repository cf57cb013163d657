#include <doctest.h>

#include <complex>
#include <random>

#include "qlip/series.hpp"

using namespace qlip;
using cd = std::complex<double>;

TEST_CASE("GaussRat arithmetic and inverse") {
  GaussRat a(rat(1, 2), rat(-1, 3));
  GaussRat b = a * a.inverse();
  CHECK(b == GaussRat(1));
  CHECK((a * a.conj()).im == 0);
}

TEST_CASE("ParamPoly product, conj and coefficient extraction") {
  SymTable tab;
  auto [q, qb] = tab.add_pair("q");
  ParamPoly pq = ParamPoly::symbol(&tab, q);
  ParamPoly pqb = ParamPoly::symbol(&tab, qb);
  ParamPoly prod = pq * pqb + pq.scaled(GaussRat(rat(2)));

  CHECK(prod.conj() == pqb * pq + pqb.scaled(GaussRat(rat(2))));

  ParamPoly::Monomial m(static_cast<std::size_t>(tab.size()), 0);
  m[static_cast<std::size_t>(q)] = 1;
  m[static_cast<std::size_t>(qb)] = 1;
  CHECK(prod.coefficient(m) == GaussRat(1));

  std::vector<cd> vals = {cd(0.5, 0.25), cd(0.5, -0.25)};
  cd expect = vals[0] * vals[1] + 2.0 * vals[0];
  CHECK(std::abs(prod.eval(vals) - expect) < 1e-15);
}

TEST_CASE("BiSeries product rule holds term for term") {
  SymTable tab;
  BiSeries f = BiSeries::monomial(&tab, -1, 0, GaussRat(rat(1, 2)))   // (1/2) zm^{-1/2}
               + BiSeries::monomial(&tab, 0, -3, GaussRat(rat(2)));   // 2 zp^{-3/2}
  BiSeries g = BiSeries::monomial(&tab, -2, 0, GaussRat(rat(1)))      // zm^{-1}
               + BiSeries::x1(&tab);
  BiSeries lhs = (f * g).ddx();
  BiSeries rhs = f.ddx() * g + f * g.ddx();
  CHECK(lhs == rhs);
}

TEST_CASE("BiSeries symbolic product matches complex arithmetic at random points") {
  SymTable tab;
  BiSeries f = BiSeries::monomial(&tab, -3, 0, GaussRat(rat(3), rat(1, 5))) +
               BiSeries::monomial(&tab, 1, -2, GaussRat(rat(-1, 7)));
  BiSeries g = BiSeries::monomial(&tab, 0, 5, GaussRat(rat(2, 3))) + BiSeries::x1(&tab);
  BiSeries p = f * g;
  const double eps = 0.37;
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> U(0.5, 2.0);
  for (int t = 0; t < 100; ++t) {
    double x = U(rng);
    cd a = f.eval(x, eps) * g.eval(x, eps);
    cd b = p.eval(x, eps);
    CHECK(std::abs(a - b) < 1e-12 * (1.0 + std::abs(a)));
  }
}

TEST_CASE("BiSeries conjugation swaps branch factors") {
  SymTable tab;
  BiSeries f = BiSeries::monomial(&tab, -1, 0, GaussRat(rat(0), rat(1)));
  BiSeries fc = f.conj();
  double x = 1.3, eps = 0.4;
  cd v = f.eval(x, eps);
  cd w = fc.eval(x, eps);
  CHECK(std::abs(std::conj(v) - w) < 1e-15);
}

TEST_CASE("BiSeries antiderivative inverts ddx and rejects log terms") {
  SymTable tab;
  BiSeries f = BiSeries::monomial(&tab, -3, 0, GaussRat(rat(5))) +
               BiSeries::monomial(&tab, 4, 0, GaussRat(rat(1, 3)));
  auto F = f.antiderivative();
  REQUIRE(F.has_value());
  CHECK(F->ddx() == f);

  BiSeries logterm = BiSeries::monomial(&tab, -2, 0, GaussRat(rat(1)));
  CHECK(!logterm.antiderivative().has_value());

  BiSeries mixed = BiSeries::monomial(&tab, 0, -2, GaussRat(rat(1)));
  CHECK(!mixed.antiderivative().has_value());
}

TEST_CASE("x1^2 + eps^2 equals the (2,2) monomial for rational eps") {
  // (x - i eps)(x + i eps) = x^2 + eps^2; check numerically.
  SymTable tab;
  BiSeries rho2 = BiSeries::monomial(&tab, 2, 2, GaussRat(rat(1)));
  double eps = 0.25;
  for (double x : {0.7, 1.0, 1.9}) {
    CHECK(std::abs(rho2.eval(x, eps) - cd(x * x + eps * eps, 0.0)) < 1e-14);
  }
}

TEST_CASE("X2TPoly products and derivatives") {
  SymTable tab;
  BiSeries one = BiSeries::constant(&tab, GaussRat(1));
  X2TPoly p = X2TPoly::term(2, 0, one) + X2TPoly::term(0, 1, BiSeries::x1(&tab));
  X2TPoly q = X2TPoly::term(1, 0, one);
  X2TPoly pq = p * q;
  CHECK(pq.coeff(3, 0) == one);
  CHECK(pq.coeff(1, 1) == BiSeries::x1(&tab));
  X2TPoly d = p.ddx2();
  CHECK(d.coeff(1, 0) == one.scaled(GaussRat(rat(2))));
  CHECK(p.truncated(1, 1).coeff(2, 0).is_zero());
}

TEST_CASE("CompiledSeries matches exact evaluation") {
  SymTable tab;
  auto [q, qb] = tab.add_pair("q");
  BiSeries f = BiSeries::monomial(&tab, -5, 0, ParamPoly::symbol(&tab, q)) +
               BiSeries::monomial(&tab, -1, -1, ParamPoly(&tab, GaussRat(rat(3, 4))));
  std::vector<cd> params = {cd(0.2, 1.5), cd(0.2, -1.5)};
  CompiledSeries cs(f, 0.3, params);
  for (double x : {0.6, 1.1, 1.8}) {
    CHECK(std::abs(cs.eval(x) - f.eval(x, 0.3, params)) < 1e-14);
  }
}
