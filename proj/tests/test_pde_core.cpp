#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "qlip/calculus.hpp"
#include "qlip/field_io.hpp"
#include "qlip/grid.hpp"
#include "qlip/poisson.hpp"

using namespace qlip;

TEST_CASE("grid counting: d=3 res=9") {
  Grid g = Grid::make(3, 9);
  CHECK(g.node_count() == 9 * 9 * 9);
  CHECK(g.interior_count() == 7 * 7 * 7);
  CHECK(g.boundary_count() == 9 * 9 * 9 - 7 * 7 * 7);
  CHECK(g.extent(1).lo == doctest::Approx(1.0));
  // interior nodes have all 2d neighbors on the lattice
  for (std::int64_t ord = 0; ord < g.interior_count(); ++ord) {
    std::int64_t i = g.interior_node(ord);
    for (int a = 0; a < 3; ++a) {
      CHECK(i + g.stride(a) < g.node_count());
      CHECK(i - g.stride(a) >= 0);
    }
  }
}

TEST_CASE("grid counting: d=4 res=9 boundary count") {
  Grid g = Grid::make(4, 9);
  CHECK(g.node_count() == 9LL * 9 * 9 * 9);
  CHECK(g.boundary_count() == 9LL * 9 * 9 * 9 - 7LL * 7 * 7 * 7);
}

TEST_CASE("grid rejects small dimension and resolution") {
  CHECK_THROWS(Grid::make(2, 9));
  CHECK_THROWS(Grid::make(3, 2));
}

TEST_CASE("grid shifts axis 1 into x1 > 0") {
  std::vector<Interval> box(3, Interval{0.0, 1.0});
  Grid g(3, {9, 9, 9}, box);
  CHECK(g.extent(1).lo > 0.0);
  CHECK(g.x1_shift() == doctest::Approx(1.0));
}

TEST_CASE("harmonic extension reproduces degree <= 2 harmonic polynomials") {
  Grid g = Grid::make(3, 9);
  PoissonSolver ps(g);

  SUBCASE("affine x0") {
    RealField exact(g, [](const std::vector<double>& x) { return x[0]; });
    RealField u = ps.harmonic_extension(BoundaryFunction::trace(exact));
    for (std::int64_t i = 0; i < g.node_count(); ++i)
      CHECK(std::abs(u[i] - exact[i]) < 1e-11);
  }
  SUBCASE("quadratic x0^2 - x1^2") {
    RealField exact(g, [](const std::vector<double>& x) { return x[0] * x[0] - x[1] * x[1]; });
    RealField u = ps.harmonic_extension(BoundaryFunction::trace(exact));
    for (std::int64_t i = 0; i < g.node_count(); ++i)
      CHECK(std::abs(u[i] - exact[i]) < 1e-10);
  }
}

TEST_CASE("manufactured solution converges at second order") {
  auto err_for = [](int res) {
    Grid g = Grid::make(3, res);
    PoissonSolver ps(g);
    auto exact_f = [](const std::vector<double>& x) { return std::sin(x[0]) * std::sin(x[1]); };
    RealField exact(g, exact_f);
    RealField rhs(g, [&](const std::vector<double>& x) { return -2.0 * std::sin(x[0]) * std::sin(x[1]); });
    RealField u = ps.solve(rhs, BoundaryFunction::trace(exact));
    double e = 0.0;
    for (std::int64_t i = 0; i < g.node_count(); ++i) e = std::max(e, std::abs(u[i] - exact[i]));
    return e;
  };
  double e1 = err_for(9);
  double e2 = err_for(17);
  double e3 = err_for(33);
  double slope1 = std::log2(e1 / e2);
  double slope2 = std::log2(e2 / e3);
  CHECK(slope1 == doctest::Approx(2.0).epsilon(0.12));
  CHECK(slope2 == doctest::Approx(2.0).epsilon(0.12));
}

TEST_CASE("solve then apply: Lap(G0 rhs) = rhs") {
  Grid g = Grid::make(3, 9);
  PoissonSolver ps(g);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  RealField rhs(g);
  for (std::int64_t i = 0; i < g.node_count(); ++i) rhs[i] = U(rng);
  RealField v = ps.solve_zero_bc(rhs);
  CHECK(ps.residual(v, rhs) < 1e-9);
}

TEST_CASE("discrete Laplacian symmetry for zero-boundary fields") {
  Grid g = Grid::make(3, 7);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  RealField u(g), v(g);
  for (std::int64_t ord = 0; ord < g.interior_count(); ++ord) {
    u[g.interior_node(ord)] = U(rng);
    v[g.interior_node(ord)] = U(rng);
  }
  double a = inner(laplacian(u), v);
  double b = inner(u, laplacian(v));
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("gradient and divergence exact on affine fields") {
  Grid g = Grid::make(3, 9);
  RealField x1(g, [](const std::vector<double>& x) { return x[1]; });
  VectorField grad = gradient(x1);
  for (std::int64_t i = 0; i < g.node_count(); ++i) {
    CHECK(grad[0][i] == doctest::Approx(0.0));
    CHECK(grad[1][i] == doctest::Approx(1.0));
    CHECK(grad[2][i] == doctest::Approx(0.0));
  }
  VectorField v(g);
  for (int a = 0; a < 3; ++a)
    v[a] = RealField(g, [a](const std::vector<double>& x) { return x[static_cast<std::size_t>(a)]; });
  RealField div = divergence(v);
  for (std::int64_t i = 0; i < g.node_count(); ++i) CHECK(div[i] == doctest::Approx(3.0));
}

TEST_CASE("summation by parts is O(h^2)") {
  auto defect_for = [](int res) {
    Grid g = Grid::make(3, res);
    RealField u(g, [](const std::vector<double>& x) { return std::sin(x[0] + 0.5 * x[1]) * std::cos(x[2]); });
    VectorField V(g);
    V[0] = RealField(g, [](const std::vector<double>& x) { return std::cos(x[1]) * x[2]; });
    V[1] = RealField(g, [](const std::vector<double>& x) { return x[0] * x[0]; });
    V[2] = RealField(g, [](const std::vector<double>& x) { return std::sin(x[2]) + x[1]; });
    VectorField gu = gradient(u);
    double vol = 0.0;
    for (int a = 0; a < 3; ++a) vol += inner(gu[a], V[a]);
    vol += inner(u, divergence(V));
    // boundary term: sum over faces of u * V.n
    double bnd = 0.0;
    for (std::int64_t o = 0; o < g.boundary_count(); ++o) {
      std::int64_t i = g.boundary_node(o);
      for (int a = 0; a < 3; ++a) {
        std::int64_t idx = (i / g.stride(a)) % g.res(a);
        double sgn = idx == 0 ? -1.0 : (idx == g.res(a) - 1 ? 1.0 : 0.0);
        if (sgn == 0.0) continue;
        double w = 1.0;
        for (int b = 0; b < 3; ++b) {
          if (b == a) continue;
          std::int64_t jb = (i / g.stride(b)) % g.res(b);
          w *= (jb == 0 || jb == g.res(b) - 1) ? 0.5 * g.spacing(b) : g.spacing(b);
        }
        bnd += sgn * u[i] * V[a][i] * w;
      }
    }
    return std::abs(vol - bnd);
  };
  double d1 = defect_for(9);
  double d2 = defect_for(17);
  CHECK(d1 / d2 > 3.0);  // roughly 4x per halving
}

TEST_CASE("quadrature basics") {
  Grid g = Grid::make(3, 9);
  RealField one(g, [](const std::vector<double>&) { return 1.0; });
  CHECK(integrate(one) == doctest::Approx(1.0));
  RealField x0(g, [](const std::vector<double>& x) { return x[0]; });
  CHECK(integrate(x0) == doctest::Approx(0.5));

  auto quad_err = [](int res) {
    Grid g2 = Grid::make(3, res);
    RealField f(g2, [](const std::vector<double>& x) {
      return std::sin(x[0]) * std::sin(x[1]) * std::sin(x[2]);
    });
    double exact = (1.0 - std::cos(1.0)) * (std::cos(1.0) - std::cos(2.0)) * (1.0 - std::cos(1.0));
    return std::abs(integrate(f) - exact);
  };
  CHECK(quad_err(9) / quad_err(17) > 3.0);
}

TEST_CASE("field serialization round trip is loss free") {
  Grid g = Grid::make(3, 7);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  RealField u(g);
  for (std::int64_t i = 0; i < g.node_count(); ++i) u[i] = U(rng) * std::exp(U(rng)* 10);
  std::ostringstream os;
  save_field(os, u);
  std::istringstream is(os.str());
  LoadedField lf = load_field(is);
  REQUIRE(lf.grid->node_count() == g.node_count());
  for (std::int64_t i = 0; i < g.node_count(); ++i) CHECK(lf.field[i] == u[i]);
}
