#include <doctest.h>

#include <cmath>
#include <random>

#include "qlip/calculus.hpp"
#include "qlip/cascade.hpp"
#include "qlip/dtn.hpp"
#include "qlip/flux.hpp"
#include "qlip/lambda_extract.hpp"
#include "qlip/picard.hpp"

using namespace qlip;

namespace {

NonlinearitySpec quad_spec(const Grid& g) {
  NonlinearitySpec spec(g, 2);
  ScalarBump b{{0.5, 1.5, 0.5}, 0.35, 1.0};
  spec.J(2).set_component({0, 0}, bump_component(b, {0.2, 1.0, 0.0}));
  spec.J(2).set_component({1, 2}, bump_component(b, {0.8, -0.3, 0.5}));
  return spec;
}

NonlinearitySpec cubic_spec(const Grid& g) {
  NonlinearitySpec spec(g, 3);
  ScalarBump b{{0.5, 1.5, 0.5}, 0.35, 1.0};
  spec.J(2).set_component({0, 0}, bump_component(b, {0.2, 1.0, 0.0}));
  spec.J(3).set_component({0, 1, 1}, bump_component(b, {0.5, 0.5, -0.4}));
  return spec;
}

// Brute-force oracle for N_k: coefficient of eps^k in
// sum_l J_l : (sum_j eps^j grad u_j)^{(x) l}, enumerated over all l-tuples
// (j_1..j_l) with sum j_i = k. Independent of the composition enumeration.
VectorField brute_force_source(const NonlinearitySpec& spec,
                               const std::vector<VectorField>& grads, int k) {
  const Grid& g = spec.grid();
  VectorField out(g);
  int kmax = static_cast<int>(grads.size());
  for (int l = 2; l <= std::min(spec.degree_N, k - 1); ++l) {
    std::vector<int> tuple(static_cast<std::size_t>(l), 1);
    std::function<void(int, int)> rec = [&](int slot, int sum) {
      if (slot == l) {
        if (sum != k) return;
        std::vector<const VectorField*> slots;
        for (int s = 0; s < l; ++s) slots.push_back(&grads[static_cast<std::size_t>(tuple[static_cast<std::size_t>(s)] - 1)]);
        out += spec.J(l).contract(slots);
        return;
      }
      for (int j = 1; j <= kmax && sum + j <= k; ++j) {
        tuple[static_cast<std::size_t>(slot)] = j;
        rec(slot + 1, sum + j);
      }
    };
    rec(0, 0);
  }
  return out;
}

}  // namespace

TEST_CASE("composition enumeration k=3 and k=4 matches the expected tables") {
  auto c3 = enumerate_compositions(3);
  REQUIRE(c3.size() == 1);
  CHECK(c3[0].l == 2);
  CHECK(c3[0].coeff == 2);
  CHECK(c3[0].alpha == std::vector<int>{1, 1});

  auto c4 = enumerate_compositions(4);
  REQUIRE(c4.size() == 3);
  long coeff_l2_13 = 0, coeff_l2_22 = 0, coeff_l3 = 0;
  for (const auto& t : c4) {
    if (t.l == 2 && t.alpha == std::vector<int>{1, 0, 1}) coeff_l2_13 = t.coeff;
    if (t.l == 2 && t.alpha == std::vector<int>{0, 2, 0}) coeff_l2_22 = t.coeff;
    if (t.l == 3 && t.alpha == std::vector<int>{2, 1, 0}) coeff_l3 = t.coeff;
  }
  CHECK(coeff_l2_13 == 2);
  CHECK(coeff_l2_22 == 1);
  CHECK(coeff_l3 == 3);
}

TEST_CASE("multinomial_source equals the brute-force expansion oracle") {
  Grid g = Grid::make(3, 7);
  PoissonSolver ps(g);
  NonlinearitySpec spec = cubic_spec(g);
  BoundaryFunction f(g, [](const std::vector<double>& x) { return x[0] + 0.5 * x[1] * x[2]; });
  CascadeSolution cas = cascade_solve(spec, ps, f, 4);
  std::vector<VectorField> grads;
  for (const auto& u : cas.u) grads.push_back(gradient(u));

  for (int k = 3; k <= 5; ++k) {
    VectorField a = multinomial_source(spec, grads, k);
    VectorField b = brute_force_source(spec, grads, k);
    for (int c = 0; c < 3; ++c)
      for (std::int64_t i = 0; i < g.node_count(); ++i)
        CHECK(a[c][i] == doctest::Approx(b[c][i]).epsilon(1e-11));
  }
}

TEST_CASE("N_k vanishes when all tensors vanish") {
  Grid g = Grid::make(3, 6);
  NonlinearitySpec lin(g, 3);
  std::vector<VectorField> grads(3, VectorField(g));
  VectorField n4 = multinomial_source(lin, grads, 4);
  for (int c = 0; c < 3; ++c)
    for (std::int64_t i = 0; i < g.node_count(); ++i) CHECK(n4[c][i] == 0.0);
}

TEST_CASE("cascade: linear spec has zero higher levels") {
  Grid g = Grid::make(3, 9);
  PoissonSolver ps(g);
  NonlinearitySpec lin(g, 2);
  BoundaryFunction f(g, [](const std::vector<double>& x) { return x[0] * x[1]; });
  CascadeSolution cas = cascade_solve(lin, ps, f, 3);
  CHECK(norm_max(cas.level(2)) < 1e-12);
  CHECK(norm_max(cas.level(3)) < 1e-12);
}

TEST_CASE("cascade defect: ||u_eps - sum eps^k u_k|| = O(eps^{N+1})") {
  Grid g = Grid::make(3, 9);
  PoissonSolver ps(g);
  NonlinearitySpec spec = quad_spec(g);
  SpecFlux flux(spec);
  BoundaryFunction f(g, [](const std::vector<double>& x) { return x[0] * x[1] - 0.5 * x[2]; });
  CascadeSolution cas = cascade_solve(spec, ps, f, 2);

  std::vector<double> epss = {3e-2, 1e-2, 3e-3};
  std::vector<double> defects;
  for (double e : epss) {
    auto [u, rep] = picard_solve(flux, ps, e * f, {1e-14, 100});
    RealField approx = cas.level(1);
    approx *= e;
    RealField u2 = cas.level(2);
    u2 *= e * e;
    approx += u2;
    RealField diff = u - approx;
    defects.push_back(norm_h1(diff));
  }
  // log-log slope between successive eps pairs should be ~3
  for (std::size_t i = 0; i + 1 < defects.size(); ++i) {
    double slope = std::log(defects[i] / defects[i + 1]) / std::log(epss[i] / epss[i + 1]);
    CHECK(slope > 2.7);
  }
}

TEST_CASE("cascade defect with cubic-type remainder stays O(eps^3) at N=2") {
  Grid g = Grid::make(3, 9);
  PoissonSolver ps(g);
  NonlinearitySpec spec = quad_spec(g);
  spec.remainder = Remainder{
      [](const std::vector<double>&, double, const std::vector<double>& p) {
        double p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        return std::vector<double>{p2 * p[0], p2 * p[1], p2 * p[2]};
      },
      1.0};
  SpecFlux flux(spec);
  BoundaryFunction f(g, [](const std::vector<double>& x) { return x[0] * x[1] - 0.5 * x[2]; });
  CascadeSolution cas = cascade_solve(spec, ps, f, 2);

  std::vector<double> epss = {3e-2, 1e-2, 3e-3};
  std::vector<double> defects;
  for (double e : epss) {
    auto [u, rep] = picard_solve(flux, ps, e * f, {1e-14, 100});
    RealField approx = cas.level(1);
    approx *= e;
    RealField u2 = cas.level(2);
    u2 *= e * e;
    approx += u2;
    RealField diff = u - approx;
    defects.push_back(norm_h1(diff));
  }
  for (std::size_t i = 0; i + 1 < defects.size(); ++i) {
    double slope = std::log(defects[i] / defects[i + 1]) / std::log(epss[i] / epss[i + 1]);
    CHECK(slope > 2.7);
  }
}

TEST_CASE("extract_lambda_k: k=1 recovers int grad w . grad u1; k=2 matches cascade") {
  Grid g = Grid::make(3, 9);
  PoissonSolver ps(g);
  NonlinearitySpec spec = quad_spec(g);
  SpecFlux flux(spec);
  DtNOracle oracle(flux, ps, 1e9);
  BoundaryFunction f(g, [](const std::vector<double>& x) { return x[0] * x[1] - 0.5 * x[2]; });
  RealField w(g, [](const std::vector<double>& x) { return x[0] - x[2]; });
  VectorField gw = gradient(w);

  std::vector<double> eps = default_epsilon_ladder(0.1, 2);
  CascadeSolution cas = cascade_solve(spec, ps, f, 2);

  SUBCASE("k=1") {
    LambdaFit fit = extract_lambda_k(oracle, gw, f, 1, eps);
    VectorField gu1 = gradient(cas.level(1));
    double want = 0.0;
    for (int a = 0; a < 3; ++a) want += inner(gw[a], gu1[a]);
    CHECK(fit.value == doctest::Approx(want).epsilon(1e-6));
  }

  SUBCASE("k=2 linear spec returns ~0") {
    NonlinearitySpec lin(g, 2);
    SpecFlux lflux(lin);
    DtNOracle loracle(lflux, ps, 1e9);
    LambdaFit fit = extract_lambda_k(loracle, gw, f, 2, eps);
    CHECK(std::abs(fit.value) < 1e-8);
  }

  SUBCASE("k=2 matches the cascade prediction") {
    LambdaFit fit = extract_lambda_k(oracle, gw, f, 2, eps);
    // int grad w . (J_2 : grad u1 (x) grad u1)
    VectorField gu1 = gradient(cas.level(1));
    std::vector<const VectorField*> slots = {&gu1, &gu1};
    VectorField j2 = spec.J(2).contract(slots);
    double want = 0.0;
    for (int a = 0; a < 3; ++a) want += inner(gw[a], j2[a]);
    CHECK(fit.value == doctest::Approx(want).epsilon(1e-4));
  }
}

TEST_CASE("extract_lambda_k homogeneity: value scales as t^k") {
  Grid g = Grid::make(3, 9);
  PoissonSolver ps(g);
  NonlinearitySpec spec = quad_spec(g);
  SpecFlux flux(spec);
  DtNOracle oracle(flux, ps, 1e9);
  BoundaryFunction f(g, [](const std::vector<double>& x) { return 0.5 * x[0] * x[1]; });
  RealField w(g, [](const std::vector<double>& x) { return x[1]; });
  VectorField gw = gradient(w);
  std::vector<double> eps = default_epsilon_ladder(0.08, 2);

  LambdaFit base = extract_lambda_k(oracle, gw, f, 2, eps);
  for (double t : {0.5, 2.0}) {
    // scale f but shrink the ladder so eps*t*f stays in the same range
    std::vector<double> eps_t;
    for (double e : eps) eps_t.push_back(e / t);
    LambdaFit scaled = extract_lambda_k(oracle, gw, t * f, 2, eps_t);
    CHECK(scaled.value == doctest::Approx(t * t * base.value).epsilon(1e-5));
  }
}

TEST_CASE("lambda_1 symmetry: pairing(w, f) = pairing(u_f, trace w)") {
  Grid g = Grid::make(3, 9);
  PoissonSolver ps(g);
  NonlinearitySpec spec = quad_spec(g);
  SpecFlux flux(spec);
  DtNOracle oracle(flux, ps, 1e9);
  BoundaryFunction f(g, [](const std::vector<double>& x) { return x[0] * x[1] - 0.5 * x[2]; });
  RealField w(g, [](const std::vector<double>& x) { return x[2] * x[1] - 0.25 * x[0]; });
  std::vector<double> eps = default_epsilon_ladder(0.1, 2);

  RealField uf = ps.harmonic_extension(f);
  RealField uw = ps.harmonic_extension(BoundaryFunction::trace(w));
  LambdaFit a = extract_lambda_k(oracle, gradient(w), f, 1, eps);
  LambdaFit b = extract_lambda_k(oracle, gradient(uw), BoundaryFunction::trace(uf), 1, eps);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-6));
}

TEST_CASE("ill-conditioned epsilon ladder is rejected") {
  std::vector<double> eps(8, 0.01);  // identical nodes: singular Vandermonde
  std::vector<double> vals(8, 1.0);
  CHECK_THROWS(fit_epsilon_series(eps, vals, 2, 3));
}
