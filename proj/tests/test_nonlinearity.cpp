#include <doctest.h>

#include <cmath>
#include <random>

#include "qlip/calculus.hpp"
#include "qlip/diffeo.hpp"
#include "qlip/flux.hpp"
#include "qlip/tensors.hpp"

using namespace qlip;
using cd = std::complex<double>;

namespace {

RealField random_interior_field(const Grid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  RealField f(g);
  for (std::int64_t i = 0; i < g.node_count(); ++i) f[i] = U(rng);
  return f;
}

VectorField random_vector_field(const Grid& g, std::mt19937_64& rng) {
  VectorField v(g);
  for (int a = 0; a < g.dim(); ++a) v[a] = random_interior_field(g, rng);
  return v;
}

// Set every canonical component of an order-2 tensor to random smooth data.
void randomize_tensor(TensorCoefficients& J, std::mt19937_64& rng) {
  const Grid& g = J.grid();
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for_each_canonical_tuple(g.dim(), J.order(), [&](const IndexTuple& t) {
    VectorField v(g);
    for (int c = 0; c < g.dim(); ++c)
      for (std::int64_t i = 0; i < g.node_count(); ++i) v[c][i] = U(rng);
    J.set_component(t, std::move(v));
  });
}

}  // namespace

TEST_CASE("tuple multiplicity") {
  CHECK(tuple_multiplicity({0, 0}) == 1);
  CHECK(tuple_multiplicity({0, 1}) == 2);
  CHECK(tuple_multiplicity({0, 1, 1}) == 3);
  CHECK(tuple_multiplicity({0, 1, 2}) == 6);
}

TEST_CASE("eval_flux: linear medium returns p") {
  Grid g = Grid::make(3, 7);
  NonlinearitySpec spec(g, 2);
  std::mt19937_64 rng(3);
  RealField s = random_interior_field(g, rng);
  VectorField p = random_vector_field(g, rng);
  VectorField out = eval_flux(spec, s, p);
  for (int a = 0; a < 3; ++a)
    for (std::int64_t i = 0; i < g.node_count(); ++i) CHECK(out[a][i] == p[a][i]);
}

TEST_CASE("eval_flux: single J_{2;00} = g(x) e2 contraction") {
  Grid g = Grid::make(3, 9);
  NonlinearitySpec spec(g, 2);
  ScalarBump bump{{0.5, 1.5, 0.5}, 0.3, 1.0};
  spec.J(2).set_component({0, 0}, bump_component(bump, {0.0, 0.0, 1.0}));

  RealField s(g);
  VectorField p(g);
  for (std::int64_t i = 0; i < g.node_count(); ++i) p[0][i] = 1.0;  // p = e0
  VectorField out = eval_flux(spec, s, p);
  for (std::int64_t i = 0; i < g.node_count(); ++i) {
    std::vector<int> mi = g.multi_index(i);
    bool margin = false;
    for (int a = 0; a < 3; ++a)
      if (mi[a] < 2 || mi[a] > g.res(a) - 3) margin = true;
    double gb = margin ? 0.0 : bump(g.coords(i));
    CHECK(out[0][i] == doctest::Approx(1.0));
    CHECK(out[1][i] == doctest::Approx(0.0));
    CHECK(out[2][i] == doctest::Approx(gb));
  }
}

TEST_CASE("contract matches brute-force full index loop for random J2") {
  Grid g = Grid::make(3, 6);
  std::mt19937_64 rng(17);
  TensorCoefficients J2(g, 2);
  randomize_tensor(J2, rng);
  VectorField p = random_vector_field(g, rng);

  std::vector<const VectorField*> slots = {&p, &p};
  VectorField got = J2.contract(slots);

  // brute force: loop over ALL (i1,i2) pairs, reading symmetric storage
  VectorField want(g);
  for (int i1 = 0; i1 < 3; ++i1)
    for (int i2 = 0; i2 < 3; ++i2) {
      const VectorField* comp = J2.component({i1, i2});
      REQUIRE(comp != nullptr);
      for (int c = 0; c < 3; ++c)
        for (std::int64_t i = 0; i < g.node_count(); ++i)
          want[c][i] += (*comp)[c][i] * p[i1][i] * p[i2][i];
    }
  for (int c = 0; c < 3; ++c)
    for (std::int64_t i = 0; i < g.node_count(); ++i)
      CHECK(got[c][i] == doctest::Approx(want[c][i]).epsilon(1e-12));
}

TEST_CASE("flux homogeneity: J_k:(tp)^k = t^k J_k:p^k nodewise") {
  Grid g = Grid::make(3, 6);
  std::mt19937_64 rng(29);
  NonlinearitySpec spec(g, 3);
  randomize_tensor(spec.J(2), rng);
  randomize_tensor(spec.J(3), rng);
  VectorField p = random_vector_field(g, rng);
  const double t = 1.7;
  VectorField tp(g);
  for (int a = 0; a < 3; ++a)
    for (std::int64_t i = 0; i < g.node_count(); ++i) tp[a][i] = t * p[a][i];

  std::vector<const VectorField*> slots2 = {&p, &p};
  std::vector<const VectorField*> slots2t = {&tp, &tp};
  VectorField a2 = spec.J(2).contract(slots2);
  VectorField b2 = spec.J(2).contract(slots2t);
  std::vector<const VectorField*> slots3(3, &p), slots3t(3, &tp);
  VectorField a3 = spec.J(3).contract(slots3);
  VectorField b3 = spec.J(3).contract(slots3t);
  for (int c = 0; c < 3; ++c)
    for (std::int64_t i = 0; i < g.node_count(); ++i) {
      CHECK(b2[c][i] == doctest::Approx(t * t * a2[c][i]).epsilon(1e-12));
      CHECK(b3[c][i] == doctest::Approx(t * t * t * a3[c][i]).epsilon(1e-12));
    }
}

TEST_CASE("storage symmetry: permuted tuples read identically") {
  Grid g = Grid::make(3, 6);
  std::mt19937_64 rng(5);
  TensorCoefficients J3(g, 3);
  randomize_tensor(J3, rng);
  const VectorField* a = J3.component({0, 1, 2});
  const VectorField* b = J3.component({2, 0, 1});
  const VectorField* c = J3.component({1, 2, 0});
  REQUIRE(a != nullptr);
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("symmetrize: single C_{001}=1 component") {
  Grid g = Grid::make(3, 6);
  Tensor3Field C(g);
  RealField one(g, [](const std::vector<double>&) { return 1.0; });
  C.set_component(0, 0, 1, one);
  SymDecomp sd = symmetrize(C);
  std::int64_t mid = g.interior_node(g.interior_count() / 2);
  CHECK(sd.S.value(0, 0, 1, mid) == doctest::Approx(1.0 / 3.0));
  CHECK(sd.S.value(0, 1, 0, mid) == doctest::Approx(1.0 / 3.0));
  CHECK(sd.S.value(1, 0, 0, mid) == doctest::Approx(1.0 / 3.0));
  CHECK(sd.D.value(0, 0, 1, mid) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("symmetrize: projection property and permutation invariance") {
  Grid g = Grid::make(3, 6);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Tensor3Field C(g);
  for (int j = 0; j < 3; ++j)
    for (int k = j; k < 3; ++k)
      for (int l = 0; l < 3; ++l)
        for (std::int64_t i = 0; i < g.node_count(); ++i) C.set_value(j, k, l, i, U(rng));

  SymDecomp sd = symmetrize(C);
  // S invariant under all 6 permutations
  std::int64_t node = g.interior_node(7);
  int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) {
        int idx[3] = {j, k, l};
        double base = sd.S.value(j, k, l, node);
        for (auto& p : perms) {
          double v = sd.S.value(idx[p[0]], idx[p[1]], idx[p[2]], node);
          CHECK(v == doctest::Approx(base).epsilon(1e-12));
        }
      }
  // full symmetrization of D vanishes
  SymDecomp sdd = symmetrize(sd.D);
  CHECK(sdd.S.max_abs() < 1e-13);
  // projection: symmetrize(S) = (S, 0)
  SymDecomp sds = symmetrize(sd.S);
  CHECK(sds.D.max_abs() < 1e-13);
}

TEST_CASE("contract3 basics and first-two-slot symmetry") {
  Grid g = Grid::make(3, 6);
  Tensor3Field C(g);
  RealField one(g, [](const std::vector<double>&) { return 1.0; });
  C.set_component(0, 0, 1, one);
  std::vector<cd> e0 = {1, 0, 0}, e1 = {0, 1, 0};
  ComplexField r1 = contract3(C, e0, e0, e1);
  ComplexField r2 = contract3(C, e1, e0, e1);
  std::int64_t node = g.interior_node(3);
  CHECK(std::abs(r1[node] - cd(1.0)) < 1e-14);
  CHECK(std::abs(r2[node]) < 1e-14);

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Tensor3Field R(g);
  for (int j = 0; j < 3; ++j)
    for (int k = j; k < 3; ++k)
      for (int l = 0; l < 3; ++l)
        for (std::int64_t i = 0; i < g.node_count(); ++i) R.set_value(j, k, l, i, U(rng));
  std::vector<cd> a = {cd(0.3, 0.1), cd(-1.0, 0.4), cd(0.2, -0.7)};
  std::vector<cd> b = {cd(1.1, -0.2), cd(0.5, 0.9), cd(-0.3, 0.0)};
  std::vector<cd> c = {cd(0.0, 1.0), cd(0.7, 0.3), cd(0.4, -0.4)};
  ComplexField ab = contract3(R, a, b, c);
  ComplexField ba = contract3(R, b, a, c);
  // brute-force triple loop
  cd want(0.0, 0.0);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l)
        want += R.value(j, k, l, node) * a[j] * b[k] * c[l];
  CHECK(std::abs(ab[node] - want) < 1e-12);
  CHECK(std::abs(ab[node] - ba[node]) < 1e-13);
}

TEST_CASE("pushforward: identity map reproduces the flux") {
  Grid g = Grid::make(3, 7);
  NonlinearitySpec spec(g, 2);
  ScalarBump bump{{0.5, 1.5, 0.5}, 0.3, 0.8};
  spec.J(2).set_component({0, 1}, bump_component(bump, {1.0, 0.5, 0.0}));

  Diffeo id = Diffeo::identity(g);
  PushforwardFlux pf(spec, id);
  SpecFlux sf(spec);
  std::mt19937_64 rng(53);
  RealField s = random_interior_field(g, rng);
  VectorField p = random_vector_field(g, rng);
  VectorField a = pf.excess(s, p);
  VectorField b = sf.excess(s, p);
  for (int c = 0; c < 3; ++c)
    for (std::int64_t i = 0; i < g.node_count(); ++i)
      CHECK(a[c][i] == doctest::Approx(b[c][i]).epsilon(1e-12));
}

TEST_CASE("pushforward of the linear flux has SPD leading matrix") {
  Grid g = Grid::make(3, 9);
  Diffeo phi = Diffeo::radial_bump(g, {0.5, 1.5, 0.5}, 0.35, 0.05);
  // (det M)^{-1} M M^T at a sample of nodes must be SPD
  for (std::int64_t i = 0; i < g.node_count(); i += 37) {
    std::vector<double> y = phi.inverse(g.coords(i));
    Eigen::MatrixXd M = phi.jacobian(y);
    Eigen::MatrixXd A = (M * M.transpose()) / M.determinant();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (A + A.transpose()));
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    CHECK((A - A.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("diffeo: inverse is exact and boundary moves are rejected") {
  Grid g = Grid::make(3, 9);
  Diffeo phi = Diffeo::radial_bump(g, {0.5, 1.5, 0.5}, 0.3, 0.05);
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> U(0.3, 0.7);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> x = {U(rng), 1.0 + U(rng), U(rng)};
    std::vector<double> y = phi.inverse(x);
    std::vector<double> x2 = phi.apply(y);
    for (int a = 0; a < 3; ++a) CHECK(std::abs(x2[a] - x[a]) < 1e-12);
  }
  // support reaching the boundary is rejected
  CHECK_THROWS(Diffeo::radial_bump(g, {0.1, 1.5, 0.5}, 0.3, 0.05));
  // amplitude violating |DPhi - I| < 0.2 is rejected
  CHECK_THROWS(Diffeo::radial_bump(g, {0.5, 1.5, 0.5}, 0.3, 0.5));
}
