#include "qlip/cascade.hpp"

#include "qlip/calculus.hpp"

namespace qlip {

std::vector<CompositionTerm> enumerate_compositions(int k) {
  std::vector<CompositionTerm> out;
  const int slots = k - 1;
  if (slots < 1) return out;
  std::vector<int> alpha(static_cast<std::size_t>(slots), 0);

  // depth-first over alpha_1..alpha_{k-1} with running sums
  std::function<void(int, int, int)> rec = [&](int j, int sum, int weighted) {
    if (weighted > k) return;
    if (j == slots) {
      if (weighted == k && sum >= 2 && sum <= k - 1) {
        CompositionTerm t;
        t.l = sum;
        t.alpha = alpha;
        long fact = 1;
        for (int r = 2; r <= sum; ++r) fact *= r;
        long denom = 1;
        for (int a : alpha)
          for (int r = 2; r <= a; ++r) denom *= r;
        t.coeff = fact / denom;
        out.push_back(std::move(t));
      }
      return;
    }
    for (int a = 0; sum + a <= k && weighted + (j + 1) * a <= k; ++a) {
      alpha[static_cast<std::size_t>(j)] = a;
      rec(j + 1, sum + a, weighted + (j + 1) * a);
    }
    alpha[static_cast<std::size_t>(j)] = 0;
  };
  rec(0, 0, 0);
  return out;
}

VectorField multinomial_source(const NonlinearitySpec& spec,
                               const std::vector<VectorField>& grads, int k) {
  const Grid& g = spec.grid();
  VectorField out(g);
  if (k < 3) return out;  // N_2 = 0
  for (const auto& term : enumerate_compositions(k)) {
    if (term.l > spec.degree_N) continue;
    const TensorCoefficients& Jl = spec.J(term.l);
    if (Jl.empty()) continue;
    std::vector<const VectorField*> slots;
    for (std::size_t j = 0; j < term.alpha.size(); ++j)
      for (int c = 0; c < term.alpha[j]; ++c) slots.push_back(&grads[j]);
    VectorField v = Jl.contract(slots);
    for (int a = 0; a < g.dim(); ++a) {
      v[a] *= static_cast<double>(term.coeff);
      out[a] += v[a];
    }
  }
  return out;
}

CascadeSolution cascade_solve(const NonlinearitySpec& spec, const PoissonSolver& solver,
                              const BoundaryFunction& f, int N) {
  const Grid& g = solver.grid();
  CascadeSolution sol;
  sol.u.reserve(static_cast<std::size_t>(N));

  sol.u.push_back(solver.harmonic_extension(f));
  std::vector<VectorField> grads;
  grads.push_back(gradient(sol.u.back()));

  for (int k = 2; k <= N; ++k) {
    VectorField src(g);
    if (k <= spec.degree_N && !spec.J(k).empty()) {
      std::vector<const VectorField*> slots(static_cast<std::size_t>(k), &grads[0]);
      src += spec.J(k).contract(slots);
    }
    src += multinomial_source(spec, grads, k);

    RealField rhs = divergence(src);
    rhs *= -1.0;
    sol.u.push_back(solver.solve_zero_bc(rhs));
    grads.push_back(gradient(sol.u.back()));
    sol.source.push_back(std::move(src));
  }
  return sol;
}

}  // namespace qlip
