#pragma once

#include "qlip/poisson.hpp"
#include "qlip/tensors.hpp"

namespace qlip {

/// One term of the multinomial source: order l, exponents alpha_j (alpha[j-1]
/// copies of grad u_j), multinomial coefficient l!/prod(alpha_j!).
struct CompositionTerm {
  int l = 0;
  std::vector<int> alpha;
  long coeff = 0;
};

/// All (l, alpha) with sum alpha = l in [2, k-1] and sum j*alpha_j = k.
std::vector<CompositionTerm> enumerate_compositions(int k);

/// N_k = sum over compositions of (l!/prod alpha!) J_l : (grad u_1)^a1 (x) ...
/// grads[j-1] holds grad u_j. Tensors of order > spec degree contribute zero.
VectorField multinomial_source(const NonlinearitySpec& spec,
                               const std::vector<VectorField>& grads, int k);

struct CascadeSolution {
  std::vector<RealField> u;         // u[0] = u_1, ...
  std::vector<VectorField> source;  // source[k-2] = J_k term + N_k at level k
  const RealField& level(int k) const { return u.at(static_cast<std::size_t>(k - 1)); }
};

/// u_1 = harmonic extension of f; for k >= 2,
///   u_k = G0( -div( J_k : (grad u_1)^k + N_k ) ), zero trace.
CascadeSolution cascade_solve(const NonlinearitySpec& spec, const PoissonSolver& solver,
                              const BoundaryFunction& f, int N);

}  // namespace qlip
