#include "qlip/picard.hpp"

#include <cmath>

#include "qlip/calculus.hpp"

namespace qlip {

std::pair<RealField, SolverReport> picard_solve(const FluxEvaluator& flux,
                                                const PoissonSolver& solver,
                                                const BoundaryFunction& f,
                                                const PicardOptions& opts,
                                                const RealField* initial) {
  SolverReport rep;

  RealField u_f = solver.harmonic_extension(f);
  RealField v = initial ? *initial : u_f;

  int grew = 0;
  double prev_update = -1.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    VectorField E = flux.excess(v, gradient(v));
    RealField rhs = divergence(E);
    rhs *= -1.0;
    RealField vnext = solver.solve(rhs, f);

    RealField diff = vnext - v;
    double upd = norm_h1(diff);
    rep.update_norms.push_back(upd);
    rep.iterations = it;
    v = vnext;

    if (upd <= opts.tol) {
      rep.converged = true;
      break;
    }
    if (prev_update >= 0.0 && upd > prev_update) {
      if (++grew >= 3)
        throw PicardDiverged("picard_solve: update norms grew for 3 consecutive iterations "
                             "(boundary data too large for the contraction regime)");
    } else {
      grew = 0;
    }
    prev_update = upd;
  }
  if (!rep.converged)
    throw PicardMaxIter("picard_solve: no convergence in " + std::to_string(opts.max_iter) +
                        " iterations");

  // Fitted contraction factor: geometric mean of consecutive update ratios
  // after the first iteration.
  double prod = 1.0;
  int cnt = 0;
  for (std::size_t i = 2; i < rep.update_norms.size(); ++i) {
    if (rep.update_norms[i - 1] > 0.0 && rep.update_norms[i] > 0.0) {
      prod *= rep.update_norms[i] / rep.update_norms[i - 1];
      ++cnt;
    }
  }
  rep.contraction_factor = cnt > 0 ? std::pow(prod, 1.0 / cnt) : 0.0;

  double fn = boundary_norm(f);
  rep.stability_K = fn > 0.0 ? norm_h2s(v) / fn : 0.0;
  return {std::move(v), rep};
}

}  // namespace qlip
