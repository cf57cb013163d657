#pragma once

#include "qlip/picard.hpp"

namespace qlip {

/// Simulated Dirichlet-to-Neumann map for a quasilinear flux. The weak
/// (volume) pairing <w, Lambda f> = int grad(w) . J(x, u, grad u) is the
/// preferred data channel; the pointwise normal flux is kept for
/// diagnostics, its one-sided differences being only O(h).
class DtNOracle {
 public:
  DtNOracle(const FluxEvaluator& flux, const PoissonSolver& solver, double radius,
            PicardOptions opts = {});

  const Grid& grid() const { return solver_->grid(); }
  double radius() const { return radius_; }
  const PoissonSolver& solver() const { return *solver_; }

  /// Empirical smallness radius: scale a reference boundary profile by
  /// bisection until the Picard iteration stops contracting.
  static double calibrate_radius(const FluxEvaluator& flux, const PoissonSolver& solver,
                                 const BoundaryFunction& profile, PicardOptions opts = {});

  RealField solve(const BoundaryFunction& f) const;

  /// Weak pairing with an analytic probe gradient (sampled on the grid).
  double pair(const VectorField& grad_w, const BoundaryFunction& f) const;
  /// Weak pairing from a grid function probe; checks discrete harmonicity.
  double pair(const RealField& w, const BoundaryFunction& f, double harmonic_tol = 1e-2) const;

  /// Pointwise boundary flux; values at edge/corner nodes average the
  /// one-sided fluxes of the faces meeting there.
  BoundaryFunction apply(const BoundaryFunction& f) const;

 private:
  void check_radius(const BoundaryFunction& f) const;
  const FluxEvaluator* flux_;
  const PoissonSolver* solver_;
  double radius_;
  PicardOptions opts_;
};

}  // namespace qlip
