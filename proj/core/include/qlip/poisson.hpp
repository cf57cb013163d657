#pragma once

#include <memory>

#include "qlip/grid.hpp"

namespace qlip {

/// Direct sparse solver for the Dirichlet problem
///   Lap v = rhs  on interior nodes,   v = bc  on boundary nodes,
/// with the compact second-order stencil. The factorization is computed once
/// per grid and may be shared read-only across concurrent solves.
class PoissonSolver {
 public:
  explicit PoissonSolver(const Grid& g);
  ~PoissonSolver();
  PoissonSolver(PoissonSolver&&) noexcept;
  PoissonSolver& operator=(PoissonSolver&&) noexcept;

  const Grid& grid() const { return *grid_; }

  /// rhs is read on interior nodes only. Throws on solver failure, reporting
  /// the residual.
  RealField solve(const RealField& rhs, const BoundaryFunction& bc) const;

  /// Harmonic extension (rhs = 0).
  RealField harmonic_extension(const BoundaryFunction& bc) const;

  /// Zero-boundary solution operator G0.
  RealField solve_zero_bc(const RealField& rhs) const;

  /// Max-norm of (Lap v - rhs) over interior nodes.
  double residual(const RealField& v, const RealField& rhs) const;

 private:
  const Grid* grid_;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace qlip
