#pragma once

#include <stdexcept>
#include <vector>

#include "qlip/flux.hpp"
#include "qlip/poisson.hpp"

namespace qlip {

struct PicardOptions {
  double tol = 1e-10;
  int max_iter = 60;
};

struct SolverReport {
  int iterations = 0;
  std::vector<double> update_norms;  // discrete H1 of successive updates
  double contraction_factor = 0.0;   // fitted from late update ratios
  double stability_K = 0.0;          // ||u||_{H2 surrogate} / ||f||_boundary
  bool converged = false;
};

struct PicardDiverged : std::runtime_error {
  explicit PicardDiverged(const std::string& what) : std::runtime_error(what) {}
};
struct PicardMaxIter : std::runtime_error {
  explicit PicardMaxIter(const std::string& what) : std::runtime_error(what) {}
};

/// Contraction iteration for Delta v + div(excess(v, grad v)) = 0, v|bd = f:
///   v <- u_f - G0( div excess(v, grad v) ).
/// The initial iterate defaults to the harmonic extension u_f.
std::pair<RealField, SolverReport> picard_solve(const FluxEvaluator& flux,
                                                const PoissonSolver& solver,
                                                const BoundaryFunction& f,
                                                const PicardOptions& opts = {},
                                                const RealField* initial = nullptr);

}  // namespace qlip
