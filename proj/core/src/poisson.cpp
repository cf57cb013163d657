#include "qlip/poisson.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qlip/calculus.hpp"

namespace qlip {

struct PoissonSolver::Impl {
  Eigen::SparseMatrix<double> A;  // -Lap on interior unknowns (SPD)
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
};

PoissonSolver::PoissonSolver(const Grid& g) : grid_(&g), impl_(new Impl) {
  const std::int64_t n = g.interior_count();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) * (2 * g.dim() + 1));
  for (std::int64_t row = 0; row < n; ++row) {
    std::int64_t i = g.interior_node(row);
    double diag = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      double inv_h2 = 1.0 / (g.spacing(a) * g.spacing(a));
      diag += 2.0 * inv_h2;
      for (int sgn : {-1, +1}) {
        std::int64_t j = i + sgn * g.stride(a);
        if (g.is_interior(j))
          trip.emplace_back(static_cast<int>(row), static_cast<int>(g.interior_ordinal(j)), -inv_h2);
      }
    }
    trip.emplace_back(static_cast<int>(row), static_cast<int>(row), diag);
  }
  impl_->A.resize(static_cast<int>(n), static_cast<int>(n));
  impl_->A.setFromTriplets(trip.begin(), trip.end());
  impl_->ldlt.compute(impl_->A);
  if (impl_->ldlt.info() != Eigen::Success)
    throw std::runtime_error("PoissonSolver: factorization failed");
}

PoissonSolver::~PoissonSolver() = default;
PoissonSolver::PoissonSolver(PoissonSolver&&) noexcept = default;
PoissonSolver& PoissonSolver::operator=(PoissonSolver&&) noexcept = default;

RealField PoissonSolver::solve(const RealField& rhs, const BoundaryFunction& bc) const {
  const Grid& g = *grid_;
  const std::int64_t n = g.interior_count();
  Eigen::VectorXd b(n);
  for (std::int64_t row = 0; row < n; ++row) {
    std::int64_t i = g.interior_node(row);
    double v = -rhs[i];
    for (int a = 0; a < g.dim(); ++a) {
      double inv_h2 = 1.0 / (g.spacing(a) * g.spacing(a));
      for (int sgn : {-1, +1}) {
        std::int64_t j = i + sgn * g.stride(a);
        if (g.is_boundary(j)) v += inv_h2 * bc[g.boundary_ordinal(j)];
      }
    }
    b[row] = v;
  }
  Eigen::VectorXd x = impl_->ldlt.solve(b);
  if (impl_->ldlt.info() != Eigen::Success)
    throw std::runtime_error("PoissonSolver: linear solve failed");

  RealField out(g);
  for (std::int64_t row = 0; row < n; ++row) out[g.interior_node(row)] = x[row];
  for (std::int64_t o = 0; o < g.boundary_count(); ++o) out[g.boundary_node(o)] = bc[o];

  double res = residual(out, rhs);
  double scale = 1.0 + b.cwiseAbs().maxCoeff();
  if (!(res < 1e-8 * scale))
    throw std::runtime_error("PoissonSolver: solve did not converge, residual " + std::to_string(res));
  return out;
}

RealField PoissonSolver::harmonic_extension(const BoundaryFunction& bc) const {
  return solve(RealField(*grid_), bc);
}

RealField PoissonSolver::solve_zero_bc(const RealField& rhs) const {
  return solve(rhs, BoundaryFunction(*grid_));
}

double PoissonSolver::residual(const RealField& v, const RealField& rhs) const {
  const Grid& g = *grid_;
  RealField lap = laplacian(v);
  double m = 0.0;
  for (std::int64_t ord = 0; ord < g.interior_count(); ++ord) {
    std::int64_t i = g.interior_node(ord);
    m = std::max(m, std::abs(lap[i] - rhs[i]));
  }
  return m;
}

}  // namespace qlip
