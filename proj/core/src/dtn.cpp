#include "qlip/dtn.hpp"

#include <cmath>
#include <stdexcept>

#include "qlip/calculus.hpp"

namespace qlip {

DtNOracle::DtNOracle(const FluxEvaluator& flux, const PoissonSolver& solver, double radius,
                     PicardOptions opts)
    : flux_(&flux), solver_(&solver), radius_(radius), opts_(opts) {}

double DtNOracle::calibrate_radius(const FluxEvaluator& flux, const PoissonSolver& solver,
                                   const BoundaryFunction& profile, PicardOptions opts) {
  double base = boundary_norm(profile);
  if (base == 0.0) throw std::invalid_argument("calibrate_radius: zero profile");

  auto converges = [&](double scale) {
    BoundaryFunction f = (scale / base) * profile;
    try {
      picard_solve(flux, solver, f, opts);
      return true;
    } catch (const PicardDiverged&) {
      return false;
    } catch (const PicardMaxIter&) {
      return false;
    }
  };

  double lo = 1e-4;
  if (!converges(lo)) return lo;  // degenerate; caller may tighten
  double hi = lo;
  for (int i = 0; i < 24 && converges(hi * 2.0); ++i) hi *= 2.0;
  if (hi >= lo * std::pow(2.0, 23)) return hi;  // never diverged in range
  double bad = hi * 2.0;
  for (int i = 0; i < 12; ++i) {
    double mid = std::sqrt(hi * bad);
    if (converges(mid))
      hi = mid;
    else
      bad = mid;
  }
  return 0.5 * hi;
}

void DtNOracle::check_radius(const BoundaryFunction& f) const {
  double n = boundary_norm(f);
  if (n >= radius_)
    throw std::invalid_argument("DtNOracle: boundary data norm " + std::to_string(n) +
                                " is outside the smallness radius " + std::to_string(radius_));
}

RealField DtNOracle::solve(const BoundaryFunction& f) const {
  check_radius(f);
  return picard_solve(*flux_, *solver_, f, opts_).first;
}

double DtNOracle::pair(const VectorField& grad_w, const BoundaryFunction& f) const {
  RealField u = solve(f);
  VectorField gu = gradient(u);
  VectorField E = flux_->excess(u, gu);
  double acc = 0.0;
  for (int a = 0; a < grid().dim(); ++a) {
    acc += inner(grad_w[a], gu[a]);
    acc += inner(grad_w[a], E[a]);
  }
  return acc;
}

double DtNOracle::pair(const RealField& w, const BoundaryFunction& f, double harmonic_tol) const {
  RealField lw = laplacian(w);
  double rel = norm_l2(lw) / (1.0 + norm_h1(w));
  if (rel > harmonic_tol)
    throw std::invalid_argument("DtNOracle::pair: probe is not discretely harmonic (residual " +
                                std::to_string(rel) + ")");
  return pair(gradient(w), f);
}

BoundaryFunction DtNOracle::apply(const BoundaryFunction& f) const {
  const Grid& g = grid();
  RealField u = solve(f);
  VectorField E = flux_->excess(u, gradient(u));

  BoundaryFunction out(g);
  for (std::int64_t o = 0; o < g.boundary_count(); ++o) {
    std::int64_t i = g.boundary_node(o);
    double acc = 0.0;
    int faces = 0;
    for (int a = 0; a < g.dim(); ++a) {
      std::int64_t idx = (i / g.stride(a)) % g.res(a);
      double h = g.spacing(a);
      if (idx == 0) {
        double du = (u[i + g.stride(a)] - u[i]) / h;  // inward difference
        acc += -(du + E[a][i]);
        ++faces;
      } else if (idx == g.res(a) - 1) {
        double du = (u[i] - u[i - g.stride(a)]) / h;
        acc += du + E[a][i];
        ++faces;
      }
    }
    out[o] = acc / faces;
  }
  return out;
}

}  // namespace qlip
