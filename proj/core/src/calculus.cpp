#include "qlip/calculus.hpp"

#include <cmath>

namespace qlip {

RealField laplacian(const RealField& u) {
  const Grid& g = u.grid();
  RealField out(g);
  const int d = g.dim();
  for (std::int64_t ord = 0; ord < g.interior_count(); ++ord) {
    std::int64_t i = g.interior_node(ord);
    double acc = 0.0;
    for (int a = 0; a < d; ++a) {
      std::int64_t s = g.stride(a);
      double h2 = g.spacing(a) * g.spacing(a);
      acc += (u[i + s] - 2.0 * u[i] + u[i - s]) / h2;
    }
    out[i] = acc;
  }
  return out;
}

RealField partial(const RealField& u, int axis) {
  const Grid& g = u.grid();
  RealField out(g);
  const std::int64_t s = g.stride(axis);
  const double h = g.spacing(axis);
  const int n = g.res(axis);
  for (std::int64_t i = 0; i < g.node_count(); ++i) {
    std::int64_t idx = (i / s) % n;
    if (idx == 0) {
      out[i] = (-3.0 * u[i] + 4.0 * u[i + s] - u[i + 2 * s]) / (2.0 * h);
    } else if (idx == n - 1) {
      out[i] = (3.0 * u[i] - 4.0 * u[i - s] + u[i - 2 * s]) / (2.0 * h);
    } else {
      out[i] = (u[i + s] - u[i - s]) / (2.0 * h);
    }
  }
  return out;
}

VectorField gradient(const RealField& u) {
  const Grid& g = u.grid();
  VectorField v(g);
  for (int a = 0; a < g.dim(); ++a) v[a] = partial(u, a);
  return v;
}

RealField divergence(const VectorField& v) {
  const Grid& g = v.grid();
  RealField out(g);
  for (int a = 0; a < g.dim(); ++a) {
    RealField da = partial(v[a], a);
    out += da;
  }
  return out;
}

double integrate(const RealField& u) {
  const Grid& g = u.grid();
  double acc = 0.0;
  for (std::int64_t i = 0; i < g.node_count(); ++i) acc += u[i] * g.volume_weight(i);
  return acc;
}

double inner(const RealField& a, const RealField& b) {
  const Grid& g = a.grid();
  double acc = 0.0;
  for (std::int64_t i = 0; i < g.node_count(); ++i) acc += a[i] * b[i] * g.volume_weight(i);
  return acc;
}

namespace {

// Trapezoid weight of a boundary node within one face (axis held fixed).
double face_weight(const Grid& g, std::int64_t flat, int face_axis) {
  double w = 1.0;
  for (int a = 0; a < g.dim(); ++a) {
    if (a == face_axis) continue;
    std::int64_t idx = (flat / g.stride(a)) % g.res(a);
    double wa = (idx == 0 || idx == g.res(a) - 1) ? 0.5 * g.spacing(a) : g.spacing(a);
    w *= wa;
  }
  return w;
}

}  // namespace

double boundary_pairing(const Grid& g, const BoundaryFunction& w, const BoundaryFunction& f) {
  double acc = 0.0;
  for (std::int64_t o = 0; o < g.boundary_count(); ++o) {
    std::int64_t i = g.boundary_node(o);
    for (int a = 0; a < g.dim(); ++a) {
      std::int64_t idx = (i / g.stride(a)) % g.res(a);
      if (idx != 0 && idx != g.res(a) - 1) continue;
      acc += w[o] * f[o] * face_weight(g, i, a);
    }
  }
  return acc;
}

double norm_l2(const RealField& u) {
  const Grid& g = u.grid();
  double acc = 0.0;
  for (std::int64_t i = 0; i < g.node_count(); ++i) acc += u[i] * u[i] * g.volume_weight(i);
  return std::sqrt(acc);
}

double norm_h1(const RealField& u) {
  double acc = norm_l2(u);
  acc *= acc;
  for (int a = 0; a < u.grid().dim(); ++a) {
    double p = norm_l2(partial(u, a));
    acc += p * p;
  }
  return std::sqrt(acc);
}

double norm_h2s(const RealField& u) {
  const Grid& g = u.grid();
  double acc = norm_h1(u);
  acc *= acc;
  // Second differences on interior nodes only.
  for (int a = 0; a < g.dim(); ++a) {
    std::int64_t s = g.stride(a);
    double h2 = g.spacing(a) * g.spacing(a);
    double part = 0.0;
    for (std::int64_t ord = 0; ord < g.interior_count(); ++ord) {
      std::int64_t i = g.interior_node(ord);
      double dd = (u[i + s] - 2.0 * u[i] + u[i - s]) / h2;
      part += dd * dd * g.volume_weight(i);
    }
    acc += part;
  }
  return std::sqrt(acc);
}

double boundary_norm(const BoundaryFunction& f) {
  const Grid& g = f.grid();
  double acc = 0.0;
  for (std::int64_t o = 0; o < g.boundary_count(); ++o) {
    std::int64_t i = g.boundary_node(o);
    double w = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      std::int64_t idx = (i / g.stride(a)) % g.res(a);
      if (idx == 0 || idx == g.res(a) - 1) w += face_weight(g, i, a);
    }
    acc += f[o] * f[o] * w;
    // Tangential first differences toward lattice neighbors that are also
    // boundary nodes.
    for (int a = 0; a < g.dim(); ++a) {
      std::int64_t idx = (i / g.stride(a)) % g.res(a);
      if (idx + 1 < g.res(a)) {
        std::int64_t j = i + g.stride(a);
        if (g.is_boundary(j)) {
          double d = (f[g.boundary_ordinal(j)] - f[o]) / g.spacing(a);
          acc += 0.5 * d * d * w;
        }
      }
      if (idx > 0) {
        std::int64_t j = i - g.stride(a);
        if (g.is_boundary(j)) {
          double d = (f[o] - f[g.boundary_ordinal(j)]) / g.spacing(a);
          acc += 0.5 * d * d * w;
        }
      }
    }
  }
  return std::sqrt(acc);
}

double norm_max(const RealField& u) {
  double m = 0.0;
  for (std::int64_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i]));
  return m;
}

}  // namespace qlip
