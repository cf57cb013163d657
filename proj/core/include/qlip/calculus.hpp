#pragma once

#include "qlip/grid.hpp"

namespace qlip {

/// Compact second-order Laplacian stencil; defined on interior nodes,
/// zero on boundary nodes.
RealField laplacian(const RealField& u);

/// Central differences in the interior, second-order one-sided at the
/// boundary. Exact on polynomials of degree <= 2 everywhere.
RealField partial(const RealField& u, int axis);
VectorField gradient(const RealField& u);
RealField divergence(const VectorField& v);

/// Trapezoidal quadrature over the box.
double integrate(const RealField& u);
double inner(const RealField& a, const RealField& b);

/// Surface quadrature pairing sum_faces int_face w*g. Nodes shared between
/// faces contribute once per face with that face's trapezoid weight.
double boundary_pairing(const Grid& g, const BoundaryFunction& w, const BoundaryFunction& f);

double norm_l2(const RealField& u);
double norm_h1(const RealField& u);
/// Scaled l2 norms of u, grad u and second differences (W^{2,p} surrogate).
double norm_h2s(const RealField& u);
/// Discrete surrogate of a boundary trace norm: l2(boundary) plus
/// tangential first differences.
double boundary_norm(const BoundaryFunction& f);
double norm_max(const RealField& u);

}  // namespace qlip
