#include "qlip/diffeo.hpp"

#include <cmath>
#include <stdexcept>

namespace qlip {

namespace {

// eta(t) = exp(1 - 1/(1-t^2)) on |t| < 1, 0 outside; eta'(t)/t stays bounded.
double eta(double t2) {
  if (t2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t2));
}

// d eta / d(t^2)
double eta_prime_t2(double t2) {
  if (t2 >= 1.0) return 0.0;
  double m = 1.0 - t2;
  return -eta(t2) / (m * m);
}

}  // namespace

Diffeo Diffeo::identity(const Grid& g) { return Diffeo(g); }

Diffeo Diffeo::radial_bump(const Grid& g, std::vector<double> center, double radius,
                           double amplitude) {
  Diffeo d(g);
  d.identity_ = false;
  d.center_ = std::move(center);
  d.radius_ = radius;
  d.amplitude_ = amplitude;
  d.validate();
  return d;
}

std::vector<double> Diffeo::apply(const std::vector<double>& x) const {
  if (identity_) return x;
  double t2 = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    double dd = (x[a] - center_[a]) / radius_;
    t2 += dd * dd;
  }
  double e = eta(t2);
  std::vector<double> y(x);
  for (std::size_t a = 0; a < x.size(); ++a) y[a] += amplitude_ * e * (x[a] - center_[a]);
  return y;
}

Eigen::MatrixXd Diffeo::jacobian(const std::vector<double>& x) const {
  const int d = grid_->dim();
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(d, d);
  if (identity_) return M;
  double t2 = 0.0;
  std::vector<double> u(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    u[static_cast<std::size_t>(a)] = x[static_cast<std::size_t>(a)] - center_[static_cast<std::size_t>(a)];
    double dd = u[static_cast<std::size_t>(a)] / radius_;
    t2 += dd * dd;
  }
  double e = eta(t2);
  double ep = eta_prime_t2(t2);
  // DPhi_ij = delta_ij (1 + a e) + a * (2 ep / radius^2) u_i u_j
  for (int i = 0; i < d; ++i) {
    M(i, i) += amplitude_ * e;
    for (int j = 0; j < d; ++j)
      M(i, j) += amplitude_ * 2.0 * ep / (radius_ * radius_) * u[static_cast<std::size_t>(i)] *
                 u[static_cast<std::size_t>(j)];
  }
  return M;
}

std::vector<double> Diffeo::inverse(const std::vector<double>& x) const {
  if (identity_) return x;
  std::vector<double> y(x);
  const int d = grid_->dim();
  for (int it = 0; it < 60; ++it) {
    std::vector<double> fx = apply(y);
    Eigen::VectorXd r(d);
    double rn = 0.0;
    for (int a = 0; a < d; ++a) {
      r[a] = fx[static_cast<std::size_t>(a)] - x[static_cast<std::size_t>(a)];
      rn = std::max(rn, std::abs(r[a]));
    }
    if (rn < 1e-14) break;
    Eigen::VectorXd step = jacobian(y).partialPivLu().solve(r);
    for (int a = 0; a < d; ++a) y[static_cast<std::size_t>(a)] -= step[a];
  }
  return y;
}

double Diffeo::max_jacobian_deviation() const {
  if (identity_) return 0.0;
  const Grid& g = *grid_;
  double m = 0.0;
  for (std::int64_t i = 0; i < g.node_count(); ++i) {
    Eigen::MatrixXd M = jacobian(g.coords(i));
    for (int r = 0; r < g.dim(); ++r)
      for (int c = 0; c < g.dim(); ++c) {
        double dev = std::abs(M(r, c) - (r == c ? 1.0 : 0.0));
        m = std::max(m, dev);
      }
  }
  return m;
}

void Diffeo::validate() const {
  if (identity_) return;
  const Grid& g = *grid_;
  // Bump support must not touch the boundary.
  for (int a = 0; a < g.dim(); ++a) {
    if (center_[static_cast<std::size_t>(a)] - radius_ <= g.extent(a).lo ||
        center_[static_cast<std::size_t>(a)] + radius_ >= g.extent(a).hi)
      throw std::invalid_argument("Diffeo: bump support reaches the boundary");
  }
  for (std::int64_t o = 0; o < g.boundary_count(); ++o) {
    std::vector<double> x = g.coords(g.boundary_node(o));
    std::vector<double> y = apply(x);
    for (int a = 0; a < g.dim(); ++a)
      if (std::abs(y[static_cast<std::size_t>(a)] - x[static_cast<std::size_t>(a)]) > 1e-14)
        throw std::invalid_argument("Diffeo: boundary node moved");
  }
  if (max_jacobian_deviation() >= 0.2)
    throw std::invalid_argument("Diffeo: |DPhi - I| >= 0.2, outside the perturbative regime");
  for (std::int64_t i = 0; i < g.node_count(); ++i) {
    if (jacobian(g.coords(i)).determinant() <= 0.0)
      throw std::invalid_argument("Diffeo: non-positive Jacobian determinant");
  }
}

PushforwardFlux::PushforwardFlux(const NonlinearitySpec& spec, const Diffeo& phi)
    : spec_(&spec), phi_(&phi) {
  if (spec.remainder.has_value())
    throw std::invalid_argument("PushforwardFlux: remainder terms are not supported");
  for (const auto& t : spec.tensors)
    if (!t.all_analytic())
      throw std::invalid_argument("PushforwardFlux: tensors need analytic backing");
}

VectorField PushforwardFlux::excess(const RealField& /*s*/, const VectorField& P) const {
  const Grid& g = spec_->grid();
  const int d = g.dim();
  VectorField out(g);
  std::vector<double> p(static_cast<std::size_t>(d));
  for (std::int64_t i = 0; i < g.node_count(); ++i) {
    std::vector<double> x = g.coords(i);
    std::vector<double> y = phi_->inverse(x);
    Eigen::MatrixXd M = phi_->jacobian(y);
    double det = M.determinant();

    Eigen::VectorXd pv(d);
    for (int a = 0; a < d; ++a) pv[a] = P[a][i];
    Eigen::VectorXd q = M.transpose() * pv;  // flux argument at y

    // J(y, s, q) = q + sum_k J_k(y) : q^{(x)k}
    std::vector<double> qstd(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) qstd[static_cast<std::size_t>(a)] = q[a];
    Eigen::VectorXd flux = q;
    for (const auto& Jk : spec_->tensors) {
      if (Jk.empty()) continue;
      std::vector<std::vector<double>> slots(static_cast<std::size_t>(Jk.order()), qstd);
      std::vector<double> add = Jk.contract_at(y, slots);
      for (int a = 0; a < d; ++a) flux[a] += add[static_cast<std::size_t>(a)];
    }
    Eigen::VectorXd jt = (M * flux) / det;
    for (int a = 0; a < d; ++a) out[a][i] = jt[a] - pv[a];
  }
  return out;
}

}  // namespace qlip
