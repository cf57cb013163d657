#pragma once

#include <Eigen/Dense>
#include <memory>

#include "qlip/flux.hpp"

namespace qlip {

/// Boundary-fixing diffeomorphism from a small closed-form catalog:
/// identity, or a radial bump displacement supported strictly inside the
/// domain. The Jacobian is analytic; the inverse is computed by Newton
/// iteration (the map is a small perturbation of the identity).
class Diffeo {
 public:
  static Diffeo identity(const Grid& g);
  /// Phi(x) = x + amplitude * eta(|x-center|/radius) * (x - center).
  static Diffeo radial_bump(const Grid& g, std::vector<double> center, double radius,
                            double amplitude);

  const Grid& grid() const { return *grid_; }
  bool is_identity() const { return identity_; }

  std::vector<double> apply(const std::vector<double>& x) const;
  Eigen::MatrixXd jacobian(const std::vector<double>& x) const;
  std::vector<double> inverse(const std::vector<double>& x) const;

  /// Largest |DPhi - I| entry over grid nodes; used in the validity check.
  double max_jacobian_deviation() const;
  /// Throws unless the map fixes every boundary node, has positive Jacobian
  /// determinant, and stays within the perturbative regime.
  void validate() const;

 private:
  explicit Diffeo(const Grid& g) : grid_(&g) {}
  const Grid* grid_;
  bool identity_ = true;
  std::vector<double> center_;
  double radius_ = 0.0;
  double amplitude_ = 0.0;
};

/// Gauge-transformed flux (det M)^{-1} M J(y, s, M^T p), y = Phi^{-1}(x),
/// M = DPhi(y). Requires the base spec's tensors to have analytic backing
/// (they are sampled off the lattice) and no remainder term.
class PushforwardFlux final : public FluxEvaluator {
 public:
  PushforwardFlux(const NonlinearitySpec& spec, const Diffeo& phi);
  const Grid& grid() const override { return spec_->grid(); }
  VectorField excess(const RealField& s, const VectorField& P) const override;

 private:
  const NonlinearitySpec* spec_;
  const Diffeo* phi_;
};

}  // namespace qlip
