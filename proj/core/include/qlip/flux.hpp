#pragma once

#include <memory>

#include "qlip/tensors.hpp"

namespace qlip {

/// Nodewise flux with the leading p split off: excess(s, P) = J(x, s, P) - P.
/// The Picard map and the DtN pairing only ever need the excess.
class FluxEvaluator {
 public:
  virtual ~FluxEvaluator() = default;
  virtual const Grid& grid() const = 0;
  virtual VectorField excess(const RealField& s, const VectorField& P) const = 0;
};

/// Flux of a NonlinearitySpec: excess = sum_k J_k : P^{(x)k} + R(x, s, P).
class SpecFlux final : public FluxEvaluator {
 public:
  explicit SpecFlux(const NonlinearitySpec& spec) : spec_(&spec) {}
  const Grid& grid() const override { return spec_->grid(); }
  const NonlinearitySpec& spec() const { return *spec_; }
  VectorField excess(const RealField& s, const VectorField& P) const override;

 private:
  const NonlinearitySpec* spec_;
};

/// [OP] eval_flux: J(x, s, p) = p + excess.
VectorField eval_flux(const NonlinearitySpec& spec, const RealField& s, const VectorField& p);

/// Smooth compactly supported scalar profile a * exp(1 - 1/(1 - r^2)),
/// r = |x - center| / radius, used as the closed-form coefficient catalog.
struct ScalarBump {
  std::vector<double> center;
  double radius = 0.25;
  double amplitude = 1.0;
  double operator()(const std::vector<double>& x) const;
};

/// Analytic tensor component: bump profile times a constant direction.
AnalyticVec bump_component(const ScalarBump& bump, const std::vector<double>& direction);

}  // namespace qlip
