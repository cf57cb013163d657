#include "qlip/flux.hpp"

#include <cmath>

namespace qlip {

VectorField SpecFlux::excess(const RealField& s, const VectorField& P) const {
  const Grid& g = spec_->grid();
  VectorField out(g);
  std::vector<const VectorField*> slots;
  for (const auto& Jk : spec_->tensors) {
    if (Jk.empty()) continue;
    slots.assign(static_cast<std::size_t>(Jk.order()), &P);
    out += Jk.contract(slots);
  }
  if (spec_->remainder.has_value()) {
    const auto& R = *spec_->remainder;
    std::vector<double> p(static_cast<std::size_t>(g.dim()));
    for (std::int64_t i = 0; i < g.node_count(); ++i) {
      for (int c = 0; c < g.dim(); ++c) p[static_cast<std::size_t>(c)] = P[c][i];
      std::vector<double> r = R.eval(g.coords(i), s[i], p);
      for (int c = 0; c < g.dim(); ++c) out[c][i] += r[static_cast<std::size_t>(c)];
    }
  }
  return out;
}

VectorField eval_flux(const NonlinearitySpec& spec, const RealField& s, const VectorField& p) {
  SpecFlux f(spec);
  VectorField out = f.excess(s, p);
  out += p;
  return out;
}

double ScalarBump::operator()(const std::vector<double>& x) const {
  double r2 = 0.0;
  for (std::size_t a = 0; a < center.size(); ++a) {
    double d = (x[a] - center[a]) / radius;
    r2 += d * d;
  }
  if (r2 >= 1.0) return 0.0;
  return amplitude * std::exp(1.0 - 1.0 / (1.0 - r2));
}

AnalyticVec bump_component(const ScalarBump& bump, const std::vector<double>& direction) {
  return [bump, direction](const std::vector<double>& x) {
    double v = bump(x);
    std::vector<double> out(direction.size());
    for (std::size_t c = 0; c < direction.size(); ++c) out[c] = v * direction[c];
    return out;
  };
}

}  // namespace qlip
