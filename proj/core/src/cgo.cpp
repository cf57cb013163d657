#include "qlip/cgo.hpp"

#include <cmath>
#include <stdexcept>

namespace qlip {

CGOEvaluator::CGOEvaluator(const CGOParams& params) {
  const std::size_t d = params.xi.size();
  if (params.mu.size() != d) throw std::invalid_argument("cgo: xi/mu dimension mismatch");
  double nxi2 = 0.0, nmu2 = 0.0, dot = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    nxi2 += params.xi[a] * params.xi[a];
    nmu2 += params.mu[a] * params.mu[a];
    dot += params.xi[a] * params.mu[a];
  }
  if (nxi2 == 0.0) throw std::invalid_argument("cgo: xi must be nonzero");
  if (std::abs(nmu2 - 1.0) > 1e-12) throw std::invalid_argument("cgo: mu must be a unit vector");
  if (std::abs(dot) > 1e-12 * std::sqrt(nxi2)) throw std::invalid_argument("cgo: xi and mu must be orthogonal");

  double nxi = std::sqrt(nxi2);
  zeta_.resize(d);
  for (std::size_t a = 0; a < d; ++a)
    zeta_[a] = std::complex<double>(0.5 * params.xi[a], 0.5 * params.sign * nxi * params.mu[a]);

  std::complex<double> zz(0.0, 0.0);
  for (std::size_t a = 0; a < d; ++a) zz += zeta_[a] * zeta_[a];
  if (std::abs(zz) > 1e-14 * (1.0 + nxi2))
    throw std::invalid_argument("cgo: zeta.zeta != 0");
}

std::complex<double> CGOEvaluator::value(const std::vector<double>& x) const {
  std::complex<double> ph(0.0, 0.0);
  for (std::size_t a = 0; a < zeta_.size(); ++a) ph += zeta_[a] * x[a];
  return std::exp(std::complex<double>(0.0, 1.0) * ph);
}

std::vector<std::complex<double>> CGOEvaluator::gradient(const std::vector<double>& x) const {
  std::complex<double> v = value(x);
  std::vector<std::complex<double>> g(zeta_.size());
  for (std::size_t a = 0; a < zeta_.size(); ++a) g[a] = std::complex<double>(0.0, 1.0) * zeta_[a] * v;
  return g;
}

CGOEvaluator cgo(const CGOParams& params) { return CGOEvaluator(params); }

}  // namespace qlip
