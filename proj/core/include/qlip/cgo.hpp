#pragma once

#include <complex>
#include <vector>

#include "qlip/grid.hpp"

namespace qlip {

/// Parameters of a complex geometrical optics exponential: xi != 0,
/// |mu| = 1, xi . mu = 0, zeta = xi/2 +- i |xi| mu / 2 with zeta.zeta = 0.
struct CGOParams {
  std::vector<double> xi;
  std::vector<double> mu;
  int sign = +1;
};

/// e^{i zeta . x}, exactly harmonic, with gradient i zeta e^{i zeta . x}.
class CGOEvaluator {
 public:
  explicit CGOEvaluator(const CGOParams& params);

  const std::vector<std::complex<double>>& zeta() const { return zeta_; }
  std::complex<double> value(const std::vector<double>& x) const;
  std::vector<std::complex<double>> gradient(const std::vector<double>& x) const;

 private:
  std::vector<std::complex<double>> zeta_;
};

CGOEvaluator cgo(const CGOParams& params);

}  // namespace qlip
