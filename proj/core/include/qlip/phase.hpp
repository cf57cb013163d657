#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qlip/series.hpp"

namespace qlip {

/// Phase data for the stationary-phase expansion: F with F'(0) = 0,
/// F''(0) != 0, Im F >= 0 on the interval. G = F - F(0) - F''(0) t^2 / 2 is
/// carried as exact Taylor coefficients at 0 (index = power of t).
struct PhaseModel {
  std::function<std::complex<double>(double)> F;
  std::complex<double> F0{0.0, 0.0};
  std::complex<double> Fpp0{0.0, 0.0};
  std::vector<std::complex<double>> G_taylor;  // G_taylor[j] multiplies t^j
};

/// The two phases of the three-solution product tau Psi1 + tau Psi2 -
/// 2 conj(tau) conj(Psi3) = 4 i sigma x1 + sigma F1 + lambda F2, assembled
/// exactly from the series algebra at p3 = p4 = p5 = 0:
///   F2 = 2 (Psi - conj Psi),   F1 = 2 i (Psi + conj Psi) - 4 i x1.
struct PaperPhases {
  PhaseModel F2;
  std::function<std::complex<double>(double)> F1;
  std::complex<double> F1_x2sq;   // x2^2 coefficient of F1
  std::complex<double> F2_x2sq;   // x2^2 coefficient of F2 (= F''(0)/2)
  std::complex<double> F2_x2quart;
};

PaperPhases phase_F(double eps, double x1);

/// Exact symbolic versions on the series algebra (used by the audits).
X2TPoly symbolic_F2(const std::vector<BiSeries>& psi);
X2TPoly symbolic_F1(const std::vector<BiSeries>& psi);

}  // namespace qlip
