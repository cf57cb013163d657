#pragma once

#include "qlip/phase.hpp"

namespace qlip {

/// Amplitude with pointwise evaluation plus exact Taylor data at the
/// stationary point: taylor0[j] = U^{(j)}(0) / j!.
struct AmplitudeSample {
  std::function<std::complex<double>(double)> eval;
  std::vector<std::complex<double>> taylor0;
};

AmplitudeSample polynomial_amplitude(const std::vector<std::complex<double>>& taylor);

/// Generic L_j from the stationary-phase double sum
///   L_j U = sum_{nu-mu=j, 2nu>=3mu} i^{-j} (1/(nu! mu!)) (-1/(2F''(0)))^nu
///           d^{2nu}/dt^{2nu} (G^mu U)(0).
/// Throws when U's Taylor data is too short for a requested derivative.
std::complex<double> stationary_Lj(const PhaseModel& phase, const AmplitudeSample& U, int j);

struct StationaryExpansion {
  std::complex<double> value;
  std::vector<std::complex<double>> lj;  // L_0 .. L_{k-1}
};

/// e^{i lambda F(0)} (2 pi i / (lambda F''(0)))^{1/2} sum_{j<k} lambda^{-j} L_j U.
StationaryExpansion stationary_expand(const PhaseModel& phase, const AmplitudeSample& U,
                                      double lambda, int k);

/// Closed forms of L_0, L_1, L_2 for the paper phase F_2 at (x1, eps).
/// The U-term constant of L_1 is 3/4 (derived from the generic double sum
/// and confirmed by the exact Gaussian-moment oracle; the source displays
/// 1/8 there, which is inconsistent with its own L_j formula).
std::complex<double> lj_closed_L0(const AmplitudeSample& U);
std::complex<double> lj_closed_L1(double eps, double x1, const AmplitudeSample& U);
std::complex<double> lj_closed_L2(double eps, double x1, const AmplitudeSample& U);

/// Adaptive composite Gauss-Legendre quadrature of e^{i lambda F(t)} U(t)
/// over [a, b] to relative tolerance.
std::complex<double> oscillatory_quadrature(const std::function<std::complex<double>(double)>& F,
                                            const std::function<std::complex<double>(double)>& U,
                                            double lambda, double a, double b,
                                            double rel_tol = 1e-12);

}  // namespace qlip
