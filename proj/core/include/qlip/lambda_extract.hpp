#pragma once

#include <vector>

#include "qlip/dtn.hpp"

namespace qlip {

struct LambdaFit {
  double value = 0.0;              // fitted c_k
  std::vector<double> coeffs;      // c_1..c_M
  double condition_number = 0.0;   // of the scaled Vandermonde system
};

/// Geometric ladder of 2*(N+1) epsilon values in [radius/100, radius/4].
std::vector<double> default_epsilon_ladder(double radius, int N);

/// Fit <w, Lambda(eps f)> ~ sum_{m=1..M} c_m eps^m over the ladder and return
/// c_k. Measurement-only access: each sample is one forward solve + pairing.
/// Throws when the fit system's condition number exceeds 1e12.
LambdaFit extract_lambda_k(const DtNOracle& oracle, const VectorField& grad_w,
                           const BoundaryFunction& f, int k, const std::vector<double>& eps_set,
                           int fit_degree = 0);

/// Same fit applied to precomputed pairing samples.
LambdaFit fit_epsilon_series(const std::vector<double>& eps_set, const std::vector<double>& values,
                             int k, int fit_degree);

}  // namespace qlip
