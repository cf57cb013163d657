#pragma once

#include <vector>

#include "qlip/rational.hpp"

namespace qlip {

/// Exact Taylor coefficients of (1-z)^{-1/2} (1+z)^{-1} at 0, two routes:
/// the convolution of the two factor series, and the closed alternating
/// double-factorial partial sums (-1)^j sum_{l<=j} (-1)^l (2l-1)!!/(2^l l!).
std::vector<Rat> taylor_product_route(int max_order);
std::vector<Rat> partial_sum_route(int max_order);

/// Partial sums s_j = sum_{l<=j} (-1)^l (2l-1)!!/(2^l l!) (all positive).
std::vector<Rat> alternating_partial_sums(int max_order);

struct MomentReport {
  int max_order = 0;
  bool routes_agree = false;
  bool coefficients_nonzero = false;
  bool partial_sums_positive = false;
  double moment_condition_number = 0.0;  // Gram of {t^{-mu-k}} on [1, 2]
};

MomentReport moment_checks(int max_order, int moment_system_size = 8);

}  // namespace qlip
