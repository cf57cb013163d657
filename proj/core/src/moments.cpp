#include "qlip/moments.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace qlip {

namespace {

// (2l-1)!! / (2^l l!) as an exact rational
std::vector<Rat> sqrt_series(int n) {
  std::vector<Rat> c(static_cast<std::size_t>(n) + 1);
  c[0] = 1;
  for (int l = 1; l <= n; ++l)
    c[static_cast<std::size_t>(l)] = c[static_cast<std::size_t>(l - 1)] * rat(2 * l - 1, 2 * l);
  return c;
}

}  // namespace

std::vector<Rat> taylor_product_route(int max_order) {
  std::vector<Rat> s = sqrt_series(max_order);
  std::vector<Rat> out(static_cast<std::size_t>(max_order) + 1);
  for (int j = 0; j <= max_order; ++j) {
    Rat acc = 0;
    for (int l = 0; l <= j; ++l) {
      Rat term = s[static_cast<std::size_t>(l)];
      if ((j - l) % 2 == 1) term = -term;
      acc += term;
    }
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

std::vector<Rat> alternating_partial_sums(int max_order) {
  std::vector<Rat> s = sqrt_series(max_order);
  std::vector<Rat> out(static_cast<std::size_t>(max_order) + 1);
  Rat acc = 0;
  for (int j = 0; j <= max_order; ++j) {
    Rat term = s[static_cast<std::size_t>(j)];
    if (j % 2 == 1) term = -term;
    acc += term;
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

std::vector<Rat> partial_sum_route(int max_order) {
  std::vector<Rat> sums = alternating_partial_sums(max_order);
  std::vector<Rat> out(static_cast<std::size_t>(max_order) + 1);
  for (int j = 0; j <= max_order; ++j) {
    Rat a = sums[static_cast<std::size_t>(j)];
    if (j % 2 == 1) a = -a;
    out[static_cast<std::size_t>(j)] = a;
  }
  return out;
}

MomentReport moment_checks(int max_order, int moment_system_size) {
  MomentReport rep;
  rep.max_order = max_order;

  std::vector<Rat> a = taylor_product_route(max_order);
  std::vector<Rat> b = partial_sum_route(max_order);
  rep.routes_agree = (a == b);

  rep.coefficients_nonzero = true;
  for (const Rat& c : a)
    if (c == 0) rep.coefficients_nonzero = false;

  rep.partial_sums_positive = true;
  for (const Rat& s : alternating_partial_sums(max_order))
    if (!(s > 0)) rep.partial_sums_positive = false;

  // Conditioning of the moment system {int_I f t^{-mu-k}}, mu = 1/2, I=[1,2]:
  // Gram G_{jk} = int_1^2 t^{-1-j-k} dt.
  const int n = moment_system_size;
  Eigen::MatrixXd G(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      int p = j + k;
      G(j, k) = p == 0 ? std::log(2.0) : (1.0 - std::pow(2.0, -p)) / p;
    }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(G);
  rep.moment_condition_number = svd.singularValues()(0) / svd.singularValues()(n - 1);
  return rep;
}

}  // namespace qlip
