#include "qlip/lambda_extract.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace qlip {

std::vector<double> default_epsilon_ladder(double radius, int N) {
  int count = 2 * (N + 1);
  double lo = radius / 100.0, hi = radius / 4.0;
  std::vector<double> eps(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    eps[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, double(i) / (count - 1));
  return eps;
}

LambdaFit fit_epsilon_series(const std::vector<double>& eps_set, const std::vector<double>& values,
                             int k, int fit_degree) {
  const int n = static_cast<int>(eps_set.size());
  const int M = fit_degree;
  if (k > M) throw std::invalid_argument("fit_epsilon_series: k exceeds fit degree");
  if (n < M) throw std::invalid_argument("fit_epsilon_series: not enough epsilon samples");

  double emax = 0.0;
  for (double e : eps_set) emax = std::max(emax, e);

  Eigen::MatrixXd V(n, M);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    double t = eps_set[static_cast<std::size_t>(i)] / emax;
    double p = t;
    for (int m = 0; m < M; ++m) {
      V(i, m) = p;
      p *= t;
    }
    y[i] = values[static_cast<std::size_t>(i)];
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double cond = svd.singularValues()(0) / svd.singularValues()(M - 1);
  if (!(cond < 1e12))
    throw std::runtime_error("extract_lambda_k: ill-conditioned epsilon ladder (cond " +
                             std::to_string(cond) + ")");
  Eigen::VectorXd a = svd.solve(y);

  LambdaFit fit;
  fit.condition_number = cond;
  fit.coeffs.resize(static_cast<std::size_t>(M));
  for (int m = 1; m <= M; ++m)
    fit.coeffs[static_cast<std::size_t>(m - 1)] = a[m - 1] / std::pow(emax, m);
  fit.value = fit.coeffs[static_cast<std::size_t>(k - 1)];
  return fit;
}

LambdaFit extract_lambda_k(const DtNOracle& oracle, const VectorField& grad_w,
                           const BoundaryFunction& f, int k, const std::vector<double>& eps_set,
                           int fit_degree) {
  if (eps_set.size() < 2) throw std::invalid_argument("extract_lambda_k: need several epsilons");
  int M = fit_degree > 0 ? fit_degree : k + 1;
  std::vector<double> vals;
  vals.reserve(eps_set.size());
  for (double e : eps_set) vals.push_back(oracle.pair(grad_w, e * f));
  return fit_epsilon_series(eps_set, vals, k, M);
}

}  // namespace qlip
