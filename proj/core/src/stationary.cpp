#include "qlip/stationary.hpp"

#include <cmath>
#include <stdexcept>

namespace qlip {

using cd = std::complex<double>;

AmplitudeSample polynomial_amplitude(const std::vector<cd>& taylor) {
  AmplitudeSample a;
  a.taylor0 = taylor;
  a.eval = [taylor](double t) {
    cd acc(0.0, 0.0);
    double p = 1.0;
    for (const cd& c : taylor) {
      acc += c * p;
      p *= t;
    }
    return acc;
  };
  return a;
}

namespace {

// coefficient of t^n in conv(A, B) given Taylor coefficient arrays
cd conv_coeff(const std::vector<cd>& A, const std::vector<cd>& B, int n) {
  cd acc(0.0, 0.0);
  for (int i = 0; i <= n; ++i) {
    if (i >= static_cast<int>(A.size())) break;
    int j = n - i;
    if (j >= static_cast<int>(B.size())) continue;
    acc += A[static_cast<std::size_t>(i)] * B[static_cast<std::size_t>(j)];
  }
  return acc;
}

std::vector<cd> poly_pow(const std::vector<cd>& G, int mu, int maxlen) {
  std::vector<cd> r = {cd(1.0, 0.0)};
  for (int m = 0; m < mu; ++m) {
    std::vector<cd> next(std::min<std::size_t>(static_cast<std::size_t>(maxlen), r.size() + G.size()),
                         cd(0.0, 0.0));
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = conv_coeff(r, G, static_cast<int>(i));
    r = std::move(next);
  }
  return r;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

cd stationary_Lj(const PhaseModel& phase, const AmplitudeSample& U, int j) {
  cd inv_half = -1.0 / (2.0 * phase.Fpp0);
  cd ipow = std::pow(cd(0.0, 1.0), cd(-j, 0.0));
  // i^{-j} exactly
  static const cd itab[4] = {cd(1, 0), cd(0, -1), cd(-1, 0), cd(0, 1)};
  ipow = itab[((j % 4) + 4) % 4];

  cd total(0.0, 0.0);
  for (int mu = 0; mu <= 2 * j; ++mu) {
    int nu = j + mu;
    if (2 * nu < 3 * mu) continue;
    int order = 2 * nu;

    // G^mu starts at order 3*mu; the t^order coefficient of G^mu * U needs
    // U-data up to order - 3*mu.
    std::vector<cd> Gmu = poly_pow(phase.G_taylor, mu, order + 1);
    cd coeff = conv_coeff(Gmu, U.taylor0, order);
    if (coeff == cd(0.0, 0.0)) {
      // Check data sufficiency anyway: a truncated U must still cover the
      // reachable orders.
      int needed = order - 3 * mu;
      if (mu == 0) needed = order;
      if (needed >= static_cast<int>(U.taylor0.size()) && mu == 0)
        throw std::invalid_argument("stationary_Lj: amplitude Taylor data too short");
    }
    cd term = ipow * (1.0 / (factorial(nu) * factorial(mu))) * std::pow(inv_half, nu) *
              factorial(order) * coeff;
    total += term;
  }
  return total;
}

StationaryExpansion stationary_expand(const PhaseModel& phase, const AmplitudeSample& U,
                                      double lambda, int k) {
  StationaryExpansion out;
  cd pref = std::exp(cd(0.0, 1.0) * lambda * phase.F0) *
            std::sqrt(2.0 * M_PI * cd(0.0, 1.0) / (lambda * phase.Fpp0));
  cd sum(0.0, 0.0);
  double lp = 1.0;
  for (int j = 0; j < k; ++j) {
    cd lj = stationary_Lj(phase, U, j);
    out.lj.push_back(lj);
    sum += lj / lp;
    lp *= lambda;
  }
  out.value = pref * sum;
  return out;
}

namespace {
cd taylor_at(const AmplitudeSample& U, int derivative_order) {
  if (derivative_order >= static_cast<int>(U.taylor0.size()))
    throw std::invalid_argument("lj closed form: amplitude Taylor data too short");
  return U.taylor0[static_cast<std::size_t>(derivative_order)] * factorial(derivative_order);
}
}  // namespace

cd lj_closed_L0(const AmplitudeSample& U) { return taylor_at(U, 0); }

cd lj_closed_L1(double eps, double x1, const AmplitudeSample& U) {
  double rho2 = x1 * x1 + eps * eps;
  cd U0 = taylor_at(U, 0);
  cd U2 = taylor_at(U, 2);
  return (1.0 / (8.0 * eps)) * (rho2 * U2 + 0.75 * ((3.0 * x1 * x1 - eps * eps) / rho2) * U0);
}

cd lj_closed_L2(double eps, double x1, const AmplitudeSample& U) {
  double rho2 = x1 * x1 + eps * eps;
  double m = 3.0 * x1 * x1 - eps * eps;
  cd U0 = taylor_at(U, 0);
  cd U2 = taylor_at(U, 2);
  cd U4 = taylor_at(U, 4);
  return (1.0 / (128.0 * eps * eps)) *
         (rho2 * rho2 * U4 + 7.5 * m * U2 + (105.0 / 16.0) * (m * m / (rho2 * rho2)) * U0);
}

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1, 1]
const double kGLx[15] = {-0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
                         -0.7244177313601700, -0.5709721726085388, -0.3941513470775634,
                         -0.2011940939974345, 0.0,                 0.2011940939974345,
                         0.3941513470775634,  0.5709721726085388,  0.7244177313601700,
                         0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
const double kGLw[15] = {0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
                         0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
                         0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
                         0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
                         0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

struct Integrand {
  const std::function<cd(double)>& F;
  const std::function<cd(double)>& U;
  double lambda;
  cd operator()(double t) const { return std::exp(cd(0.0, 1.0) * lambda * F(t)) * U(t); }
};

cd gl15(const Integrand& f, double a, double b) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  cd acc(0.0, 0.0);
  for (int i = 0; i < 15; ++i) acc += kGLw[i] * f(mid + half * kGLx[i]);
  return acc * half;
}

void adaptive(const Integrand& f, double a, double b, cd whole, double tol, int depth, cd& out) {
  double mid = 0.5 * (a + b);
  cd left = gl15(f, a, mid), right = gl15(f, mid, b);
  if (depth > 28 || std::abs(left + right - whole) <= tol) {
    out += left + right;
    return;
  }
  adaptive(f, a, mid, left, 0.5 * tol, depth + 1, out);
  adaptive(f, mid, b, right, 0.5 * tol, depth + 1, out);
}

}  // namespace

cd oscillatory_quadrature(const std::function<cd(double)>& F, const std::function<cd(double)>& U,
                          double lambda, double a, double b, double rel_tol) {
  Integrand f{F, U, lambda};
  // initial panels sized to resolve the lambda-dependent concentration
  int panels = std::max(8, static_cast<int>(std::ceil(std::sqrt(lambda))));
  cd rough(0.0, 0.0);
  for (int p = 0; p < panels; ++p)
    rough += gl15(f, a + (b - a) * p / panels, a + (b - a) * (p + 1) / panels);
  double tol = std::abs(rough) * rel_tol + 1e-300;

  cd out(0.0, 0.0);
  for (int p = 0; p < panels; ++p) {
    double pa = a + (b - a) * p / panels, pb = a + (b - a) * (p + 1) / panels;
    adaptive(f, pa, pb, gl15(f, pa, pb), tol / panels, 0, out);
  }
  return out;
}

}  // namespace qlip
