#include "qlip/quasimode.hpp"

#include <cmath>

namespace qlip {

QuasimodeSymbols::QuasimodeSymbols() {
  std::tie(p3, p3c) = tab.add_pair("p3");
  std::tie(p4, p4c) = tab.add_pair("p4");
  std::tie(p5, p5c) = tab.add_pair("p5");
  std::tie(q1, q1c) = tab.add_pair("q1");
  sigma = tab.add("sigma");
}

std::vector<std::complex<double>> QuasimodeSymbols::values(std::complex<double> vp3,
                                                           std::complex<double> vp4,
                                                           std::complex<double> vp5,
                                                           std::complex<double> vq1,
                                                           double vsigma) const {
  std::vector<std::complex<double>> vals(static_cast<std::size_t>(tab.size()));
  vals[static_cast<std::size_t>(p3)] = vp3;
  vals[static_cast<std::size_t>(p3c)] = std::conj(vp3);
  vals[static_cast<std::size_t>(p4)] = vp4;
  vals[static_cast<std::size_t>(p4c)] = std::conj(vp4);
  vals[static_cast<std::size_t>(p5)] = vp5;
  vals[static_cast<std::size_t>(p5c)] = std::conj(vp5);
  vals[static_cast<std::size_t>(q1)] = vq1;
  vals[static_cast<std::size_t>(q1c)] = std::conj(vq1);
  vals[static_cast<std::size_t>(sigma)] = vsigma;
  return vals;
}

std::vector<BiSeries> psi_series(const SymTable* tab, const ParamPoly& p3, const ParamPoly& p4,
                                 const ParamPoly& p5) {
  std::vector<BiSeries> psi(6, BiSeries(tab));
  psi[0] = BiSeries::x1(tab);
  // psi_1 = 0
  psi[2] = BiSeries::monomial(tab, -2, 0, GaussRat(rat(1, 2)));
  psi[3] = BiSeries::monomial(tab, -6, 0, p3);
  psi[4] = BiSeries::monomial(tab, -6, 0, GaussRat(rat(-1, 8))) +
           BiSeries::monomial(tab, -10, 0, (p3 * p3).scaled(GaussRat(rat(9, 2)))) +
           BiSeries::monomial(tab, -8, 0, p4);
  psi[5] = BiSeries::monomial(tab, -14, 0, (p3 * p3 * p3).scaled(GaussRat(rat(27)))) +
           BiSeries::monomial(tab, -12, 0, (p3 * p4).scaled(GaussRat(rat(12)))) +
           BiSeries::monomial(tab, -10, 0, p5);
  return psi;
}

BiSeries v00_series(const SymTable* tab) { return BiSeries::monomial(tab, -1, 0, GaussRat(1)); }

BiSeries v01_series(const SymTable* tab, const ParamPoly& p3, const ParamPoly& q1) {
  return BiSeries::monomial(tab, -5, 0, p3.scaled(GaussRat(rat(3)))) +
         BiSeries::monomial(tab, -3, 0, q1);
}

X2TPoly phase_poly(const std::vector<BiSeries>& psi) {
  X2TPoly P(psi.empty() ? nullptr : psi.front().table());
  for (std::size_t j = 0; j < psi.size(); ++j) P.set(static_cast<int>(j), 0, psi[j]);
  return P;
}

namespace {

X2TPoly amp_poly(const std::vector<std::vector<BiSeries>>& v, const SymTable* tab) {
  X2TPoly A(tab);
  for (std::size_t k = 0; k < v.size(); ++k)
    for (std::size_t j = 0; j < v[k].size(); ++j)
      A.add(static_cast<int>(j), static_cast<int>(k), v[k][j]);
  return A;
}

X2TPoly level_poly(const std::vector<BiSeries>& row, const SymTable* tab) {
  X2TPoly A(tab);
  for (std::size_t j = 0; j < row.size(); ++j) A.add(static_cast<int>(j), 0, row[j]);
  return A;
}

X2TPoly shift_t(const X2TPoly& p, int dm) {
  X2TPoly r(p.table());
  for (const auto& [k, c] : p.terms()) r.add(k.first, k.second + dm, c);
  return r;
}

}  // namespace

X2TPoly eikonal_residual(const std::vector<BiSeries>& psi) {
  const SymTable* tab = psi.front().table();
  X2TPoly P = phase_poly(psi);
  X2TPoly d1 = P.ddx1(), d2 = P.ddx2();
  X2TPoly res = d1 * d1 + d2 * d2;
  res -= X2TPoly::term(0, 0, BiSeries::constant(tab, GaussRat(1)));
  return res;
}

X2TPoly transport_residual(const std::vector<BiSeries>& psi,
                           const std::vector<std::vector<BiSeries>>& v, int k) {
  const SymTable* tab = psi.front().table();
  X2TPoly P = phase_poly(psi);
  X2TPoly d1 = P.ddx1(), d2 = P.ddx2();
  X2TPoly lapP = d1.ddx1() + d2.ddx2();

  X2TPoly Vk = level_poly(v.at(static_cast<std::size_t>(k)), tab);
  X2TPoly res = (d1 * Vk.ddx1() + d2 * Vk.ddx2()).scaled(GaussRat(rat(2))) + lapP * Vk;
  if (k >= 1) {
    X2TPoly Vp = level_poly(v.at(static_cast<std::size_t>(k - 1)), tab);
    X2TPoly lapVp = Vp.ddx1().ddx1() + Vp.ddx2().ddx2();
    res -= lapVp.scaled(GaussRat(rat(0), rat(1)));  // -i * Lap' v_{k-1}
  }
  return res;
}

BiSeries solve_transport(const std::vector<BiSeries>& psi,
                         std::vector<std::vector<BiSeries>>& v, int k, int j,
                         const ParamPoly& free_constant) {
  const SymTable* tab = psi.front().table();
  if (static_cast<int>(v.size()) <= k) v.resize(static_cast<std::size_t>(k) + 1);
  if (static_cast<int>(v[static_cast<std::size_t>(k)].size()) <= j)
    v[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(j) + 1, BiSeries(tab));
  v[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = BiSeries(tab);

  X2TPoly R = transport_residual(psi, v, k);
  BiSeries g = R.coeff(j, 0);

  const int s = 2 * j + 1;
  BiSeries integrand =
      (BiSeries::monomial(tab, s, 0, GaussRat(1)) * g).scaled(GaussRat(rat(1, 2)));
  auto F = integrand.antiderivative();
  if (!F.has_value())
    throw UnresolvedRecurrence("solve_transport: logarithmic obstruction at (k=" +
                               std::to_string(k) + ", j=" + std::to_string(j) + ")");
  BiSeries vkj = -(BiSeries::monomial(tab, -s, 0, GaussRat(1)) * *F);
  vkj += BiSeries::monomial(tab, -s, 0, free_constant);
  v[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = vkj;

  X2TPoly check = transport_residual(psi, v, k);
  if (!check.coeff(j, 0).is_zero())
    throw std::logic_error("solve_transport: residual did not close at the solved order");
  return vkj;
}

QuasimodeSeries build_quasimode_series(const QuasimodeSymbols& sym, int amp_orders,
                                       int x2_orders) {
  const SymTable* tab = &sym.tab;
  QuasimodeSeries qs;
  qs.psi = psi_series(tab, sym.sym(sym.p3), sym.sym(sym.p4), sym.sym(sym.p5));
  qs.v.resize(static_cast<std::size_t>(amp_orders));
  qs.v[0].push_back(v00_series(tab));
  if (x2_orders >= 1) qs.v[0].push_back(v01_series(tab, sym.sym(sym.p3), sym.sym(sym.q1)));
  ParamPoly zero(tab);
  for (int j = 2; j <= x2_orders; ++j) solve_transport(qs.psi, qs.v, 0, j, zero);
  for (int k = 1; k < amp_orders; ++k)
    for (int j = 0; j <= x2_orders - 2 * k; ++j) solve_transport(qs.psi, qs.v, k, j, zero);
  return qs;
}

// ----------------------------------------------------------------- numeric

namespace {
double phi_fn(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double phi_d1(double x) { return x > 0.0 ? phi_fn(x) / (x * x) : 0.0; }
double phi_d2(double x) {
  if (x <= 0.0) return 0.0;
  return phi_fn(x) * (1.0 / (x * x * x * x) - 2.0 / (x * x * x));
}
}  // namespace

double SmoothCutoff::operator()(double t) const {
  double u = std::abs(t);
  if (u <= 0.5) return 1.0;
  if (u >= 1.0) return 0.0;
  double s = 2.0 * u - 1.0;
  double a = phi_fn(1.0 - s), b = phi_fn(s);
  return a / (a + b);
}

double SmoothCutoff::d1(double t) const {
  double u = std::abs(t);
  if (u <= 0.5 || u >= 1.0) return 0.0;
  double s = 2.0 * u - 1.0;
  double a = phi_fn(1.0 - s), b = phi_fn(s);
  double ap = -phi_d1(1.0 - s), bp = phi_d1(s);
  double f1 = (ap * b - a * bp) / ((a + b) * (a + b));
  return (t > 0 ? 2.0 : -2.0) * f1;
}

double SmoothCutoff::d2(double t) const {
  double u = std::abs(t);
  if (u <= 0.5 || u >= 1.0) return 0.0;
  double s = 2.0 * u - 1.0;
  double a = phi_fn(1.0 - s), b = phi_fn(s);
  double ap = -phi_d1(1.0 - s), bp = phi_d1(s);
  double app = phi_d2(1.0 - s), bpp = phi_d2(s);
  double den = a + b;
  double f2 = ((app * b - a * bpp) * den - 2.0 * (ap * b - a * bp) * (ap + bp)) / (den * den * den);
  return 4.0 * f2;
}

struct Quasimode::Local {
  double y0, y1, y2;
  std::complex<double> psi, dpsi1, dpsi2, ddpsi1, ddpsi2;  // Psi and x1/x2 derivatives
  std::complex<double> amp_v, amp_v1, amp_v2, amp_v11, amp_v22;  // sum v_k tau^-k and derivs
  double chi, chi1, chi2;                                        // chi(y2/delta) and t-derivs
  double hval;
  std::vector<double> hgrad;
  std::vector<double> y;
};

Quasimode::Quasimode(int dim, const QuasimodeParams& params)
    : dim_(dim), params_(params), tau_(params.lambda, params.sigma) {
  frame_.origin = params.origin.empty() ? std::vector<double>(static_cast<std::size_t>(dim), 0.0)
                                        : params.origin;
  frame_.rot = params.rotation;

  QuasimodeSymbols sym;
  ParamPoly zero(&sym.tab);
  auto maybe = [&](std::complex<double> val, int id) {
    return val == std::complex<double>(0.0, 0.0) ? zero : sym.sym(id);
  };
  std::vector<BiSeries> psi = psi_series(&sym.tab, maybe(params.p3, sym.p3),
                                         maybe(params.p4, sym.p4), maybe(params.p5, sym.p5));
  std::vector<std::vector<BiSeries>> v;
  v.resize(static_cast<std::size_t>(std::max(1, params.amp_orders)));
  v[0].push_back(v00_series(&sym.tab));
  if (params.x2_orders >= 1)
    v[0].push_back(v01_series(&sym.tab, maybe(params.p3, sym.p3), maybe(params.q1, sym.q1)));
  for (int j = 2; j <= params.x2_orders; ++j) solve_transport(psi, v, 0, j, zero);
  for (int k = 1; k < params.amp_orders; ++k)
    for (int j = 0; j <= params.x2_orders - 2 * k; ++j) solve_transport(psi, v, k, j, zero);

  std::vector<std::complex<double>> vals =
      sym.values(params.p3, params.p4, params.p5, params.q1, params.sigma);
  auto compile = [&](const BiSeries& s) {
    Piece p;
    p.val = CompiledSeries(s, params.eps, vals);
    p.d1 = CompiledSeries(s.ddx(), params.eps, vals);
    p.d2 = CompiledSeries(s.ddx().ddx(), params.eps, vals);
    return p;
  };
  for (const auto& s : psi) psi_.push_back(compile(s));
  v_.resize(v.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    for (const auto& s : v[k]) v_[k].push_back(compile(s));
}

std::vector<double> Quasimode::to_frame(const std::vector<double>& x) const {
  std::vector<double> y(static_cast<std::size_t>(dim_));
  for (int a = 0; a < dim_; ++a) {
    double s = 0.0;
    if (frame_.rot.empty()) {
      s = x[static_cast<std::size_t>(a)] - frame_.origin[static_cast<std::size_t>(a)];
    } else {
      for (int b = 0; b < dim_; ++b)
        s += frame_.rot[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] *
             (x[static_cast<std::size_t>(b)] - frame_.origin[static_cast<std::size_t>(b)]);
    }
    y[static_cast<std::size_t>(a)] = s;
  }
  return y;
}

Quasimode::Local Quasimode::assemble(const std::vector<double>& y) const {
  if (y[1] <= 0.0)
    throw std::domain_error("Quasimode: frame coordinate x1 <= 0 violates the branch domain");
  Local L;
  L.y = y;
  L.y0 = y[0];
  L.y1 = y[1];
  L.y2 = y[2];

  L.psi = L.dpsi1 = L.dpsi2 = L.ddpsi1 = L.ddpsi2 = {0.0, 0.0};
  double x2p = 1.0;
  for (std::size_t j = 0; j < psi_.size(); ++j) {
    std::complex<double> pj = psi_[j].val.eval(L.y1);
    std::complex<double> pj1 = psi_[j].d1.eval(L.y1);
    L.psi += pj * x2p;
    L.dpsi1 += pj1 * x2p;
    L.ddpsi1 += psi_[j].d2.eval(L.y1) * x2p;
    if (j >= 1) L.dpsi2 += static_cast<double>(j) * pj * std::pow(L.y2, static_cast<double>(j - 1));
    if (j >= 2)
      L.ddpsi2 += static_cast<double>(j * (j - 1)) * pj * std::pow(L.y2, static_cast<double>(j - 2));
    x2p *= L.y2;
  }

  std::complex<double> tinv = 1.0 / tau_;
  L.amp_v = L.amp_v1 = L.amp_v2 = L.amp_v11 = L.amp_v22 = {0.0, 0.0};
  std::complex<double> tk(1.0, 0.0);
  for (std::size_t k = 0; k < v_.size(); ++k) {
    for (std::size_t j = 0; j < v_[k].size(); ++j) {
      double pj = std::pow(L.y2, static_cast<double>(j));
      std::complex<double> w = tk * pj;
      L.amp_v += v_[k][j].val.eval(L.y1) * w;
      L.amp_v1 += v_[k][j].d1.eval(L.y1) * w;
      L.amp_v11 += v_[k][j].d2.eval(L.y1) * w;
      if (j >= 1)
        L.amp_v2 += v_[k][j].val.eval(L.y1) * tk * static_cast<double>(j) *
                    std::pow(L.y2, static_cast<double>(j - 1));
      if (j >= 2)
        L.amp_v22 += v_[k][j].val.eval(L.y1) * tk * static_cast<double>(j * (j - 1)) *
                     std::pow(L.y2, static_cast<double>(j - 2));
    }
    tk *= tinv;
  }

  double t = L.y2 / params_.delta;
  L.chi = chi_(t);
  L.chi1 = chi_.d1(t) / params_.delta;
  L.chi2 = chi_.d2(t) / (params_.delta * params_.delta);

  if (dim_ > 3 && !(params_.h.is_zero())) {
    std::vector<double> x3(y.begin() + 3, y.end());
    L.hval = params_.h.eval(x3);
    L.hgrad = params_.h.gradient_at(x3);
  } else {
    L.hval = 1.0;
    L.hgrad.assign(static_cast<std::size_t>(std::max(0, dim_ - 3)), 0.0);
  }
  return L;
}

std::complex<double> Quasimode::value(const std::vector<double>& x) const {
  Local L = assemble(to_frame(x));
  std::complex<double> i(0.0, 1.0);
  double s = params_.sign >= 0 ? 1.0 : -1.0;
  std::complex<double> expo = s * tau_ * L.y0 + i * tau_ * L.psi;
  return std::exp(expo) * (L.chi * L.hval * L.amp_v);
}

std::vector<std::complex<double>> Quasimode::gradient(const std::vector<double>& x) const {
  Local L = assemble(to_frame(x));
  std::complex<double> i(0.0, 1.0);
  double s = params_.sign >= 0 ? 1.0 : -1.0;
  std::complex<double> core = std::exp(s * tau_ * L.y0 + i * tau_ * L.psi);
  std::complex<double> a = L.chi * L.hval * L.amp_v;

  std::vector<std::complex<double>> gy(static_cast<std::size_t>(dim_));
  gy[0] = core * (s * tau_) * a;
  gy[1] = core * (i * tau_ * L.dpsi1 * a + L.chi * L.hval * L.amp_v1);
  gy[2] = core * (i * tau_ * L.dpsi2 * a + L.hval * (L.chi1 * L.amp_v + L.chi * L.amp_v2));
  for (int b = 3; b < dim_; ++b)
    gy[static_cast<std::size_t>(b)] =
        core * (L.chi * L.amp_v * L.hgrad[static_cast<std::size_t>(b - 3)]);

  if (frame_.rot.empty()) return gy;
  std::vector<std::complex<double>> gx(static_cast<std::size_t>(dim_), {0.0, 0.0});
  for (int a2 = 0; a2 < dim_; ++a2)
    for (int b = 0; b < dim_; ++b)
      gx[static_cast<std::size_t>(a2)] += frame_.rot[static_cast<std::size_t>(a2)][static_cast<std::size_t>(b)] *
                                          gy[static_cast<std::size_t>(b)];
  return gx;
}

std::complex<double> Quasimode::laplacian(const std::vector<double>& x) const {
  Local L = assemble(to_frame(x));
  std::complex<double> i(0.0, 1.0);
  double s = params_.sign >= 0 ? 1.0 : -1.0;
  std::complex<double> core = std::exp(s * tau_ * L.y0 + i * tau_ * L.psi);

  std::complex<double> a = L.chi * L.hval * L.amp_v;
  std::complex<double> a1 = L.chi * L.hval * L.amp_v1;                       // d/dy1
  std::complex<double> a2 = L.hval * (L.chi1 * L.amp_v + L.chi * L.amp_v2);  // d/dy2
  std::complex<double> a11 = L.chi * L.hval * L.amp_v11;
  std::complex<double> a22 =
      L.hval * (L.chi2 * L.amp_v + 2.0 * L.chi1 * L.amp_v2 + L.chi * L.amp_v22);

  std::complex<double> grad2 = L.dpsi1 * L.dpsi1 + L.dpsi2 * L.dpsi2;
  std::complex<double> lap_psi = L.ddpsi1 + L.ddpsi2;

  std::complex<double> term = tau_ * tau_ * (1.0 - grad2) * a +
                              i * tau_ * (2.0 * (L.dpsi1 * a1 + L.dpsi2 * a2) + lap_psi * a) +
                              (a11 + a22);
  return core * term;
}

// ------------------------------------------------------------ V expansion

const char* basis_sym_name(BasisSym s) {
  switch (s) {
    case BasisSym::Alpha: return "alpha";
    case BasisSym::E1: return "e1";
    case BasisSym::E2: return "e2";
    case BasisSym::Hslot: return "gradH";
    case BasisSym::Chislot: return "dchi";
  }
  return "?";
}

VComponents raw_v_components(const std::vector<BiSeries>& psi,
                             const std::vector<std::vector<BiSeries>>& v, int sign, int jmax,
                             int mmax) {
  const SymTable* tab = psi.front().table();
  X2TPoly A = amp_poly(v, tab).truncated(jmax, mmax);
  X2TPoly P = phase_poly(psi);
  GaussRat I(rat(0), rat(1));

  VComponents c;
  c.e0 = sign >= 0 ? A : -A;
  c.e1 = (P.ddx1() * A).scaled(I) + shift_t(A.ddx1(), 1);
  c.e2 = (P.ddx2() * A).scaled(I) + shift_t(A.ddx2(), 1);
  c.hslot = shift_t(A, 1);
  c.chislot = shift_t(A, 1);

  c.e0 = c.e0.truncated(jmax, mmax);
  c.e1 = c.e1.truncated(jmax, mmax);
  c.e2 = c.e2.truncated(jmax, mmax);
  c.hslot = c.hslot.truncated(jmax, mmax);
  c.chislot = c.chislot.truncated(jmax, mmax);
  return c;
}

VComponents negated_conj(const VComponents& c) {
  VComponents r;
  r.e0 = -c.e0.conj();
  r.e1 = -c.e1.conj();
  r.e2 = -c.e2.conj();
  r.hslot = -c.hslot.conj();
  r.chislot = -c.chislot.conj();
  return r;
}

namespace {
X2TPoly scale_t_powers(const X2TPoly& p, const GaussRat& c) {
  X2TPoly r(p.table());
  for (const auto& [k, v] : p.terms()) {
    GaussRat f(1);
    for (int m = 0; m < k.second; ++m) f = f * c;
    r.add(k.first, k.second, v.scaled(f));
  }
  return r;
}
}  // namespace

VComponents tau_scaled(const VComponents& c, const GaussRat& inv_scale) {
  VComponents r;
  r.e0 = scale_t_powers(c.e0, inv_scale);
  r.e1 = scale_t_powers(c.e1, inv_scale);
  r.e2 = scale_t_powers(c.e2, inv_scale);
  r.hslot = scale_t_powers(c.hslot, inv_scale);
  r.chislot = scale_t_powers(c.chislot, inv_scale);
  return r;
}

VTable regroup_alpha(const VComponents& c) {
  GaussRat I(rat(0), rat(1));
  VTable t;
  t[BasisSym::Alpha] = c.e0;
  t[BasisSym::E1] = c.e1 - c.e0.scaled(I);
  t[BasisSym::E2] = c.e2;
  t[BasisSym::Hslot] = c.hslot;
  t[BasisSym::Chislot] = c.chislot;
  return t;
}

}  // namespace qlip
