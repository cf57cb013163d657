#include "qlip/phase.hpp"

#include "qlip/quasimode.hpp"

namespace qlip {

X2TPoly symbolic_F2(const std::vector<BiSeries>& psi) {
  X2TPoly P = phase_poly(psi);
  X2TPoly r = P - P.conj();
  return r.scaled(GaussRat(rat(2)));
}

X2TPoly symbolic_F1(const std::vector<BiSeries>& psi) {
  const SymTable* tab = psi.front().table();
  X2TPoly P = phase_poly(psi);
  X2TPoly r = (P + P.conj()).scaled(GaussRat(rat(0), rat(2)));
  r -= X2TPoly::term(0, 0, BiSeries::x1(tab).scaled(GaussRat(rat(0), rat(4))));
  return r;
}

PaperPhases phase_F(double eps, double x1) {
  SymTable tab;
  ParamPoly zero(&tab);
  std::vector<BiSeries> psi = psi_series(&tab, zero, zero, zero);
  X2TPoly F2 = symbolic_F2(psi);
  X2TPoly F1 = symbolic_F1(psi);

  auto coeff = [&](const X2TPoly& p, int j) { return p.coeff(j, 0).eval(x1, eps); };

  PaperPhases out;
  out.F2_x2sq = coeff(F2, 2);
  out.F2_x2quart = coeff(F2, 4);
  out.F1_x2sq = coeff(F1, 2);
  std::complex<double> f1_4 = coeff(F1, 4);

  std::complex<double> a2 = out.F2_x2sq, a4 = out.F2_x2quart;
  out.F2.F = [a2, a4](double t) { return a2 * t * t + a4 * t * t * t * t; };
  out.F2.F0 = {0.0, 0.0};
  out.F2.Fpp0 = 2.0 * a2;
  out.F2.G_taylor.assign(5, {0.0, 0.0});
  out.F2.G_taylor[4] = a4;

  std::complex<double> b2 = out.F1_x2sq;
  out.F1 = [b2, f1_4](double t) { return b2 * t * t + f1_4 * t * t * t * t; };
  return out;
}

}  // namespace qlip
