#pragma once

#include <complex>
#include <map>
#include <memory>
#include <stdexcept>

#include "qlip/harmonic_poly.hpp"
#include "qlip/series.hpp"

namespace qlip {

struct UnresolvedRecurrence : std::runtime_error {
  explicit UnresolvedRecurrence(const std::string& w) : std::runtime_error(w) {}
};

/// Parameter table shared by the symbolic quasimode machinery: the free
/// constants p3, p4, p5, q1 (with conjugates) and the real Fourier
/// parameter sigma.
struct QuasimodeSymbols {
  SymTable tab;
  int p3, p3c, p4, p4c, p5, p5c, q1, q1c, sigma;
  QuasimodeSymbols();
  ParamPoly sym(int id) const { return ParamPoly::symbol(&tab, id); }
  /// Parameter value vector matching the symbol order.
  std::vector<std::complex<double>> values(std::complex<double> vp3, std::complex<double> vp4,
                                           std::complex<double> vp5, std::complex<double> vq1,
                                           double vsigma) const;
};

/// Exact closed forms psi_0..psi_5 of the phase expansion.
std::vector<BiSeries> psi_series(const SymTable* tab, const ParamPoly& p3, const ParamPoly& p4,
                                 const ParamPoly& p5);

/// Exact closed forms of the two leading amplitude coefficients.
BiSeries v00_series(const SymTable* tab);
BiSeries v01_series(const SymTable* tab, const ParamPoly& p3, const ParamPoly& q1);

/// x2-polynomial with the psi_j as coefficients (T unused).
X2TPoly phase_poly(const std::vector<BiSeries>& psi);

/// |grad' Psi|^2 - 1 as an x2 polynomial; complete through x2 order M when
/// psi_0..psi_M are supplied (psi_1 = 0 kills the dangling boundary terms).
X2TPoly eikonal_residual(const std::vector<BiSeries>& psi);

/// 2 grad'Psi . grad' v_k + (Lap' Psi) v_k - i Lap' v_{k-1} as an x2
/// polynomial, with v[k][j] the amplitude table (v[-1] treated as 0).
X2TPoly transport_residual(const std::vector<BiSeries>& psi,
                           const std::vector<std::vector<BiSeries>>& v, int k);

/// Solve the transport recurrence for v_{k;j}: the x2^j coefficient of the
/// level-k transport expression determines v_{k;j} through the first-order
/// ODE 2 v' + (4j+2) psi_2 v + g = 0, solved with the integrating factor
/// (x1 - i eps)^{(2j+1)/2}. The homogeneous constant multiplies
/// (x1 - i eps)^{-(2j+1)/2}. Throws UnresolvedRecurrence on a logarithmic
/// obstruction.
BiSeries solve_transport(const std::vector<BiSeries>& psi,
                         std::vector<std::vector<BiSeries>>& v, int k, int j,
                         const ParamPoly& free_constant);

/// Full symbolic amplitude table: closed forms for v_{0;0}, v_{0;1}, the
/// recurrence for everything else (zero free constants).
struct QuasimodeSeries {
  std::vector<BiSeries> psi;
  std::vector<std::vector<BiSeries>> v;  // v[k][j]
};
QuasimodeSeries build_quasimode_series(const QuasimodeSymbols& sym, int amp_orders, int x2_orders);

// ----------------------------------------------------------------- numeric

/// Smooth plateau cutoff: 1 on |t| <= 1/2, 0 on |t| >= 1, with hand-coded
/// first and second derivatives.
struct SmoothCutoff {
  double operator()(double t) const;
  double d1(double t) const;
  double d2(double t) const;
};

struct QuasimodeParams {
  double lambda = 40.0;
  double sigma = 0.0;
  double eps = 0.3;
  std::complex<double> p3{0.0, 0.0}, p4{0.0, 0.0}, p5{0.0, 0.0}, q1{0.0, 0.0};
  double delta = 0.3;
  int sign = +1;
  int amp_orders = 2;  // v_0..v_{amp_orders-1}
  int x2_orders = 3;   // j-truncation for v_0 (j = 4 is log-obstructed)
  std::vector<double> origin;                 // frame shift, default 0
  std::vector<std::vector<double>> rotation;  // orthogonal frame, default id
  Polynomial h;                               // harmonic factor on x'''; default 1
};

/// Explicit part of the Gaussian quasi-mode u_tau^{+-} (no corrector), with
/// analytic gradient and Laplacian. All evaluation requires the frame
/// coordinate y1 > 0 (principal branch).
class Quasimode {
 public:
  Quasimode(int dim, const QuasimodeParams& params);

  std::complex<double> value(const std::vector<double>& x) const;
  std::vector<std::complex<double>> gradient(const std::vector<double>& x) const;
  std::complex<double> laplacian(const std::vector<double>& x) const;

  const QuasimodeParams& params() const { return params_; }

 private:
  struct Frame {
    std::vector<double> origin;
    std::vector<std::vector<double>> rot;  // empty = identity
  };
  std::vector<double> to_frame(const std::vector<double>& x) const;

  struct Piece {
    CompiledSeries val, d1, d2;  // series and first/second x1-derivatives
  };

  int dim_;
  QuasimodeParams params_;
  Frame frame_;
  std::vector<Piece> psi_;               // per j
  std::vector<std::vector<Piece>> v_;    // per (k, j)
  SmoothCutoff chi_;
  std::complex<double> tau_;

  struct Local;
  Local assemble(const std::vector<double>& y) const;
};

// ------------------------------------------------------------ V expansion

enum class BasisSym { Alpha, E1, E2, Hslot, Chislot };
const char* basis_sym_name(BasisSym s);

/// Raw e-basis components of V^{sign} = tau^{-1} e^{-+tau x0} e^{-+i tau Psi}
/// grad u^{sign} before the alpha regrouping; hslot/chislot carry the
/// grad'''h and cutoff-derivative rows.
struct VComponents {
  X2TPoly e0, e1, e2, hslot, chislot;
};

VComponents raw_v_components(const std::vector<BiSeries>& psi,
                             const std::vector<std::vector<BiSeries>>& v, int sign, int jmax,
                             int mmax);
/// (-1) * complex conjugate, entrywise.
VComponents negated_conj(const VComponents& c);
/// tau -> c*tau: scale T^m entries by c^{-m}.
VComponents tau_scaled(const VComponents& c, const GaussRat& inv_scale);

/// Regrouped table over {alpha, e1, e2, hslot, chislot}:
/// alpha row = e0 component, e1 row = e1 - i*e0.
using VTable = std::map<BasisSym, X2TPoly>;
VTable regroup_alpha(const VComponents& c);

}  // namespace qlip
