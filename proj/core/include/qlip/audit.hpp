#pragma once

#include <array>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "qlip/quasimode.hpp"

namespace qlip {

/// Parameter table for the three-solution audit: the amplitude constants of
/// solutions 1, 2, 3 (kept distinct so each channel can be read off) and the
/// real Fourier parameter sigma.
struct AuditSymbols {
  SymTable tab;
  int q1, q1c, q2, q2c, q3, q3c, sigma;
  AuditSymbols();
};

using TripleKey = std::array<BasisSym, 3>;
std::string triple_key_name(const TripleKey& k);

/// A linear functional of the 3-tensor C: a sum of slot-symbol triples with
/// series coefficients, C : sum coeff * (s1 (x) s2 (x) s3).
class CValue {
 public:
  explicit CValue(const SymTable* tab = nullptr) : tab_(tab) {}

  void add(BasisSym a, BasisSym b, BasisSym c, const BiSeries& coeff);
  const std::map<TripleKey, BiSeries>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  CValue& operator+=(const CValue& o);
  CValue& operator-=(const CValue& o);
  friend CValue operator+(CValue a, const CValue& b) { return a += b; }
  friend CValue operator-(CValue a, const CValue& b) { return a -= b; }
  CValue scaled(const GaussRat& c) const;

  /// Sub-functional multiplying the exact parameter monomial.
  CValue param_channel(const ParamPoly::Monomial& m) const;

  /// Reduce modulo the relation ideal of the audited tensor class: the
  /// first-two-slot symmetry C_{jkl} = C_{kjl} and the S = 0 cyclic
  /// relations; triples carrying the cutoff-derivative or grad'''h slots are
  /// discarded (the former vanish identically near the stationary point, the
  /// latter by the orthogonal-frame identities). Rewrites are appended to
  /// the log.
  CValue canonical(std::vector<std::string>* log = nullptr) const;

  /// Normalize every coefficient modulo zp = zm + 2 i eps (see
  /// BiSeries::normalized); empty() on the result is a true zero test.
  CValue normalized(const Rat& eps) const;

  std::string str() const;

 private:
  const SymTable* tab_ = nullptr;
  std::map<TripleKey, BiSeries> terms_;
};

struct AuditReport {
  bool passed = false;
  std::string target;
  std::vector<std::string> lines;
};

/// Symbolic auditor for the stationary-phase coefficient identities of the
/// three-quasimode product C : V1 (x) V2 (x) conj(V3). Everything is exact:
/// x1 is symbolic (series algebra), eps is a fixed positive rational, the
/// amplitude constants are formal symbols. The inverse-order grading follows
/// the source: each tau^{-1} (or conj) counts one lambda^{-1} unit, solution
/// 3 carrying 2^{-m} from its doubled parameter.
class TripleAudit {
 public:
  explicit TripleAudit(Rat eps = rat(1, 2), int jmax = 4, int mmax = 2);

  const AuditSymbols& symbols() const { return syms_; }
  const VTable& table1() const { return V1_; }
  const VTable& table3() const { return V3_; }

  /// L_q applied to the T^m slice of the expansion of e^{i sigma F1} W.
  CValue l_contribution(int q, int m) const;
  /// Full coefficient of lambda^{-r} in (L0 + l^{-1} L1 + l^{-2} L2)(U).
  CValue lambda_coefficient(int r) const;

  /// Provenance lines for every product contributing at (x2^j, T^m).
  std::vector<std::string> provenance(int j, int m) const;

  AuditReport audit_magic() const;
  AuditReport audit_first_order() const;
  AuditReport audit_qq13() const;

  /// The displayed first-order bracket (as printed in the source).
  CValue paper_first_order_bracket() const;
  /// The machine-derived lambda^{-1} coefficient reference: the q-channels
  /// of the displayed bracket with the amplitude-3 term carrying the
  /// table-consistent sign.
  CValue table_first_order_bracket() const;

  ParamPoly::Monomial mono_q1q3c() const;
  ParamPoly::Monomial mono_q2q3c() const;
  ParamPoly::Monomial mono_q3c() const;

 private:
  void build();
  AuditSymbols syms_;
  Rat eps_;
  int jmax_, mmax_;
  std::vector<BiSeries> psi_;
  std::vector<std::vector<BiSeries>> v1_, v2_, v3_;
  VTable V1_, V2_, V3_;
  std::map<TripleKey, X2TPoly> W_;
  X2TPoly G_;
  BiSeries invHalfF_;
  std::map<std::tuple<int, int, int>, std::vector<std::string>> prov_;  // (keyidx, j, m)
  std::vector<TripleKey> key_order_;
};

}  // namespace qlip
