#include "qlip/series.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qlip {

// ---------------------------------------------------------------- BiSeries

BiSeries BiSeries::constant(const SymTable* tab, GaussRat c) {
  return monomial(tab, 0, 0, std::move(c));
}

BiSeries BiSeries::constant(const SymTable* tab, ParamPoly c) {
  return monomial(tab, 0, 0, std::move(c));
}

BiSeries BiSeries::monomial(const SymTable* tab, int a, int b, ParamPoly c) {
  BiSeries s(tab);
  if (!c.is_zero()) s.terms_[{a, b}] = std::move(c);
  return s;
}

BiSeries BiSeries::monomial(const SymTable* tab, int a, int b, GaussRat c) {
  return monomial(tab, a, b, ParamPoly(tab, std::move(c)));
}

BiSeries BiSeries::x1(const SymTable* tab) {
  BiSeries s(tab);
  s.terms_[{2, 0}] = ParamPoly(tab, GaussRat(rat(1, 2)));
  s.terms_[{0, 2}] = ParamPoly(tab, GaussRat(rat(1, 2)));
  return s;
}

void BiSeries::add_term(int a, int b, ParamPoly c) {
  if (c.is_zero()) return;
  auto it = terms_.find({a, b});
  if (it == terms_.end()) {
    terms_[{a, b}] = std::move(c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

BiSeries BiSeries::operator-() const {
  BiSeries r(tab_);
  for (const auto& [k, c] : terms_) r.terms_[k] = -c;
  return r;
}

BiSeries& BiSeries::operator+=(const BiSeries& o) {
  if (!tab_) tab_ = o.tab_;
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

BiSeries& BiSeries::operator-=(const BiSeries& o) {
  if (!tab_) tab_ = o.tab_;
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
  return *this;
}

BiSeries operator*(const BiSeries& a, const BiSeries& b) {
  BiSeries r(a.tab_ ? a.tab_ : b.tab_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_)
      r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return r;
}

BiSeries BiSeries::scaled(const GaussRat& c) const {
  BiSeries r(tab_);
  if (c.is_zero()) return r;
  for (const auto& [k, v] : terms_) r.terms_[k] = v.scaled(c);
  return r;
}

BiSeries BiSeries::scaled(const ParamPoly& c) const {
  BiSeries r(tab_);
  if (c.is_zero()) return r;
  for (const auto& [k, v] : terms_) {
    ParamPoly p = v * c;
    if (!p.is_zero()) r.terms_[k] = std::move(p);
  }
  return r;
}

BiSeries BiSeries::conj() const {
  BiSeries r(tab_);
  for (const auto& [k, v] : terms_) r.terms_[{k.second, k.first}] = v.conj();
  return r;
}

BiSeries BiSeries::ddx() const {
  BiSeries r(tab_);
  for (const auto& [k, v] : terms_) {
    if (k.first != 0) r.add_term(k.first - 2, k.second, v.scaled(GaussRat(rat(k.first, 2))));
    if (k.second != 0) r.add_term(k.first, k.second - 2, v.scaled(GaussRat(rat(k.second, 2))));
  }
  return r;
}

std::optional<BiSeries> BiSeries::antiderivative() const {
  BiSeries r(tab_);
  for (const auto& [k, v] : terms_) {
    if (k.second != 0 || k.first == -2) return std::nullopt;
    r.add_term(k.first + 2, 0, v.scaled(GaussRat(rat(2, k.first + 2))));
  }
  return r;
}

BiSeries BiSeries::inverse_monomial() const {
  if (terms_.size() != 1) throw std::invalid_argument("inverse_monomial: not a monomial");
  const auto& [k, c] = *terms_.begin();
  if (!c.is_constant()) throw std::invalid_argument("inverse_monomial: non-scalar coefficient");
  return monomial(tab_, -k.first, -k.second, c.constant_term().inverse());
}

BiSeries BiSeries::param_coefficient(const ParamPoly::Monomial& m) const {
  BiSeries r(tab_);
  for (const auto& [k, v] : terms_) {
    GaussRat c = v.coefficient(m);
    if (!c.is_zero()) r.terms_[k] = ParamPoly(tab_, c);
  }
  return r;
}

BiSeries BiSeries::normalized(const Rat& eps) const {
  // Reduce modulo zp = zm + 2 i eps to the canonical key set
  //   { b in {0, 1} }  union  { a in {0, 1}, b <= -1 }.
  const GaussRat two_i_eps(rat(0), 2 * eps);
  const GaussRat inv_two_i_eps = two_i_eps.inverse();

  BiSeries out(tab_);
  std::vector<std::tuple<int, int, ParamPoly>> work;
  for (const auto& [k, c] : terms_) work.emplace_back(k.first, k.second, c);

  while (!work.empty()) {
    auto [a, b, c] = work.back();
    work.pop_back();
    if (c.is_zero()) continue;
    if (b == 0 || b == 1 || (b <= -1 && (a == 0 || a == 1))) {
      out.add_term(a, b, std::move(c));
    } else if (b >= 2) {
      // zp^{b/2} = zp^{(b-2)/2} (zm + 2 i eps)
      work.emplace_back(a + 2, b - 2, c);
      work.emplace_back(a, b - 2, c.scaled(two_i_eps));
    } else if (a >= 2) {
      // b <= -1 here: zm^{a/2} = zm^{(a-2)/2} (zp - 2 i eps)
      work.emplace_back(a - 2, b + 2, c);
      work.emplace_back(a - 2, b, c.scaled(-two_i_eps));
    } else {
      // a <= -1 and b <= -1: partial fractions,
      // zm^{-1} zp^{-1} = (1/(2 i eps)) (zm^{-1} - zp^{-1})
      work.emplace_back(a, b + 2, c.scaled(inv_two_i_eps));
      work.emplace_back(a + 2, b, c.scaled(-inv_two_i_eps));
    }
  }
  return out;
}

std::complex<double> BiSeries::eval(double x1, double eps,
                                    const std::vector<std::complex<double>>& params) const {
  std::complex<double> zm(x1, -eps), zp(x1, eps);
  std::complex<double> sum{0.0, 0.0};
  for (const auto& [k, v] : terms_) {
    std::complex<double> t = v.eval(params);
    if (k.first != 0) t *= std::pow(zm, 0.5 * k.first);
    if (k.second != 0) t *= std::pow(zp, 0.5 * k.second);
    sum += t;
  }
  return sum;
}

std::string BiSeries::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "[" << v.str() << "]";
    if (k.first != 0) os << "*zm^(" << k.first << "/2)";
    if (k.second != 0) os << "*zp^(" << k.second << "/2)";
  }
  return os.str();
}

// ---------------------------------------------------------------- X2TPoly

X2TPoly X2TPoly::term(int x2_pow, int t_pow, BiSeries c) {
  X2TPoly p(c.table());
  if (!c.is_zero()) p.terms_[{x2_pow, t_pow}] = std::move(c);
  return p;
}

BiSeries X2TPoly::coeff(int x2_pow, int t_pow) const {
  auto it = terms_.find({x2_pow, t_pow});
  return it == terms_.end() ? BiSeries(tab_) : it->second;
}

void X2TPoly::set(int x2_pow, int t_pow, BiSeries c) {
  if (c.is_zero())
    terms_.erase({x2_pow, t_pow});
  else
    terms_[{x2_pow, t_pow}] = std::move(c);
}

void X2TPoly::add(int x2_pow, int t_pow, const BiSeries& c) {
  if (c.is_zero()) return;
  auto it = terms_.find({x2_pow, t_pow});
  if (it == terms_.end()) {
    terms_[{x2_pow, t_pow}] = c;
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

X2TPoly X2TPoly::operator-() const {
  X2TPoly r(tab_);
  for (const auto& [k, c] : terms_) r.terms_[k] = -c;
  return r;
}

X2TPoly& X2TPoly::operator+=(const X2TPoly& o) {
  if (!tab_) tab_ = o.tab_;
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
  return *this;
}

X2TPoly& X2TPoly::operator-=(const X2TPoly& o) {
  if (!tab_) tab_ = o.tab_;
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
  return *this;
}

X2TPoly operator*(const X2TPoly& a, const X2TPoly& b) {
  X2TPoly r(a.tab_ ? a.tab_ : b.tab_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_)
      r.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return r;
}

X2TPoly X2TPoly::scaled(const BiSeries& c) const {
  X2TPoly r(tab_);
  for (const auto& [k, v] : terms_) {
    BiSeries s = v * c;
    if (!s.is_zero()) r.terms_[k] = std::move(s);
  }
  return r;
}

X2TPoly X2TPoly::scaled(const GaussRat& c) const {
  X2TPoly r(tab_);
  if (c.is_zero()) return r;
  for (const auto& [k, v] : terms_) r.terms_[k] = v.scaled(c);
  return r;
}

X2TPoly X2TPoly::conj() const {
  X2TPoly r(tab_);
  for (const auto& [k, v] : terms_) r.terms_[k] = v.conj();
  return r;
}

X2TPoly X2TPoly::ddx1() const {
  X2TPoly r(tab_);
  for (const auto& [k, v] : terms_) {
    BiSeries d = v.ddx();
    if (!d.is_zero()) r.terms_[k] = std::move(d);
  }
  return r;
}

X2TPoly X2TPoly::ddx2() const {
  X2TPoly r(tab_);
  for (const auto& [k, v] : terms_) {
    if (k.first == 0) continue;
    r.add(k.first - 1, k.second, v.scaled(GaussRat(rat(k.first))));
  }
  return r;
}

X2TPoly X2TPoly::truncated(int jmax, int mmax) const {
  X2TPoly r(tab_);
  for (const auto& [k, v] : terms_)
    if (k.first <= jmax && k.second <= mmax) r.terms_[k] = v;
  return r;
}

int X2TPoly::max_x2_power() const {
  int m = -1;
  for (const auto& [k, v] : terms_) m = std::max(m, k.first);
  return m;
}

std::string X2TPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : terms_) {
    if (!first) os << "\n + ";
    first = false;
    os << "x2^" << k.first << " T^" << k.second << " * ( " << v.str() << " )";
  }
  return os.str();
}

// ---------------------------------------------------------- CompiledSeries

CompiledSeries::CompiledSeries(const BiSeries& s, double eps,
                               const std::vector<std::complex<double>>& params)
    : eps_(eps) {
  for (const auto& [k, v] : s.terms()) {
    std::complex<double> c = v.eval(params);
    if (c != std::complex<double>(0.0, 0.0))
      terms_.push_back({c, 0.5 * k.first, 0.5 * k.second});
  }
}

std::complex<double> CompiledSeries::eval(double x1) const {
  std::complex<double> zm(x1, -eps_), zp(x1, eps_);
  std::complex<double> sum{0.0, 0.0};
  for (const auto& t : terms_) {
    std::complex<double> v = t.c;
    if (t.ea != 0.0) v *= std::pow(zm, t.ea);
    if (t.eb != 0.0) v *= std::pow(zp, t.eb);
    sum += v;
  }
  return sum;
}

}  // namespace qlip
