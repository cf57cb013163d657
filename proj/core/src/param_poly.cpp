#include "qlip/param_poly.hpp"

#include <sstream>
#include <stdexcept>

namespace qlip {

int SymTable::add(const std::string& name) {
  names_.push_back(name);
  conj_.push_back(static_cast<int>(names_.size()) - 1);
  return conj_.back();
}

std::pair<int, int> SymTable::add_pair(const std::string& name) {
  int a = static_cast<int>(names_.size());
  names_.push_back(name);
  names_.push_back(name + "~");
  conj_.push_back(a + 1);
  conj_.push_back(a);
  return {a, a + 1};
}

ParamPoly ParamPoly::symbol(const SymTable* tab, int sym, GaussRat c) {
  ParamPoly p(tab);
  if (c.is_zero()) return p;
  Monomial m(tab->size(), 0);
  m[static_cast<std::size_t>(sym)] = 1;
  p.terms_[m] = std::move(c);
  return p;
}

bool ParamPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Monomial& m = terms_.begin()->first;
  for (auto e : m)
    if (e != 0) return false;
  return true;
}

GaussRat ParamPoly::constant_term() const {
  Monomial z(tab_ ? tab_->size() : 0, 0);
  auto it = terms_.find(z);
  return it == terms_.end() ? GaussRat(0) : it->second;
}

ParamPoly ParamPoly::operator-() const {
  ParamPoly r(tab_);
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
  if (!tab_) tab_ = o.tab_;
  for (const auto& [m, c] : o.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_[m] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
  if (!tab_) tab_ = o.tab_;
  for (const auto& [m, c] : o.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_[m] = -c;
    } else {
      it->second -= c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
  ParamPoly r(a.tab_ ? a.tab_ : b.tab_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      ParamPoly::Monomial m = ma;
      if (m.size() < mb.size()) m.resize(mb.size(), 0);
      for (std::size_t i = 0; i < mb.size(); ++i) m[i] = static_cast<std::uint8_t>(m[i] + mb[i]);
      GaussRat c = ca * cb;
      auto it = r.terms_.find(m);
      if (it == r.terms_.end()) {
        if (!c.is_zero()) r.terms_[m] = std::move(c);
      } else {
        it->second += c;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  }
  return r;
}

ParamPoly ParamPoly::scaled(const GaussRat& c) const {
  ParamPoly r(tab_);
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.terms_[m] = v * c;
  return r;
}

ParamPoly ParamPoly::conj() const {
  ParamPoly r(tab_);
  for (const auto& [m, c] : terms_) {
    Monomial cm(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      int j = tab_->conj_partner(static_cast<int>(i));
      cm[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(cm[static_cast<std::size_t>(j)] + m[i]);
    }
    r.terms_[cm] = c.conj();
  }
  return r;
}

GaussRat ParamPoly::coefficient(const Monomial& m) const {
  Monomial key = m;
  if (tab_) key.resize(static_cast<std::size_t>(tab_->size()), 0);
  auto it = terms_.find(key);
  return it == terms_.end() ? GaussRat(0) : it->second;
}

std::complex<double> ParamPoly::eval(const std::vector<std::complex<double>>& values) const {
  std::complex<double> sum{0.0, 0.0};
  for (const auto& [m, c] : terms_) {
    std::complex<double> t = c.to_complex();
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (int e = 0; e < m[i]; ++e) t *= values.at(i);
    }
    sum += t;
  }
  return sum;
}

std::string ParamPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      os << "*" << tab_->name(static_cast<int>(i));
      if (m[i] > 1) os << "^" << int(m[i]);
    }
  }
  return os.str();
}

}  // namespace qlip
