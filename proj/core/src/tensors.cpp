#include "qlip/tensors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qlip {

IndexTuple canonical_tuple(IndexTuple t) {
  std::sort(t.begin(), t.end());
  return t;
}

long tuple_multiplicity(const IndexTuple& t) {
  long fact = 1;
  for (std::size_t i = 2; i <= t.size(); ++i) fact *= static_cast<long>(i);
  long denom = 1;
  std::size_t i = 0;
  while (i < t.size()) {
    std::size_t j = i;
    while (j < t.size() && t[j] == t[i]) ++j;
    long run = static_cast<long>(j - i);
    for (long r = 2; r <= run; ++r) denom *= r;
    i = j;
  }
  return fact / denom;
}

void for_each_canonical_tuple(int d, int k, const std::function<void(const IndexTuple&)>& fn) {
  IndexTuple t(static_cast<std::size_t>(k), 0);
  while (true) {
    fn(t);
    int pos = k - 1;
    while (pos >= 0 && t[static_cast<std::size_t>(pos)] == d - 1) --pos;
    if (pos < 0) break;
    int v = t[static_cast<std::size_t>(pos)] + 1;
    for (int i = pos; i < k; ++i) t[static_cast<std::size_t>(i)] = v;
  }
}

namespace {

void distinct_permutations(const IndexTuple& sorted, std::vector<IndexTuple>& out) {
  IndexTuple t = sorted;
  out.clear();
  do {
    out.push_back(t);
  } while (std::next_permutation(t.begin(), t.end()));
}

}  // namespace

TensorCoefficients::TensorCoefficients(const Grid& g, int order, double bound_L)
    : grid_(&g), order_(order), bound_L_(bound_L) {
  if (order_ < 2) throw std::invalid_argument("TensorCoefficients: order must be >= 2");
}

void TensorCoefficients::zero_margin(VectorField& v) const {
  const Grid& g = *grid_;
  std::vector<int> mi(static_cast<std::size_t>(g.dim()));
  for (std::int64_t i = 0; i < g.node_count(); ++i) {
    g.multi_index(i, mi.data());
    bool margin = false;
    for (int a = 0; a < g.dim(); ++a)
      if (mi[a] < 2 || mi[a] > g.res(a) - 3) {
        margin = true;
        break;
      }
    if (margin)
      for (int c = 0; c < g.dim(); ++c) v[c][i] = 0.0;
  }
}

void TensorCoefficients::set_component(const IndexTuple& tuple, VectorField values) {
  if (static_cast<int>(tuple.size()) != order_)
    throw std::invalid_argument("TensorCoefficients: tuple length != order");
  zero_margin(values);
  comps_[canonical_tuple(tuple)] = std::move(values);
}

void TensorCoefficients::set_component(const IndexTuple& tuple, const AnalyticVec& fn) {
  const Grid& g = *grid_;
  VectorField v(g);
  for (std::int64_t i = 0; i < g.node_count(); ++i) {
    std::vector<double> val = fn(g.coords(i));
    for (int c = 0; c < g.dim(); ++c) v[c][i] = val[static_cast<std::size_t>(c)];
  }
  IndexTuple key = canonical_tuple(tuple);
  set_component(key, std::move(v));
  analytic_[key] = fn;
}

const VectorField* TensorCoefficients::component(const IndexTuple& tuple) const {
  auto it = comps_.find(canonical_tuple(tuple));
  return it == comps_.end() ? nullptr : &it->second;
}

const AnalyticVec* TensorCoefficients::analytic_component(const IndexTuple& tuple) const {
  auto it = analytic_.find(canonical_tuple(tuple));
  return it == analytic_.end() ? nullptr : &it->second;
}

bool TensorCoefficients::all_analytic() const {
  for (const auto& [t, v] : comps_)
    if (analytic_.find(t) == analytic_.end()) return false;
  return true;
}

VectorField TensorCoefficients::contract(const std::vector<const VectorField*>& grads) const {
  const Grid& g = *grid_;
  if (static_cast<int>(grads.size()) != order_)
    throw std::invalid_argument("TensorCoefficients::contract: slot count != order");
  VectorField out(g);
  std::vector<IndexTuple> perms;
  for (const auto& [tuple, val] : comps_) {
    distinct_permutations(tuple, perms);
    for (std::int64_t i = 0; i < g.node_count(); ++i) {
      double psum = 0.0;
      for (const auto& p : perms) {
        double prod = 1.0;
        for (int s = 0; s < order_; ++s)
          prod *= (*grads[static_cast<std::size_t>(s)])[p[static_cast<std::size_t>(s)]][i];
        psum += prod;
      }
      if (psum == 0.0) continue;
      for (int c = 0; c < g.dim(); ++c) out[c][i] += val[c][i] * psum;
    }
  }
  return out;
}

std::vector<double> TensorCoefficients::contract_at(
    const std::vector<double>& x, const std::vector<std::vector<double>>& slot_vectors) const {
  const Grid& g = *grid_;
  std::vector<double> out(static_cast<std::size_t>(g.dim()), 0.0);
  std::vector<IndexTuple> perms;
  for (const auto& [tuple, val] : comps_) {
    auto it = analytic_.find(tuple);
    if (it == analytic_.end())
      throw std::runtime_error("TensorCoefficients::contract_at: component lacks analytic backing");
    std::vector<double> vv = it->second(x);
    distinct_permutations(tuple, perms);
    double psum = 0.0;
    for (const auto& p : perms) {
      double prod = 1.0;
      for (std::size_t s = 0; s < p.size(); ++s) prod *= slot_vectors[s][static_cast<std::size_t>(p[s])];
      psum += prod;
    }
    for (int c = 0; c < g.dim(); ++c) out[static_cast<std::size_t>(c)] += vv[static_cast<std::size_t>(c)] * psum;
  }
  return out;
}

NonlinearitySpec::NonlinearitySpec(const Grid& g, int N) : degree_N(N) {
  if (N < 2) throw std::invalid_argument("NonlinearitySpec: N must be >= 2");
  for (int k = 2; k <= N; ++k) tensors.emplace_back(g, k);
}

bool NonlinearitySpec::linear() const {
  if (remainder.has_value()) return false;
  for (const auto& t : tensors)
    if (!t.empty()) return false;
  return true;
}

// ---------------------------------------------------------------- Tensor3Field

Tensor3Field::Tensor3Field(const Grid& g) : grid_(&g) {
  comps_.assign(static_cast<std::size_t>(free_component_count(g.dim())), RealField(g));
}

int Tensor3Field::comp_index(int j, int k, int l) const {
  const int d = grid_->dim();
  if (j > k) std::swap(j, k);
  // pair rank of (j, k), j <= k, within d*(d+1)/2
  int pair = j * d - j * (j - 1) / 2 + (k - j);
  return pair * d + l;
}

double Tensor3Field::value(int j, int k, int l, std::int64_t node) const {
  return comps_[static_cast<std::size_t>(comp_index(j, k, l))][node];
}

void Tensor3Field::set_value(int j, int k, int l, std::int64_t node, double v) {
  comps_[static_cast<std::size_t>(comp_index(j, k, l))][node] = v;
}

void Tensor3Field::set_component(int j, int k, int l, const RealField& f) {
  comps_[static_cast<std::size_t>(comp_index(j, k, l))] = f;
}

const RealField& Tensor3Field::component(int j, int k, int l) const {
  return comps_[static_cast<std::size_t>(comp_index(j, k, l))];
}

RealField& Tensor3Field::component(int j, int k, int l) {
  return comps_[static_cast<std::size_t>(comp_index(j, k, l))];
}

Tensor3Field& Tensor3Field::operator+=(const Tensor3Field& o) {
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
  return *this;
}

Tensor3Field& Tensor3Field::operator-=(const Tensor3Field& o) {
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
  return *this;
}

Tensor3Field Tensor3Field::scaled(double s) const {
  Tensor3Field r(*grid_);
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    r.comps_[i] = comps_[i];
    r.comps_[i] *= s;
  }
  return r;
}

double Tensor3Field::max_abs() const {
  double m = 0.0;
  for (const auto& c : comps_)
    for (std::int64_t i = 0; i < c.size(); ++i) m = std::max(m, std::abs(c[i]));
  return m;
}

double Tensor3Field::l2_norm() const {
  double acc = 0.0;
  const Grid& g = *grid_;
  for (const auto& c : comps_)
    for (std::int64_t i = 0; i < c.size(); ++i) acc += c[i] * c[i] * g.volume_weight(i);
  return std::sqrt(acc);
}

SymDecomp symmetrize(const Tensor3Field& C) {
  const Grid& g = C.grid();
  const int d = C.dim();
  SymDecomp out{Tensor3Field(g), Tensor3Field(g)};
  for (int j = 0; j < d; ++j)
    for (int k = j; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        for (std::int64_t i = 0; i < g.node_count(); ++i) {
          double s = (C.value(j, k, l, i) + C.value(k, l, j, i) + C.value(l, j, k, i)) / 3.0;
          out.S.set_value(j, k, l, i, s);
          out.D.set_value(j, k, l, i, C.value(j, k, l, i) - s);
        }
      }
  return out;
}

ComplexField contract3(const Tensor3Field& C, const std::vector<std::complex<double>>& a,
                       const std::vector<std::complex<double>>& b,
                       const std::vector<std::complex<double>>& c) {
  const Grid& g = C.grid();
  const int d = C.dim();
  ComplexField out(g);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        std::complex<double> w =
            a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(l)];
        if (w == std::complex<double>(0.0, 0.0)) continue;
        const RealField& comp = C.component(j, k, l);
        for (std::int64_t i = 0; i < g.node_count(); ++i) out[i] += comp[i] * w;
      }
  return out;
}

}  // namespace qlip
