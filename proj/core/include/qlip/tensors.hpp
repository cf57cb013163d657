#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "qlip/grid.hpp"

namespace qlip {

using IndexTuple = std::vector<int>;

/// Canonical (sorted ascending) form of an index tuple.
IndexTuple canonical_tuple(IndexTuple t);
/// Number of distinct permutations of a sorted tuple (multinomial).
long tuple_multiplicity(const IndexTuple& t);
/// Visit every canonical tuple of length k over {0, ..., d-1}.
void for_each_canonical_tuple(int d, int k, const std::function<void(const IndexTuple&)>& fn);

/// Closed-form vector field used to back tensor components analytically
/// (needed by the gauge pushforward, which samples off lattice nodes).
using AnalyticVec = std::function<std::vector<double>(const std::vector<double>&)>;

/// Order-k coefficient tensor J_k with vector values in R^d, symmetric under
/// any permutation of the k contraction indices. Components are stored on
/// canonical sorted tuples only, so the symmetry is structural. Components
/// are zeroed within a 2-cell margin of the boundary on assignment.
class TensorCoefficients {
 public:
  TensorCoefficients(const Grid& g, int order, double bound_L = 1.0);

  const Grid& grid() const { return *grid_; }
  int order() const { return order_; }
  double bound() const { return bound_L_; }
  bool empty() const { return comps_.empty(); }

  void set_component(const IndexTuple& tuple, VectorField values);
  void set_component(const IndexTuple& tuple, const AnalyticVec& fn);

  /// nullptr when the (canonicalized) tuple is absent (all-zero component).
  const VectorField* component(const IndexTuple& tuple) const;
  const AnalyticVec* analytic_component(const IndexTuple& tuple) const;
  bool all_analytic() const;

  /// J_k : g1 (x) g2 (x) ... (x) gk with per-slot gradient fields; exhaustive
  /// permutation loop over the symmetric storage.
  VectorField contract(const std::vector<const VectorField*>& grads) const;

  /// Same contraction at a single off-grid point from the analytic backing.
  std::vector<double> contract_at(const std::vector<double>& x,
                                  const std::vector<std::vector<double>>& slot_vectors) const;

  const std::map<IndexTuple, VectorField>& components() const { return comps_; }

  double support_margin_cells() const { return 2.0; }

 private:
  void zero_margin(VectorField& v) const;
  const Grid* grid_;
  int order_;
  double bound_L_;
  std::map<IndexTuple, VectorField> comps_;
  std::map<IndexTuple, AnalyticVec> analytic_;
};

/// Optional remainder term R(x, s, p) with declared growth constant.
struct Remainder {
  std::function<std::vector<double>(const std::vector<double>& x, double s,
                                    const std::vector<double>& p)>
      eval;
  double growth_L = 0.0;
};

/// The flux J(x, s, p) = p + sum_k J_k : p^{(x)k} + R(x, s, p).
struct NonlinearitySpec {
  int degree_N = 2;
  std::vector<TensorCoefficients> tensors;  // tensors[i] has order i+2
  std::optional<Remainder> remainder;

  NonlinearitySpec(const Grid& g, int N);
  const Grid& grid() const { return tensors.front().grid(); }
  TensorCoefficients& J(int k) { return tensors.at(static_cast<std::size_t>(k - 2)); }
  const TensorCoefficients& J(int k) const { return tensors.at(static_cast<std::size_t>(k - 2)); }
  bool linear() const;
};

/// 3-tensor field C_{jkl}(x) with C_{jkl} = C_{kjl}; the first index pair is
/// stored sorted. Compactly supported in the grid interior.
class Tensor3Field {
 public:
  explicit Tensor3Field(const Grid& g);

  const Grid& grid() const { return *grid_; }
  int dim() const { return grid_->dim(); }

  double value(int j, int k, int l, std::int64_t node) const;
  void set_value(int j, int k, int l, std::int64_t node, double v);
  void set_component(int j, int k, int l, const RealField& f);
  const RealField& component(int j, int k, int l) const;
  RealField& component(int j, int k, int l);

  /// Free components under C_{jkl} = C_{kjl}: pairs (j <= k) times l.
  static int free_component_count(int d) { return d * (d + 1) / 2 * d; }
  int comp_index(int j, int k, int l) const;

  Tensor3Field& operator+=(const Tensor3Field& o);
  Tensor3Field& operator-=(const Tensor3Field& o);
  friend Tensor3Field operator-(Tensor3Field a, const Tensor3Field& b) { return a -= b; }
  Tensor3Field scaled(double s) const;

  double max_abs() const;
  double l2_norm() const;

 private:
  const Grid* grid_;
  std::vector<RealField> comps_;  // indexed by comp_index
};

struct SymDecomp {
  Tensor3Field S;  // symmetric under all 6 index permutations
  Tensor3Field D;  // remainder; full symmetrization vanishes
};

/// S_{jkl} = (C_{jkl} + C_{klj} + C_{ljk}) / 3, D = C - S.
SymDecomp symmetrize(const Tensor3Field& C);

/// Nodewise sum_{jkl} C_{jkl} a_j b_k c_l for complex probe vectors.
ComplexField contract3(const Tensor3Field& C, const std::vector<std::complex<double>>& a,
                       const std::vector<std::complex<double>>& b,
                       const std::vector<std::complex<double>>& c);

}  // namespace qlip
