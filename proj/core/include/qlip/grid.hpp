#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlip {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
};

/// Uniform Cartesian lattice on a box in R^d, d = 1+n >= 3, with the box
/// shifted along axis 1 so that the whole domain sits in {x1 > 0}. Boundary
/// nodes are the lattice points with at least one extremal index; the rest
/// are interior and carry the full 2d-neighbor stencil.
class Grid {
 public:
  Grid(int dim, std::vector<int> resolution, std::vector<Interval> box);

  /// build_grid: per-axis resolution `res`, default unit-ish box with the
  /// axis-1 interval placed at [1, 2].
  static Grid make(int dim, int res);
  static Grid make(int dim, std::vector<int> res, std::vector<Interval> box);

  int dim() const { return dim_; }
  std::int64_t node_count() const { return total_; }
  std::int64_t interior_count() const { return interior_count_; }
  std::int64_t boundary_count() const { return total_ - interior_count_; }
  int res(int axis) const { return res_[axis]; }
  const Interval& extent(int axis) const { return box_[axis]; }
  double spacing(int axis) const { return h_[axis]; }
  double max_spacing() const;
  double x1_shift() const { return x1_shift_; }

  std::int64_t index(const std::vector<int>& multi) const;
  std::vector<int> multi_index(std::int64_t flat) const;
  void multi_index(std::int64_t flat, int* out) const;
  double coord(std::int64_t flat, int axis) const;
  std::vector<double> coords(std::int64_t flat) const;

  bool is_boundary(std::int64_t flat) const { return boundary_ord_[flat] >= 0; }
  bool is_interior(std::int64_t flat) const { return boundary_ord_[flat] < 0; }

  /// Ordinal of a node within the boundary (or interior) enumeration.
  std::int64_t boundary_ordinal(std::int64_t flat) const { return boundary_ord_[flat]; }
  std::int64_t interior_ordinal(std::int64_t flat) const { return interior_ord_[flat]; }
  std::int64_t boundary_node(std::int64_t ordinal) const { return boundary_nodes_[ordinal]; }
  std::int64_t interior_node(std::int64_t ordinal) const { return interior_nodes_[ordinal]; }

  std::int64_t stride(int axis) const { return strides_[axis]; }

  /// Trapezoidal volume weight of a node (product of per-axis weights).
  double volume_weight(std::int64_t flat) const;

  bool same_layout(const Grid& o) const;

 private:
  int dim_;
  std::vector<int> res_;
  std::vector<Interval> box_;
  std::vector<double> h_;
  std::vector<std::int64_t> strides_;
  std::int64_t total_ = 0;
  std::int64_t interior_count_ = 0;
  double x1_shift_ = 0.0;
  std::vector<std::int64_t> boundary_ord_;
  std::vector<std::int64_t> interior_ord_;
  std::vector<std::int64_t> boundary_nodes_;
  std::vector<std::int64_t> interior_nodes_;
};

/// Scalar field sampled on every lattice node.
template <typename T>
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(const Grid& g) : grid_(&g), values_(static_cast<std::size_t>(g.node_count()), T{}) {}
  GridFunction(const Grid& g, std::function<T(const std::vector<double>&)> f) : GridFunction(g) {
    for (std::int64_t i = 0; i < g.node_count(); ++i) values_[static_cast<std::size_t>(i)] = f(g.coords(i));
  }

  const Grid& grid() const { return *grid_; }
  bool empty() const { return grid_ == nullptr; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
  T& operator[](std::int64_t i) { return values_[static_cast<std::size_t>(i)]; }
  const T& operator[](std::int64_t i) const { return values_[static_cast<std::size_t>(i)]; }
  std::vector<T>& values() { return values_; }
  const std::vector<T>& values() const { return values_; }

  GridFunction& operator+=(const GridFunction& o) {
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  GridFunction& operator-=(const GridFunction& o) {
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  GridFunction& operator*=(T s) {
    for (auto& v : values_) v *= s;
    return *this;
  }
  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(T s, GridFunction a) { return a *= s; }

 private:
  const Grid* grid_ = nullptr;
  std::vector<T> values_;
};

using RealField = GridFunction<double>;
using ComplexField = GridFunction<std::complex<double>>;

/// Values on the boundary nodes only, indexed by boundary ordinal.
class BoundaryFunction {
 public:
  BoundaryFunction() = default;
  explicit BoundaryFunction(const Grid& g)
      : grid_(&g), values_(static_cast<std::size_t>(g.boundary_count()), 0.0) {}
  BoundaryFunction(const Grid& g, std::function<double(const std::vector<double>&)> f)
      : BoundaryFunction(g) {
    for (std::int64_t o = 0; o < g.boundary_count(); ++o)
      values_[static_cast<std::size_t>(o)] = f(g.coords(g.boundary_node(o)));
  }

  /// Trace of a grid function.
  static BoundaryFunction trace(const RealField& u);

  const Grid& grid() const { return *grid_; }
  bool empty() const { return grid_ == nullptr; }
  double& operator[](std::int64_t ordinal) { return values_[static_cast<std::size_t>(ordinal)]; }
  double operator[](std::int64_t ordinal) const { return values_[static_cast<std::size_t>(ordinal)]; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }

  BoundaryFunction& operator*=(double s) {
    for (auto& v : values_) v *= s;
    return *this;
  }
  friend BoundaryFunction operator*(double s, BoundaryFunction b) { return b *= s; }
  BoundaryFunction& operator-=(const BoundaryFunction& o) {
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  friend BoundaryFunction operator-(BoundaryFunction a, const BoundaryFunction& b) { return a -= b; }
  BoundaryFunction& operator+=(const BoundaryFunction& o) {
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  friend BoundaryFunction operator+(BoundaryFunction a, const BoundaryFunction& b) { return a += b; }

 private:
  const Grid* grid_ = nullptr;
  std::vector<double> values_;
};

/// d-component vector field; comps[j] is the j-th Cartesian component.
struct VectorField {
  std::vector<RealField> comps;

  VectorField() = default;
  explicit VectorField(const Grid& g) {
    comps.assign(static_cast<std::size_t>(g.dim()), RealField(g));
  }
  const Grid& grid() const { return comps.front().grid(); }
  int dim() const { return static_cast<int>(comps.size()); }
  RealField& operator[](int j) { return comps[static_cast<std::size_t>(j)]; }
  const RealField& operator[](int j) const { return comps[static_cast<std::size_t>(j)]; }
  VectorField& operator+=(const VectorField& o) {
    for (std::size_t j = 0; j < comps.size(); ++j) comps[j] += o.comps[j];
    return *this;
  }
  VectorField& operator-=(const VectorField& o) {
    for (std::size_t j = 0; j < comps.size(); ++j) comps[j] -= o.comps[j];
    return *this;
  }
};

}  // namespace qlip
