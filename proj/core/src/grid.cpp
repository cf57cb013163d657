#include "qlip/grid.hpp"

#include <algorithm>
#include <cmath>

namespace qlip {

Grid::Grid(int dim, std::vector<int> resolution, std::vector<Interval> box)
    : dim_(dim), res_(std::move(resolution)), box_(std::move(box)) {
  if (dim_ < 3)
    throw std::invalid_argument("Grid: dimension must be at least 3 (d = 1+n with n >= 2)");
  if (static_cast<int>(res_.size()) != dim_ || static_cast<int>(box_.size()) != dim_)
    throw std::invalid_argument("Grid: resolution/box size mismatch");
  for (int a = 0; a < dim_; ++a) {
    if (res_[a] < 5) throw std::invalid_argument("Grid: resolution too small (need >= 5 per axis)");
    if (!(box_[a].length() > 0.0)) throw std::invalid_argument("Grid: degenerate box interval");
  }

  // Shift axis 1 so the whole support box sits in {x1 > 0}.
  if (box_[1].lo <= 0.0) {
    x1_shift_ = 1.0 - box_[1].lo;
    box_[1].lo += x1_shift_;
    box_[1].hi += x1_shift_;
  }

  h_.resize(static_cast<std::size_t>(dim_));
  strides_.resize(static_cast<std::size_t>(dim_));
  total_ = 1;
  for (int a = 0; a < dim_; ++a) {
    h_[a] = box_[a].length() / (res_[a] - 1);
    strides_[a] = total_;
    total_ *= res_[a];
  }

  boundary_ord_.assign(static_cast<std::size_t>(total_), -1);
  interior_ord_.assign(static_cast<std::size_t>(total_), -1);
  std::vector<int> mi(static_cast<std::size_t>(dim_), 0);
  for (std::int64_t i = 0; i < total_; ++i) {
    multi_index(i, mi.data());
    bool bnd = false;
    for (int a = 0; a < dim_; ++a)
      if (mi[a] == 0 || mi[a] == res_[a] - 1) {
        bnd = true;
        break;
      }
    if (bnd) {
      boundary_ord_[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(boundary_nodes_.size());
      boundary_nodes_.push_back(i);
    } else {
      interior_ord_[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(interior_nodes_.size());
      interior_nodes_.push_back(i);
    }
  }
  interior_count_ = static_cast<std::int64_t>(interior_nodes_.size());
}

Grid Grid::make(int dim, int res) {
  std::vector<Interval> box(static_cast<std::size_t>(dim), Interval{0.0, 1.0});
  box[1] = Interval{1.0, 2.0};
  return Grid(dim, std::vector<int>(static_cast<std::size_t>(dim), res), std::move(box));
}

Grid Grid::make(int dim, std::vector<int> res, std::vector<Interval> box) {
  return Grid(dim, std::move(res), std::move(box));
}

double Grid::max_spacing() const { return *std::max_element(h_.begin(), h_.end()); }

std::int64_t Grid::index(const std::vector<int>& multi) const {
  std::int64_t f = 0;
  for (int a = 0; a < dim_; ++a) f += strides_[a] * multi[a];
  return f;
}

std::vector<int> Grid::multi_index(std::int64_t flat) const {
  std::vector<int> mi(static_cast<std::size_t>(dim_));
  multi_index(flat, mi.data());
  return mi;
}

void Grid::multi_index(std::int64_t flat, int* out) const {
  for (int a = 0; a < dim_; ++a) {
    out[a] = static_cast<int>(flat % res_[a]);
    flat /= res_[a];
  }
}

double Grid::coord(std::int64_t flat, int axis) const {
  std::int64_t idx = (flat / strides_[axis]) % res_[axis];
  return box_[axis].lo + h_[axis] * static_cast<double>(idx);
}

std::vector<double> Grid::coords(std::int64_t flat) const {
  std::vector<double> x(static_cast<std::size_t>(dim_));
  for (int a = 0; a < dim_; ++a) x[a] = coord(flat, a);
  return x;
}

double Grid::volume_weight(std::int64_t flat) const {
  double w = 1.0;
  for (int a = 0; a < dim_; ++a) {
    std::int64_t idx = (flat / strides_[a]) % res_[a];
    double wa = (idx == 0 || idx == res_[a] - 1) ? 0.5 * h_[a] : h_[a];
    w *= wa;
  }
  return w;
}

bool Grid::same_layout(const Grid& o) const {
  if (dim_ != o.dim_ || res_ != o.res_) return false;
  for (int a = 0; a < dim_; ++a) {
    if (std::abs(box_[a].lo - o.box_[a].lo) > 1e-14) return false;
    if (std::abs(box_[a].hi - o.box_[a].hi) > 1e-14) return false;
  }
  return true;
}

BoundaryFunction BoundaryFunction::trace(const RealField& u) {
  const Grid& g = u.grid();
  BoundaryFunction b(g);
  for (std::int64_t o = 0; o < g.boundary_count(); ++o) b[o] = u[g.boundary_node(o)];
  return b;
}

}  // namespace qlip
