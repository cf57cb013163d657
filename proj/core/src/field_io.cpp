#include "qlip/field_io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qlip {

void save_field(std::ostream& os, const RealField& u) {
  const Grid& g = u.grid();
  os << "qlip-field 1\n";
  os << "dim " << g.dim() << "\n";
  os << "resolution";
  for (int a = 0; a < g.dim(); ++a) os << " " << g.res(a);
  os << "\n";
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << "extents";
  for (int a = 0; a < g.dim(); ++a) os << " " << g.extent(a).lo << " " << g.extent(a).hi;
  os << "\n";
  os << "values " << g.node_count() << "\n";
  for (std::int64_t i = 0; i < g.node_count(); ++i) os << u[i] << "\n";
}

void save_field(const std::string& path, const RealField& u) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("save_field: cannot open " + path);
  save_field(f, u);
}

LoadedField load_field(std::istream& is) {
  std::string tag;
  int version = 0;
  is >> tag >> version;
  if (tag != "qlip-field" || version != 1)
    throw std::runtime_error("load_field: bad header");
  std::string key;
  int dim = 0;
  is >> key >> dim;
  if (key != "dim") throw std::runtime_error("load_field: expected dim");
  std::vector<int> res(static_cast<std::size_t>(dim));
  is >> key;
  if (key != "resolution") throw std::runtime_error("load_field: expected resolution");
  for (auto& r : res) is >> r;
  std::vector<Interval> box(static_cast<std::size_t>(dim));
  is >> key;
  if (key != "extents") throw std::runtime_error("load_field: expected extents");
  for (auto& b : box) is >> b.lo >> b.hi;
  std::int64_t count = 0;
  is >> key >> count;
  if (key != "values") throw std::runtime_error("load_field: expected values");

  LoadedField out{std::make_shared<Grid>(dim, res, box), RealField()};
  if (count != out.grid->node_count()) throw std::runtime_error("load_field: value count mismatch");
  out.field = RealField(*out.grid);
  for (std::int64_t i = 0; i < count; ++i) is >> out.field[i];
  if (!is) throw std::runtime_error("load_field: truncated value array");
  return out;
}

LoadedField load_field(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("load_field: cannot open " + path);
  return load_field(f);
}

}  // namespace qlip
