#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "qlip/grid.hpp"

namespace qlip {

/// Self-describing text format for grids and fields: dimension, extents,
/// resolution, then the flat value array printed with max_digits10 so the
/// round trip is loss-free.
void save_field(std::ostream& os, const RealField& u);
void save_field(const std::string& path, const RealField& u);

struct LoadedField {
  std::shared_ptr<Grid> grid;  // stable address; the field points into it
  RealField field;
};
LoadedField load_field(std::istream& is);
LoadedField load_field(const std::string& path);

}  // namespace qlip
