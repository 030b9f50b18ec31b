#pragma once

#include "blockdec/grid.hpp"

#include <vector>

namespace blockdec {

/// An axis-aligned k-cube {lo_1, hi_1} x ... x {lo_n, hi_n} with lo_i < hi_i
/// exactly on the active axes. Vertices are addressed by bitmasks over the
/// active axes (bit b <-> active()[b]), so vertex 0 is the minimum.
struct Cube {
  Point lo;
  Point hi;

  std::vector<int> active() const;
  int dim() const { return static_cast<int>(active().size()); }
  Point vertex(unsigned mask) const;
  bool inside(const GridShape& shape) const;

  friend bool operator==(const Cube&, const Cube&) = default;
};

/// Lexicographic by (active axes, lo, hi).
bool cube_less(const Cube& a, const Cube& b);

/// Every k-cube of the grid exactly once, in cube_less order.
std::vector<Cube> enumerate_cubes(const GridShape& shape, int k);

/// The unique cube spanning a whole 2 x ... x 2 shape.
Cube full_cube(const GridShape& shape);

std::string to_string(const Cube& c);

}  // namespace blockdec
