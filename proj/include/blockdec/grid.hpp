#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace blockdec {

/// A point of the grid: one coordinate per axis.
using Point = std::vector<int>;

std::string to_string(const Point& p);

/// The product of finite chains {0..s_1-1} x ... x {0..s_n-1}. Points are
/// linearised lexicographically (axis 0 most significant), so index order is
/// lexicographic order.
class GridShape {
public:
  GridShape() = default;
  explicit GridShape(std::vector<int> sizes);

  int ndim() const { return static_cast<int>(sizes_.size()); }
  int size(int axis) const { return sizes_[axis]; }
  const std::vector<int>& sizes() const { return sizes_; }
  std::size_t num_points() const { return count_; }

  std::size_t index(const Point& p) const;
  Point point(std::size_t index) const;
  bool contains(const Point& p) const;
  bool has_step(const Point& p, int axis) const { return p[axis] + 1 < sizes_[axis]; }

  Point min() const { return Point(sizes_.size(), 0); }
  Point max() const;

  /// q -> s - 1 - q on every axis.
  Point reversed(const Point& p) const;

  friend bool operator==(const GridShape&, const GridShape&) = default;

private:
  std::vector<int> sizes_;
  std::vector<std::size_t> strides_;
  std::size_t count_ = 0;
};

inline bool leq(const Point& a, const Point& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Point step_up(Point p, int axis) {
  ++p[axis];
  return p;
}

}  // namespace blockdec
