#include "blockdec/cube.hpp"
#include "blockdec/grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace blockdec {

std::string to_string(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

GridShape::GridShape(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw std::invalid_argument("grid shape needs at least one axis");
  strides_.assign(sizes_.size(), 1);
  count_ = 1;
  for (int i = ndim() - 1; i >= 0; --i) {
    if (sizes_[i] < 1) throw std::invalid_argument("grid axis lengths must be at least 1");
    strides_[i] = count_;
    count_ *= static_cast<std::size_t>(sizes_[i]);
  }
}

std::size_t GridShape::index(const Point& p) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < sizes_.size(); ++i) idx += strides_[i] * static_cast<std::size_t>(p[i]);
  return idx;
}

Point GridShape::point(std::size_t index) const {
  Point p(sizes_.size());
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    p[i] = static_cast<int>(index / strides_[i]);
    index %= strides_[i];
  }
  return p;
}

bool GridShape::contains(const Point& p) const {
  if (p.size() != sizes_.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < 0 || p[i] >= sizes_[i]) return false;
  return true;
}

Point GridShape::max() const {
  Point p(sizes_);
  for (auto& c : p) --c;
  return p;
}

Point GridShape::reversed(const Point& p) const {
  Point q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[i] = sizes_[i] - 1 - p[i];
  return q;
}

std::vector<int> Cube::active() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] < hi[i]) out.push_back(static_cast<int>(i));
  return out;
}

Point Cube::vertex(unsigned mask) const {
  Point p = lo;
  const auto axes = active();
  for (std::size_t b = 0; b < axes.size(); ++b)
    if (mask & (1u << b)) p[axes[b]] = hi[axes[b]];
  return p;
}

bool Cube::inside(const GridShape& shape) const {
  if (lo.size() != hi.size() || !shape.contains(lo) || !shape.contains(hi)) return false;
  return leq(lo, hi);
}

bool cube_less(const Cube& a, const Cube& b) {
  const auto aa = a.active(), ba = b.active();
  if (aa != ba) return aa < ba;
  if (a.lo != b.lo) return a.lo < b.lo;
  return a.hi < b.hi;
}

std::vector<Cube> enumerate_cubes(const GridShape& shape, int k) {
  const int n = shape.ndim();
  if (k < 1 || k > n) throw std::invalid_argument("cube dimension out of range");
  std::vector<Cube> out;
  std::vector<bool> select(n, false);
  std::fill(select.begin(), select.begin() + k, true);
  do {
    // Odometer over (lo, hi) choices: a pair lo < hi on active axes, a single value elsewhere.
    std::vector<std::pair<int, int>> choice(n);
    std::vector<std::vector<std::pair<int, int>>> options(n);
    bool empty = false;
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < shape.size(i); ++a) {
        if (select[i]) {
          for (int b = a + 1; b < shape.size(i); ++b) options[i].push_back({a, b});
        } else {
          options[i].push_back({a, a});
        }
      }
      if (options[i].empty()) empty = true;
    }
    if (empty) continue;
    std::vector<std::size_t> odo(n, 0);
    for (;;) {
      Cube c{Point(n), Point(n)};
      for (int i = 0; i < n; ++i) {
        c.lo[i] = options[i][odo[i]].first;
        c.hi[i] = options[i][odo[i]].second;
      }
      out.push_back(std::move(c));
      int i = n - 1;
      while (i >= 0 && ++odo[i] == options[i].size()) odo[i--] = 0;
      if (i < 0) break;
    }
  } while (std::prev_permutation(select.begin(), select.end()));
  std::sort(out.begin(), out.end(), cube_less);
  return out;
}

Cube full_cube(const GridShape& shape) { return Cube{shape.min(), shape.max()}; }

std::string to_string(const Cube& c) { return to_string(c.lo) + "->" + to_string(c.hi); }

}  // namespace blockdec
