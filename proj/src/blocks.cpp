#include "blockdec/blocks.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace blockdec {

std::string to_string(BlockKind k) {
  switch (k) {
    case BlockKind::birth: return "birth";
    case BlockKind::death: return "death";
    case BlockKind::band_induced: return "band_induced";
  }
  return "?";
}

std::string to_string(ResidualKind k) {
  switch (k) {
    case ResidualKind::none: return "none";
    case ResidualKind::interval: return "interval";
    case ResidualKind::birth: return "birth";
    case ResidualKind::death: return "death";
  }
  return "?";
}

namespace {

std::vector<Point> box_points(const Point& lo, const Point& hi) {
  std::vector<Point> out;
  Point cur = lo;
  const int n = static_cast<int>(lo.size());
  for (;;) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0 && cur[i] == hi[i]) {
      cur[i] = lo[i];
      --i;
    }
    if (i < 0) break;
    ++cur[i];
  }
  return out;  // odometer with the last axis fastest: already lexicographic
}

}  // namespace

std::optional<Block> make_block(const GridShape& shape, const Point& lo, const Point& hi) {
  const int n = shape.ndim();
  if (static_cast<int>(lo.size()) != n || static_cast<int>(hi.size()) != n) return std::nullopt;
  for (int i = 0; i < n; ++i)
    if (lo[i] < 0 || hi[i] >= shape.size(i) || lo[i] > hi[i]) return std::nullopt;

  Block b;
  b.lo = lo;
  b.hi = hi;
  std::vector<int> partial;
  for (int i = 0; i < n; ++i) {
    if (lo[i] == 0 && hi[i] == shape.size(i) - 1)
      b.full_axes.push_back(i);
    else
      partial.push_back(i);
  }

  if (partial.size() <= 1) {
    b.kind = BlockKind::band_induced;
    b.residual = ResidualKind::interval;
    const int axis = partial.empty() ? 0 : partial.front();  // full grid: canonical axis 0
    b.residual_axes = {axis};
    b.full_axes.erase(std::remove(b.full_axes.begin(), b.full_axes.end(), axis), b.full_axes.end());
  } else {
    const bool ups = std::all_of(partial.begin(), partial.end(),
                                 [&](int i) { return hi[i] == shape.size(i) - 1; });
    const bool downs = std::all_of(partial.begin(), partial.end(), [&](int i) { return lo[i] == 0; });
    if (!ups && !downs) return std::nullopt;
    const ResidualKind core = ups ? ResidualKind::birth : ResidualKind::death;
    if (b.full_axes.empty()) {
      b.kind = ups ? BlockKind::birth : BlockKind::death;
    } else {
      b.kind = BlockKind::band_induced;
      b.residual = core;
      b.residual_axes = partial;
    }
  }
  b.points = box_points(lo, hi);
  return b;
}

std::optional<Block> classify_block(const GridShape& shape, const std::vector<Point>& s) {
  if (s.empty()) return std::nullopt;
  const int n = shape.ndim();
  Point lo = s.front(), hi = s.front();
  for (const Point& p : s) {
    if (!shape.contains(p)) return std::nullopt;
    for (int i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  // A product set is exactly its bounding box.
  std::size_t volume = 1;
  for (int i = 0; i < n; ++i) volume *= static_cast<std::size_t>(hi[i] - lo[i] + 1);
  std::set<Point> distinct(s.begin(), s.end());
  if (distinct.size() != volume) return std::nullopt;
  return make_block(shape, lo, hi);
}

std::vector<Block> enumerate_blocks(const GridShape& shape) {
  const int n = shape.ndim();
  if (n < 2) throw std::invalid_argument("enumerate_blocks needs at least two axes");
  std::set<std::pair<Point, Point>> boxes;
  const Point full_lo = shape.min(), full_hi = shape.max();

  // Single-axis interval times the full remaining axes.
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < shape.size(j); ++a)
      for (int b = a; b < shape.size(j); ++b) {
        Point lo = full_lo, hi = full_hi;
        lo[j] = a;
        hi[j] = b;
        boxes.insert({lo, hi});
      }

  // Proper upsets (or downsets) on a set S of at least two axes, full elsewhere.
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> axes;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) axes.push_back(i);
    if (axes.size() < 2) continue;
    bool possible = true;
    for (int i : axes) possible = possible && shape.size(i) >= 2;
    if (!possible) continue;
    // Odometer over the cut position c_i in 1..s_i-1 of each axis in S.
    std::vector<int> cut(axes.size(), 1);
    for (;;) {
      Point up_lo = full_lo, up_hi = full_hi, down_lo = full_lo, down_hi = full_hi;
      for (std::size_t t = 0; t < axes.size(); ++t) {
        up_lo[axes[t]] = cut[t];
        down_hi[axes[t]] = cut[t] - 1;
      }
      boxes.insert({up_lo, up_hi});
      boxes.insert({down_lo, down_hi});
      std::size_t t = axes.size();
      while (t > 0 && cut[t - 1] == shape.size(axes[t - 1]) - 1) {
        cut[t - 1] = 1;
        --t;
      }
      if (t == 0) break;
      ++cut[t - 1];
    }
  }

  std::vector<Block> out;
  out.reserve(boxes.size());
  for (const auto& [lo, hi] : boxes) {
    auto b = make_block(shape, lo, hi);
    if (!b) throw std::logic_error("enumerate_blocks produced a non-block box");
    out.push_back(std::move(*b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

GridModule block_module(const GridShape& shape, const Block& b, const PrimeField& field) {
  if (!is_block(shape, b.points)) throw std::invalid_argument("block_module: not a block of this grid");
  return interval_module(shape, b.points, field);
}

std::optional<Block> recognize_block_summand(const GridModule& m) {
  const GridShape& s = m.shape();
  std::vector<Point> support;
  for (std::size_t idx = 0; idx < s.num_points(); ++idx) {
    if (m.dim_at(idx) > 1) return std::nullopt;
    if (m.dim_at(idx) == 1) support.push_back(s.point(idx));
  }
  auto b = classify_block(s, support);
  if (!b) return std::nullopt;
  for (const Point& p : support)
    for (int i = 0; i < s.ndim(); ++i)
      if (s.has_step(p, i) && m.dim(step_up(p, i)) == 1 && m.step(p, i)(0, 0) == 0) return std::nullopt;
  return b;
}

Block dual_block(const GridShape& shape, const Block& b) {
  auto d = make_block(shape, shape.reversed(b.hi), shape.reversed(b.lo));
  if (!d) throw std::invalid_argument("dual_block: not a block of this grid");
  return *d;
}

}  // namespace blockdec
