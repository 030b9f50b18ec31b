#include "blockdec/corpus.hpp"

#include <algorithm>

namespace blockdec {

namespace {

// Keeps the scramble stream apart from the sampling stream.
constexpr std::uint64_t kScrambleSalt = 0xD1B54A32D192ED03ull;

Point random_point(const GridShape& shape, std::mt19937_64& rng) {
  Point p(shape.ndim());
  for (int i = 0; i < shape.ndim(); ++i) p[i] = static_cast<int>(rng() % static_cast<std::uint64_t>(shape.size(i)));
  return p;
}

}  // namespace

BlockSample random_block_sum(const GridShape& shape, int count, std::uint64_t seed, const PrimeField& field) {
  if (count < 0) throw std::invalid_argument("random_block_sum: negative block count");
  const auto all = enumerate_blocks(shape);
  std::mt19937_64 rng(seed);
  std::vector<Block> drawn;
  GridModule sum(shape, field);
  for (int c = 0; c < count; ++c) {
    const Block& b = all[rng() % all.size()];
    drawn.push_back(b);
    sum = direct_sum(sum, block_module(shape, b, field));
  }
  return {scramble(sum, seed ^ kScrambleSalt), block_multiset(std::move(drawn))};
}

std::vector<Point> random_interval(const GridShape& shape, std::mt19937_64& rng) {
  for (;;) {
    std::vector<Point> lows, highs;
    const int nl = 1 + static_cast<int>(rng() % 2), nh = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < nl; ++i) lows.push_back(random_point(shape, rng));
    for (int i = 0; i < nh; ++i) highs.push_back(random_point(shape, rng));
    std::vector<Point> pts;
    for (std::size_t idx = 0; idx < shape.num_points(); ++idx) {
      const Point q = shape.point(idx);
      const bool above = std::any_of(lows.begin(), lows.end(), [&](const Point& l) { return leq(l, q); });
      const bool below = std::any_of(highs.begin(), highs.end(), [&](const Point& h) { return leq(q, h); });
      if (above && below) pts.push_back(q);
    }
    try {
      check_interval(shape, pts);
      return pts;
    } catch (const NotAnInterval&) {
    }
  }
}

IntervalSample random_interval_sum(const GridShape& shape, int count, std::uint64_t seed, const PrimeField& field) {
  if (count < 0) throw std::invalid_argument("random_interval_sum: negative interval count");
  std::mt19937_64 rng(seed);
  IntervalSample out;
  GridModule sum(shape, field);
  for (int c = 0; c < count; ++c) {
    auto pts = random_interval(shape, rng);
    sum = direct_sum(sum, interval_module(shape, pts, field));
    out.intervals.push_back(std::move(pts));
  }
  std::sort(out.intervals.begin(), out.intervals.end());
  out.module = scramble(sum, seed ^ kScrambleSalt);
  return out;
}

}  // namespace blockdec
