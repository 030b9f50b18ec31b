#pragma once

#include "blockdec/grid_module.hpp"

#include <optional>
#include <string>
#include <vector>

namespace blockdec {

enum class BlockKind { birth, death, band_induced };

/// Core of a band/induced block once the full axes are stripped: a single
/// interval factor, or a birth/death product on the residual axes.
enum class ResidualKind { none, interval, birth, death };

std::string to_string(BlockKind k);
std::string to_string(ResidualKind k);

/// An n-block. Every block is a box lo <= q <= hi, so the box is the whole
/// descriptor; `points` is the canonical identity (sorted lexicographically).
struct Block {
  BlockKind kind = BlockKind::band_induced;
  Point lo, hi;
  std::vector<Point> points;
  std::vector<int> full_axes;      // band_induced only
  std::vector<int> residual_axes;  // band_induced only
  ResidualKind residual = ResidualKind::none;

  friend bool operator==(const Block& a, const Block& b) { return a.points == b.points; }
  friend bool operator<(const Block& a, const Block& b) { return a.points < b.points; }
};

/// Classifies the box [lo, hi]; nullopt when it is not a block.
std::optional<Block> make_block(const GridShape& shape, const Point& lo, const Point& hi);

/// The block with point set s, if s is one. On a 1-axis grid any non-empty
/// interval counts (the degenerate band).
std::optional<Block> classify_block(const GridShape& shape, const std::vector<Point>& s);

inline bool is_block(const GridShape& shape, const std::vector<Point>& s) {
  return classify_block(shape, s).has_value();
}

/// Every block of the grid once, sorted by point set. Requires n >= 2.
std::vector<Block> enumerate_blocks(const GridShape& shape);

GridModule block_module(const GridShape& shape, const Block& b, const PrimeField& field);

/// The block whose interval module m is (dims <= 1, block support, nonzero
/// steps inside the support), or nullopt.
std::optional<Block> recognize_block_summand(const GridModule& m);

/// The block on the coordinate-reversed grid; birth and death swap.
Block dual_block(const GridShape& shape, const Block& b);

}  // namespace blockdec
