#pragma once

#include "blockdec/blocks.hpp"
#include "blockdec/decomp.hpp"
#include "blockdec/grid_module.hpp"

#include <cstdint>
#include <vector>

namespace blockdec {

struct BlockSample {
  GridModule module;
  std::vector<BlockCount> truth;
};

/// Scrambled sum of `count` blocks drawn uniformly (with replacement) from
/// enumerate_blocks, with the drawn multiset.
BlockSample random_block_sum(const GridShape& shape, int count, std::uint64_t seed,
                             const PrimeField& field = PrimeField());

struct IntervalSample {
  GridModule module;
  std::vector<std::vector<Point>> intervals;  // sorted
};

/// A random interval: U ∩ D for an upset U and a downset D generated by one
/// or two random points each, redrawn until non-empty and connected.
std::vector<Point> random_interval(const GridShape& shape, std::mt19937_64& rng);

/// Scrambled sum of `count` random interval modules.
IntervalSample random_interval_sum(const GridShape& shape, int count, std::uint64_t seed,
                                   const PrimeField& field = PrimeField());

}  // namespace blockdec
