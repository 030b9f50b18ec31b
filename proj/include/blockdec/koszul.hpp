#pragma once

#include "blockdec/cube.hpp"
#include "blockdec/grid_module.hpp"

#include <optional>
#include <vector>

namespace blockdec {

/// Koszul complex of a module restricted to a k-cube, with the cube maximum
/// in degree 0 and the minimum in degree k.
///
/// The complex is the iterated mapping cone: splitting off an axis a, with
/// F the face avoiding a and R the face containing it,
///   K_j = K_F[j-1] + K_R[j],   d(f, r) = (d_F f, Phi f - d_R r),
/// starting from the single space of a 0-cube. Within a degree the summands
/// are listed F-part first, which for the natural axis order gives the
/// lexicographic order of the vertex subsets.
struct KoszulComplex {
  int k = 0;
  std::vector<int> chain_dims;                // degree 0..k
  std::vector<std::vector<unsigned>> terms;   // vertex masks per degree
  std::vector<Mat> diffs;                     // diffs[j]: degree j -> j-1, j = 1..k (diffs[0] unused)
};

/// `axis_order` lists the active axes (as bit positions 0..k-1) in the order
/// they are split off, last one first; empty means the natural order.
KoszulComplex koszul_complex(const GridModule& m, const Cube& c, const std::vector<int>& axis_order = {});

/// Same, for a module already living on a 2 x ... x 2 grid.
KoszulComplex koszul_complex_of_cube_module(const GridModule& cube_module, const std::vector<int>& axis_order = {});

/// dim H_j for j = 0..k.
std::vector<int> homology_dims(const PrimeField& f, const KoszulComplex& kc);

/// True when every consecutive pair of differentials composes to zero.
bool is_complex(const PrimeField& f, const KoszulComplex& kc);

struct ExactnessFlags {
  bool middle = false;
  bool left = false;
  bool right = false;
};

ExactnessFlags exactness_flags(const GridModule& m, const Cube& c);

struct CheckOptions {
  /// Worker threads for the cube scan; results never depend on it.
  int jobs = 1;
  /// Assuming (k-1)-middle exactness, inspect only degrees 1 and k-1 at level k.
  bool outer_degrees_only = false;
};

struct Witness {
  Cube cube;
  int degree = 0;
  int homology_dim = 0;
};

/// Middle exactness on every k-cube for 2 <= k <= n. Returns the first
/// failing (k, cube, degree) in scan order, or nullopt when the criterion holds.
/// Throws on a non-commutative module.
std::optional<Witness> local_block_witness(const GridModule& m, const CheckOptions& opt = {});

inline bool is_locally_block_decomposable(const GridModule& m, const CheckOptions& opt = {}) {
  return !local_block_witness(m, opt).has_value();
}

struct ExactnessLevel {
  int k = 0;
  bool all_middle = true;
  bool all_left = true;
  bool all_right = true;
  bool exact() const { return all_middle && all_left && all_right; }
};

/// One entry per k = 2..n.
std::vector<ExactnessLevel> exactness_profile(const GridModule& m, const CheckOptions& opt = {});

}  // namespace blockdec
