#pragma once

#include "blockdec/cube.hpp"
#include "blockdec/grid.hpp"
#include "blockdec/linalg.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace blockdec {

/// A pointwise finite-dimensional persistence module over a finite grid.
///
/// Only the steps between consecutive coordinates are stored: step(p, i) is
/// the matrix of M(p) -> M(p + e_i), of size dim(p + e_i) x dim(p). Longer
/// structure maps are composites (see structure_map). A freshly constructed
/// module has all steps zero; set_step replaces one of them.
class GridModule {
public:
  GridModule() = default;
  GridModule(GridShape shape, PrimeField field, std::vector<int> dims);
  /// The zero module.
  GridModule(GridShape shape, PrimeField field);

  const GridShape& shape() const { return shape_; }
  const PrimeField& field() const { return field_; }

  int dim(const Point& p) const { return dims_[shape_.index(p)]; }
  int dim_at(std::size_t index) const { return dims_[index]; }
  const std::vector<int>& dims() const { return dims_; }
  int total_dim() const;

  const Mat& step(const Point& p, int axis) const;
  const Mat& step_at(std::size_t index, int axis) const;
  /// Reduces the entries mod p; throws on a size mismatch or a step leaving the grid.
  void set_step(const Point& p, int axis, const Mat& m);

  bool operator==(const GridModule& other) const;

private:
  GridShape shape_;
  PrimeField field_;
  std::vector<int> dims_;
  std::vector<Mat> steps_;  // [index * ndim + axis]
};

/// M(p <= q), composed axis by axis.
Mat structure_map(const GridModule& m, const Point& p, const Point& q);

struct Violation {
  Point point;
  int axis_i;
  int axis_j;
  Mat via_i;  // step(p + e_i, j) * step(p, i)
  Mat via_j;  // step(p + e_j, i) * step(p, j)
};

/// Empty when every unit square commutes.
std::vector<Violation> validate(const GridModule& m);

/// Thrown by interval_module; the witness is a triple (x, y, z) with x <= y <= z,
/// x, z inside and y outside for convexity, or a pair of points in different
/// components for connectivity.
struct NotAnInterval : std::invalid_argument {
  NotAnInterval(const std::string& what, std::vector<Point> witness)
      : std::invalid_argument(what), witness(std::move(witness)) {}
  std::vector<Point> witness;
};

/// Throws NotAnInterval unless `points` is a non-empty convex connected set.
void check_interval(const GridShape& shape, const std::vector<Point>& points);

/// k_I: dimension 1 on I with identity steps inside I, zero elsewhere.
GridModule interval_module(const GridShape& shape, const std::vector<Point>& points,
                           const PrimeField& field);

/// Pointwise direct sum with block-diagonal steps (a's coordinates first).
GridModule direct_sum(const GridModule& a, const GridModule& b);

/// Pointwise dual over the coordinate-reversed grid; steps are transposed.
GridModule dual(const GridModule& m);

/// M|_C as a module over the 2 x ... x 2 shape of the cube's active axes.
GridModule restrict_cube(const GridModule& m, const Cube& c);

/// The restriction of a module to the claw (union of the outward rays) at a
/// center point. Arm i, position j (0-based) sits at center + (j + 1) e_i;
/// arm_maps[i][j] maps position j - 1 (the center when j = 0) to position j.
struct ClawModule {
  GridShape shape;
  PrimeField field;
  Point center;
  int center_dim = 0;
  std::vector<std::vector<int>> arm_dims;
  std::vector<std::vector<Mat>> arm_maps;

  int dim_on_arm(int axis, int position) const {
    return position < 0 ? center_dim : arm_dims[axis][position];
  }
};

ClawModule restrict_claw(const GridModule& m, const Point& center);

/// The claw module extended by zero to the whole grid (valid because claws are convex).
GridModule extend_by_zero(const ClawModule& cm);

/// Left Kan extension from the claw at the global minimum, evaluated by the
/// colimit formula. At a point p the value is the quotient of
/// M(center) + sum over arms i with p_i > 0 of M(p_i e_i) by the relations
/// x ~ f_i(x); with the arm coordinates preferred as quotient basis, points
/// with at most one positive coordinate reproduce the claw's own tables.
GridModule kan_extend_claw(const ClawModule& cm, const GridShape& shape);

/// Conjugates every point space by a seeded random invertible matrix.
GridModule scramble(const GridModule& m, std::uint64_t seed);

/// A natural transformation between two modules: one matrix per point.
using Morphism = std::vector<Mat>;

/// Basis of Hom(from, to), from the linear naturality system.
std::vector<Morphism> hom_basis(const GridModule& from, const GridModule& to);

bool is_natural(const GridModule& from, const GridModule& to, const Morphism& phi);

/// Random combination of a Hom basis with coefficients drawn from rng.
Morphism random_combination(const PrimeField& field, const std::vector<Morphism>& basis,
                            std::mt19937_64& rng);

/// Equal dimension tables and a Hom(a, b) element invertible at every point,
/// searched by `trials` random combinations.
bool is_isomorphic(const GridModule& a, const GridModule& b, int trials = 32, std::uint64_t seed = 1);

}  // namespace blockdec
