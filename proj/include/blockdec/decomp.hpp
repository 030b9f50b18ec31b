#pragma once

#include "blockdec/blocks.hpp"
#include "blockdec/grid_module.hpp"
#include "blockdec/koszul.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockdec {

/// An endomorphism: one square matrix per point, natural in the steps.
using Endo = Morphism;

std::vector<Endo> end_basis(const GridModule& m);

/// Per-point bases (independent columns) of a step-closed family U_p of M(p).
struct Submodule {
  std::vector<Mat> basis;  // indexed like the grid points

  std::vector<int> dims() const;
  bool is_zero() const;
};

bool is_submodule(const GridModule& m, const Submodule& u);

/// The submodule as a module in its own coordinates: steps are the unique
/// solutions of U_q X = step(p, i) U_p. Throws if u is not step-closed.
GridModule submodule_module(const GridModule& m, const Submodule& u);

Submodule intersect(const GridModule& m, const Submodule& a, const Submodule& b);

/// Elements killed on the way to the top coordinate of `axis`.
Submodule kernel_submodule(const GridModule& m, int axis);

/// Elements reached from the bottom coordinate of `axis`.
Submodule image_submodule(const GridModule& m, int axis);

/// Fitting split by psi = phi^N, N = total dimension: (ker psi, im psi) when
/// both are nonzero. Throws if phi is not natural.
struct FittingParts {
  Submodule kernel;
  Submodule image;
};
std::optional<FittingParts> fitting_split(const GridModule& m, const Endo& phi);

/// A leaf of the generic decomposition. `certified` means dim End = 1; an
/// uncertified leaf resisted every split attempt and may still decompose.
struct Summand {
  GridModule module;
  bool certified = false;
};

/// Splits m recursively with Fitting decompositions of phi - lambda, phi a
/// random endomorphism and lambda an eigenvalue of phi at some point, until
/// each part has End of dimension 1 or `trials` consecutive attempts fail.
std::vector<Summand> decompose_indecomposables(const GridModule& m, int trials = 24, std::uint64_t seed = 1);

/// Raised when a step that the theory guarantees fails; always a bug.
struct InternalInconsistency : std::logic_error {
  using std::logic_error::logic_error;
};

enum class SplitStatus { split, none_found, not_splittable };

struct BlockSplit {
  SplitStatus status = SplitStatus::none_found;
  std::optional<Block> block;
  GridModule complement;  // valid when split
  Point witness;          // support point that failed, when not_splittable
  std::string detail;
};

/// Splits off a block (prod_{i in S} [0, p_i]) x (full on the other axes),
/// read off the slice through the minimum spanned by `axes`. With all axes
/// this is a death block.
BlockSplit split_death_core(const GridModule& m, const std::vector<int>& axes);
BlockSplit split_birth_core(const GridModule& m, const std::vector<int>& axes);

BlockSplit split_death_block(const GridModule& m);
BlockSplit split_birth_block(const GridModule& m);

struct BlockCount {
  Block block;
  int multiplicity = 0;
};

enum class Method { generic, constructive, automatic };

std::string to_string(Method m);
std::optional<Method> parse_method(const std::string& s);

struct Decomposition {
  std::vector<BlockCount> blocks;       // sorted by point set
  std::vector<GridModule> non_block;    // leaves that are not block modules
  std::vector<GridModule> unsplit;      // probabilistic residue
  Method method = Method::generic;
  /// Which case produced each step: "death", "birth", "death-core", "birth-core",
  /// "claw" or "generic".
  std::vector<std::string> trace;

  bool complete() const { return non_block.empty() && unsplit.empty(); }
};

/// Collapses a list of blocks into the sorted multiset.
std::vector<BlockCount> block_multiset(std::vector<Block> blocks);

/// The direct sum of the block modules, with multiplicity.
GridModule assemble(const GridShape& shape, const std::vector<BlockCount>& blocks, const PrimeField& field);

/// Generic engine without the criterion pre-check: every leaf is classified
/// as a block, a non-block indecomposable, or an unsplit residue.
Decomposition generic_decomposition(const GridModule& m, int trials = 24, std::uint64_t seed = 1);

/// Claw-plus-Kan-extension decomposition of a 2-exact module on a 2 x ... x 2
/// grid; nullopt when the module is not 2-exact or the grid is not a cube.
std::optional<Decomposition> decompose_2exact_cube(const GridModule& m, std::uint64_t seed = 1);

struct DecomposeOptions {
  Method method = Method::automatic;
  std::uint64_t seed = 1;
  int trials = 24;
  int retries = 3;
  int jobs = 1;
};

enum class DecomposeStatus { decomposed, failure, incomplete };

struct DecomposeResult {
  DecomposeStatus status = DecomposeStatus::decomposed;
  Decomposition decomposition;    // decomposed (and the partial answer when incomplete)
  std::optional<Witness> witness;  // failure
};

/// Runs the local criterion; on success decomposes by the chosen engine.
DecomposeResult decompose_blocks(const GridModule& m, const DecomposeOptions& opt = {});

/// Minimal k in 2..n with every k-cube exact, or n + 1 when there is none.
int minimal_exact_level(const GridModule& m, int jobs = 1);

}  // namespace blockdec
