#pragma once

#include "blockdec/grid_module.hpp"

#include <optional>
#include <string>
#include <vector>

namespace blockdec {

/// Indecomposable non-block module on the 3-cube: k^2 at the minimum mapping
/// to k at each unit vertex by [0 1], [1 0], [1 1]; zero elsewhere.
GridModule fixture_ex37(const PrimeField& field = PrimeField());

/// Interval module on the 3-cube supported on (0,1,0), (0,0,1), (1,0,1), (0,1,1).
GridModule fixture_ex38(const PrimeField& field = PrimeField());

/// The constant module k on the 3-cube.
GridModule fixture_claw_demo(const PrimeField& field = PrimeField());

std::vector<std::string> fixture_names();
std::optional<GridModule> fixture(const std::string& name, const PrimeField& field = PrimeField());

}  // namespace blockdec
