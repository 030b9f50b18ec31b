#include "blockdec/corpus.hpp"
#include "blockdec/decomp.hpp"
#include "blockdec/fixtures.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace testing;

namespace {

std::vector<Point> all_points(const GridShape& s) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < s.num_points(); ++i) out.push_back(s.point(i));
  return out;
}

std::vector<BlockCount> dual_multiset(const GridShape& s, const std::vector<BlockCount>& in) {
  std::vector<Block> flat;
  for (const auto& bc : in)
    for (int i = 0; i < bc.multiplicity; ++i) flat.push_back(dual_block(s, bc.block));
  return block_multiset(flat);
}

bool same(const std::vector<BlockCount>& a, const std::vector<BlockCount>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i].block == b[i].block) || a[i].multiplicity != b[i].multiplicity) return false;
  return true;
}

}  // namespace

TEST_CASE("endomorphism algebras") {
  const PrimeField f;
  const GridShape sq({2, 2});
  CHECK(end_basis(fixture_ex37()).size() == 1);
  CHECK(end_basis(direct_sum(interval_module(sq, {{0, 0}}, f), interval_module(sq, {{1, 1}}, f))).size() == 2);
  CHECK(end_basis(GridModule(sq, f)).empty());
}

TEST_CASE("Fitting splits") {
  const PrimeField f;
  const GridShape sq({2, 2});
  const GridModule a = interval_module(sq, {{0, 0}, {0, 1}}, f);
  const GridModule b = interval_module(sq, all_points(sq), f);
  const GridModule ab = direct_sum(a, b);
  // Projection onto the a summand.
  Endo proj(sq.num_points());
  for (std::size_t idx = 0; idx < sq.num_points(); ++idx) {
    const int da = a.dim_at(idx), db = b.dim_at(idx);
    proj[idx] = block_diag(identity(da), Mat::Zero(db, db));
  }
  auto parts = fitting_split(ab, proj);
  REQUIRE(parts);
  CHECK(parts->kernel.dims() == b.dims());
  CHECK(parts->image.dims() == a.dims());
  CHECK(is_submodule(ab, parts->kernel));
  CHECK(is_submodule(ab, parts->image));
  CHECK(submodule_module(ab, parts->image) == a);

  Endo id(sq.num_points());
  for (std::size_t idx = 0; idx < sq.num_points(); ++idx) id[idx] = identity(ab.dim_at(idx));
  CHECK_FALSE(fitting_split(ab, id));

  const GridModule ex = fixture_ex37();
  Endo zero(ex.shape().num_points());
  for (std::size_t idx = 0; idx < zero.size(); ++idx) zero[idx] = Mat::Zero(ex.dim_at(idx), ex.dim_at(idx));
  CHECK_FALSE(fitting_split(ex, zero));

  Endo twisted = id;
  twisted[0] = mat({{2}});
  CHECK_THROWS_AS(fitting_split(ab, twisted), std::invalid_argument);
}

TEST_CASE("generic decomposition into indecomposables") {
  const auto leaves = decompose_indecomposables(fixture_ex37());
  REQUIRE(leaves.size() == 1);
  CHECK(leaves[0].certified);
  CHECK(decompose_indecomposables(GridModule(GridShape({2, 2}), PrimeField())).empty());

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto sample = random_block_sum(GridShape({2, 2}), 3, seed);
    const auto parts = decompose_indecomposables(sample.module, 24, seed);
    CHECK(parts.size() == 3);
    std::vector<Block> found;
    for (const auto& p : parts) {
      CHECK(p.certified);
      auto b = recognize_block_summand(p.module);
      REQUIRE(b);
      found.push_back(*b);
    }
    CHECK(same(block_multiset(found), sample.truth));
  }
}

TEST_CASE("kernel and image submodules") {
  const PrimeField f;
  const GridShape sq({2, 2});
  const GridModule full = interval_module(sq, all_points(sq), f);
  for (int axis = 0; axis < 2; ++axis) {
    CHECK(kernel_submodule(full, axis).is_zero());
    CHECK(image_submodule(full, axis).dims() == full.dims());
  }
  const GridModule death = interval_module(sq, {{0, 0}}, f);
  CHECK(kernel_submodule(death, 0).dims() == std::vector<int>{1, 0, 0, 0});
  CHECK(image_submodule(death, 0).dims() == std::vector<int>{1, 0, 0, 0});
  const GridModule birth = interval_module(sq, {{1, 1}}, f);
  CHECK(image_submodule(birth, 0).dims() == std::vector<int>{0, 0, 0, 0});
  CHECK(kernel_submodule(fixture_ex37(), 1).basis[0].cols() == 1);
  CHECK_THROWS_AS(kernel_submodule(full, 2), std::invalid_argument);

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto m = random_interval_sum(GridShape({3, 3, 2}), 4, seed).module;
    for (int axis = 0; axis < 3; ++axis) {
      CHECK(is_submodule(m, kernel_submodule(m, axis)));
      CHECK(is_submodule(m, image_submodule(m, axis)));
    }
  }
}

TEST_CASE("the common kernel of a block sum has surjective structure maps") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const GridShape s(seed % 2 ? std::vector<int>{3, 3} : std::vector<int>{3, 2, 2});
    const auto sample = random_block_sum(s, 4, seed);
    const GridModule& m = sample.module;
    Submodule n = kernel_submodule(m, 0);
    for (int i = 1; i < s.ndim(); ++i) n = intersect(m, n, kernel_submodule(m, i));
    const GridModule nm = submodule_module(m, n);
    for (std::size_t idx = 0; idx < s.num_points(); ++idx) {
      const Point p = s.point(idx);
      for (int i = 0; i < s.ndim(); ++i) {
        if (!s.has_step(p, i)) continue;
        CHECK(rank(m.field(), nm.step_at(idx, i)) == nm.dim(step_up(p, i)));
      }
    }
  }
}

TEST_CASE("death and birth block splitting") {
  const PrimeField f;
  const GridShape sq({2, 2});
  const GridModule full = interval_module(sq, all_points(sq), f);
  const GridModule death = interval_module(sq, {{0, 0}}, f);
  const auto sp = split_death_block(scramble(direct_sum(death, full), 4));
  REQUIRE(sp.status == SplitStatus::split);
  CHECK(sp.block->kind == BlockKind::death);
  CHECK(sp.block->points == std::vector<Point>{{0, 0}});
  CHECK(is_isomorphic(sp.complement, full));
  CHECK(split_death_block(full).status == SplitStatus::none_found);

  const GridModule birth = interval_module(sq, {{1, 1}}, f);
  const auto bp = split_birth_block(scramble(direct_sum(full, birth), 8));
  REQUIRE(bp.status == SplitStatus::split);
  CHECK(bp.block->kind == BlockKind::birth);
  CHECK(bp.block->points == std::vector<Point>{{1, 1}});
  CHECK(is_isomorphic(bp.complement, full));
  CHECK(split_birth_block(full).status == SplitStatus::none_found);

  // The 3-cube interval has no element dying along every axis at the minimum.
  const auto s38 = split_death_block(fixture_ex38());
  CHECK(s38.status != SplitStatus::split);

  const auto a = split_death_block(fixture_ex37());
  const auto b = split_birth_block(dual(fixture_ex37()));
  CHECK(a.status == b.status);
}

TEST_CASE("splitting a death core off a slice") {
  const PrimeField f;
  const GridShape s({3, 3, 2});
  // (death on axes 0,1) x full axis 2
  std::vector<Point> pts;
  for (const Point& p : all_points(s))
    if (p[0] <= 1 && p[1] == 0) pts.push_back(p);
  const GridModule core = interval_module(s, pts, f);
  const GridModule band = interval_module(s, all_points(s), f);
  const auto sp = split_death_core(scramble(direct_sum(band, core), 3), {0, 1});
  REQUIRE(sp.status == SplitStatus::split);
  CHECK(sp.block->points == pts);
  CHECK(sp.block->residual == ResidualKind::death);
  CHECK(is_isomorphic(sp.complement, band));
}

TEST_CASE("2-exact cube modules by claw and Kan extension") {
  const PrimeField f;
  const GridShape cube({2, 2, 2});
  auto d = decompose_2exact_cube(fixture_claw_demo());
  REQUIRE(d);
  REQUIRE(d->blocks.size() == 1);
  CHECK(d->blocks[0].block.points.size() == 8);
  CHECK(d->blocks[0].multiplicity == 1);

  std::vector<Point> slab;
  for (const Point& p : all_points(cube))
    if (p[0] == 1) slab.push_back(p);
  auto e = decompose_2exact_cube(scramble(interval_module(cube, slab, f), 2));
  REQUIRE(e);
  REQUIRE(e->blocks.size() == 1);
  CHECK(e->blocks[0].block.points == slab);

  CHECK_FALSE(decompose_2exact_cube(fixture_ex37()));
  CHECK_FALSE(decompose_2exact_cube(interval_module(GridShape({3, 2}), {{0, 0}}, f)));
}

TEST_CASE("block decomposition end to end") {
  const auto sample = random_block_sum(GridShape({2, 2, 2}), 5, 7);
  for (Method method : {Method::generic, Method::constructive, Method::automatic}) {
    DecomposeOptions opt;
    opt.method = method;
    const auto r = decompose_blocks(sample.module, opt);
    REQUIRE(r.status == DecomposeStatus::decomposed);
    CHECK(same(r.decomposition.blocks, sample.truth));
  }

  const auto fail = decompose_blocks(fixture_ex38());
  REQUIRE(fail.status == DecomposeStatus::failure);
  CHECK(fail.witness->cube == Cube{{0, 0, 0}, {1, 1, 0}});

  const auto zero = decompose_blocks(GridModule(GridShape({2, 3}), PrimeField()));
  CHECK(zero.status == DecomposeStatus::decomposed);
  CHECK(zero.decomposition.blocks.empty());
}

TEST_CASE("decompositions are sound, dual-compatible and scramble-invariant") {
  for (std::uint64_t seed = 1; seed <= 24; ++seed) {
    const std::vector<std::vector<int>> shapes{{2, 2}, {3, 3}, {2, 2, 2}, {3, 2, 2}, {2, 3, 3}, {2, 2, 2, 2}};
    const GridShape s(shapes[seed % shapes.size()]);
    const auto sample = random_block_sum(s, 1 + static_cast<int>(seed % 5), seed);
    DecomposeOptions opt;
    opt.seed = seed;
    for (Method method : {Method::generic, Method::constructive}) {
      opt.method = method;
      const auto r = decompose_blocks(sample.module, opt);
      REQUIRE(r.status == DecomposeStatus::decomposed);
      CHECK(same(r.decomposition.blocks, sample.truth));
      CHECK(is_isomorphic(assemble(s, r.decomposition.blocks, sample.module.field()), sample.module));
      const auto rd = decompose_blocks(dual(sample.module), opt);
      REQUIRE(rd.status == DecomposeStatus::decomposed);
      CHECK(same(rd.decomposition.blocks, dual_multiset(s, r.decomposition.blocks)));
      const auto rs = decompose_blocks(scramble(sample.module, seed + 1000), opt);
      CHECK(same(rs.decomposition.blocks, r.decomposition.blocks));
    }
  }
}

TEST_CASE("non-block interval sums are rejected by the criterion and the oracle alike") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const GridShape s(seed % 2 ? std::vector<int>{3, 3} : std::vector<int>{2, 2, 3});
    const auto sample = random_interval_sum(s, 3, seed);
    bool all_blocks = true;
    for (const auto& iv : sample.intervals) all_blocks = all_blocks && is_block(s, iv);
    CHECK(is_locally_block_decomposable(sample.module) == all_blocks);
    const auto d = generic_decomposition(sample.module, 24, seed);
    CHECK(d.unsplit.empty());
    CHECK(d.non_block.empty() == all_blocks);
  }
}

TEST_CASE("the constructive engine walks through every case") {
  const PrimeField f;
  const GridShape s({3, 2, 2});
  auto box = [&](const Point& lo, const Point& hi) { return block_module(s, *make_block(s, lo, hi), f); };
  GridModule m = box({0, 0, 0}, {1, 0, 0});                   // death block
  m = direct_sum(m, box({0, 0, 0}, {2, 0, 0}));               // death core on axes 1, 2
  m = direct_sum(m, box({0, 1, 1}, {2, 1, 1}));               // birth core on axes 1, 2
  m = direct_sum(m, box({1, 0, 0}, {1, 1, 1}));               // band
  DecomposeOptions opt;
  opt.method = Method::constructive;
  const auto r = decompose_blocks(scramble(m, 12), opt);
  REQUIRE(r.status == DecomposeStatus::decomposed);
  CHECK(r.decomposition.trace == std::vector<std::string>{"death", "death-core", "birth-core", "generic"});
  CHECK(r.decomposition.blocks.size() == 4);

  const GridShape c({2, 2, 2});
  GridModule cm = block_module(c, *make_block(c, {1, 1, 1}, {1, 1, 1}), f);
  cm = direct_sum(cm, block_module(c, *make_block(c, {0, 0, 1}, {1, 1, 1}), f));
  const auto rc = decompose_blocks(scramble(cm, 5), opt);
  REQUIRE(rc.status == DecomposeStatus::decomposed);
  CHECK(rc.decomposition.trace == std::vector<std::string>{"birth", "claw"});
}
