#include "blockdec/decomp.hpp"

#include "blockdec/poly.hpp"

#include <algorithm>

namespace blockdec {

std::vector<Endo> end_basis(const GridModule& m) { return hom_basis(m, m); }

std::vector<int> Submodule::dims() const {
  std::vector<int> out(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) out[i] = static_cast<int>(basis[i].cols());
  return out;
}

bool Submodule::is_zero() const {
  return std::all_of(basis.begin(), basis.end(), [](const Mat& b) { return b.cols() == 0; });
}

bool is_submodule(const GridModule& m, const Submodule& u) {
  const GridShape& s = m.shape();
  const PrimeField& f = m.field();
  if (u.basis.size() != s.num_points()) return false;
  for (std::size_t idx = 0; idx < s.num_points(); ++idx) {
    if (u.basis[idx].rows() != m.dim_at(idx) || rank(f, u.basis[idx]) != u.basis[idx].cols()) return false;
    const Point p = s.point(idx);
    for (int i = 0; i < s.ndim(); ++i) {
      if (!s.has_step(p, i)) continue;
      const Mat& target = u.basis[s.index(step_up(p, i))];
      if (!solve(f, target, f.mul(m.step_at(idx, i), u.basis[idx]))) return false;
    }
  }
  return true;
}

GridModule submodule_module(const GridModule& m, const Submodule& u) {
  const GridShape& s = m.shape();
  const PrimeField& f = m.field();
  GridModule out(s, f, u.dims());
  for (std::size_t idx = 0; idx < s.num_points(); ++idx) {
    const Point p = s.point(idx);
    for (int i = 0; i < s.ndim(); ++i) {
      if (!s.has_step(p, i)) continue;
      const Mat& target = u.basis[s.index(step_up(p, i))];
      auto x = solve(f, target, f.mul(m.step_at(idx, i), u.basis[idx]));
      if (!x) throw std::invalid_argument("submodule is not closed under the step at " + to_string(p));
      out.set_step(p, i, *x);
    }
  }
  return out;
}

Submodule intersect(const GridModule& m, const Submodule& a, const Submodule& b) {
  Submodule out;
  out.basis.resize(a.basis.size());
  for (std::size_t idx = 0; idx < a.basis.size(); ++idx)
    out.basis[idx] = intersect(m.field(), a.basis[idx], b.basis[idx]);
  return out;
}

namespace {

Point top_along(const GridShape& s, Point p, int axis) {
  p[axis] = s.size(axis) - 1;
  return p;
}

Point bottom_along(Point p, int axis) {
  p[axis] = 0;
  return p;
}

}  // namespace

Submodule kernel_submodule(const GridModule& m, int axis) {
  const GridShape& s = m.shape();
  if (axis < 0 || axis >= s.ndim()) throw std::invalid_argument("kernel_submodule: axis out of range");
  Submodule out;
  out.basis.resize(s.num_points());
  for (std::size_t idx = 0; idx < s.num_points(); ++idx) {
    const Point p = s.point(idx);
    out.basis[idx] = kernel_basis(m.field(), structure_map(m, p, top_along(s, p, axis)));
  }
  return out;
}

Submodule image_submodule(const GridModule& m, int axis) {
  const GridShape& s = m.shape();
  if (axis < 0 || axis >= s.ndim()) throw std::invalid_argument("image_submodule: axis out of range");
  Submodule out;
  out.basis.resize(s.num_points());
  for (std::size_t idx = 0; idx < s.num_points(); ++idx) {
    const Point p = s.point(idx);
    out.basis[idx] = column_space(m.field(), structure_map(m, bottom_along(p, axis), p));
  }
  return out;
}

std::optional<FittingParts> fitting_split(const GridModule& m, const Endo& phi) {
  if (!is_natural(m, m, phi)) throw std::invalid_argument("fitting_split: endomorphism is not natural");
  const PrimeField& f = m.field();
  const auto n = static_cast<std::uint64_t>(m.total_dim());
  FittingParts parts;
  parts.kernel.basis.resize(phi.size());
  parts.image.basis.resize(phi.size());
  for (std::size_t idx = 0; idx < phi.size(); ++idx) {
    const Mat psi = f.pow(phi[idx], n);
    parts.kernel.basis[idx] = kernel_basis(f, psi);
    parts.image.basis[idx] = column_space(f, psi);
  }
  if (parts.kernel.is_zero() || parts.image.is_zero()) return std::nullopt;
  return parts;
}

namespace {

void split_recursive(const GridModule& m, int trials, std::mt19937_64& rng, std::vector<Summand>& out) {
  if (m.total_dim() == 0) return;
  const PrimeField& f = m.field();
  const auto basis = end_basis(m);
  if (basis.size() <= 1) {
    out.push_back({m, true});
    return;
  }
  std::vector<std::size_t> occupied;
  for (std::size_t idx = 0; idx < m.shape().num_points(); ++idx)
    if (m.dim_at(idx) > 0) occupied.push_back(idx);

  for (int t = 0; t < trials; ++t) {
    Endo phi = random_combination(f, basis, rng);
    const std::size_t at = occupied[rng() % occupied.size()];
    const auto eig = poly::eigenvalues(f, phi[at], rng);
    if (eig.empty()) continue;  // no eigenvalue in the prime field this time
    const Scalar lambda = eig[rng() % eig.size()];
    for (std::size_t idx = 0; idx < phi.size(); ++idx)
      phi[idx] = f.sub(phi[idx], f.scale(identity(phi[idx].rows()), lambda));
    auto parts = fitting_split(m, phi);
    if (!parts) continue;
    split_recursive(submodule_module(m, parts->kernel), trials, rng, out);
    split_recursive(submodule_module(m, parts->image), trials, rng, out);
    return;
  }
  out.push_back({m, false});
}

}  // namespace

std::vector<Summand> decompose_indecomposables(const GridModule& m, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Summand> out;
  split_recursive(m, trials, rng, out);
  return out;
}

BlockSplit split_death_core(const GridModule& m, const std::vector<int>& axes) {
  const GridShape& s = m.shape();
  const PrimeField& f = m.field();
  const int n = s.ndim();
  std::vector<char> in_s(n, 0);
  for (int a : axes) {
    if (a < 0 || a >= n) throw std::invalid_argument("split_death_core: axis out of range");
    in_s[a] = 1;
  }
  BlockSplit res;

  // Lexicographically greatest point of the slice {q : q_i = 0 off S} where
  // some element dies along every axis of S.
  std::optional<Point> top;
  Mat element;
  for (std::size_t idx = s.num_points(); idx-- > 0;) {
    const Point q = s.point(idx);
    bool in_slice = true;
    for (int i = 0; i < n; ++i) in_slice = in_slice && (in_s[i] || q[i] == 0);
    if (!in_slice || m.dim_at(idx) == 0) continue;
    Mat stacked(0, m.dim_at(idx));
    for (int a : axes) stacked = vcat(stacked, structure_map(m, q, top_along(s, q, a)));
    const Mat k = kernel_basis(f, stacked);
    if (k.cols() == 0) continue;
    top = q;
    element = k.col(0);
    break;
  }
  if (!top) return res;
  const Point& p = *top;

  // Lift to the global minimum, vanishing one step beyond p along each axis of S.
  const Point origin = s.min();
  Mat system = structure_map(m, origin, p);
  Mat rhs = element;
  Point lo = origin, hi = s.max();
  for (int a : axes) {
    hi[a] = p[a];
    Point beyond = origin;
    beyond[a] = p[a] + 1;
    const Mat g = structure_map(m, origin, beyond);
    system = vcat(system, g);
    rhs = vcat(rhs, Mat::Zero(g.rows(), 1));
  }
  auto lift = solve(f, system, rhs);
  res.witness = p;
  if (!lift) {
    res.status = SplitStatus::not_splittable;
    res.detail = "element at " + to_string(p) + " has no lift to the minimum";
    return res;
  }
  auto block = make_block(s, lo, hi);
  if (!block) {
    res.status = SplitStatus::not_splittable;
    res.detail = "box below " + to_string(p) + " is not a block";
    return res;
  }
  for (std::size_t idx = 0; idx < s.num_points(); ++idx) {
    const Point q = s.point(idx);
    const bool inside = leq(q, hi);
    const bool reached = !is_zero(f.mul(structure_map(m, origin, q), *lift));
    if (inside != reached) {
      res.status = SplitStatus::not_splittable;
      res.witness = q;
      res.detail = "submodule generated by the lift is not supported on the block at " + to_string(q);
      return res;
    }
  }

  // A retraction r : M -> k_B with r(lift) = 1 makes k_B a summand with complement ker r.
  const GridModule kb = interval_module(s, block->points, f);
  const auto homs = hom_basis(m, kb);
  const std::size_t o = s.index(origin);
  std::vector<Scalar> values;
  for (const auto& h : homs) values.push_back(f.mul(h[o], *lift)(0, 0));
  const auto hit = std::find_if(values.begin(), values.end(), [](Scalar v) { return v != 0; });
  if (hit == values.end()) {
    res.status = SplitStatus::not_splittable;
    res.detail = "block generated at " + to_string(p) + " is not a direct summand";
    return res;
  }
  const Morphism& r = homs[hit - values.begin()];
  const Scalar scale = f.inv(*hit);
  Submodule complement;
  complement.basis.resize(s.num_points());
  for (std::size_t idx = 0; idx < s.num_points(); ++idx)
    complement.basis[idx] = kernel_basis(f, f.scale(r[idx], scale));
  res.status = SplitStatus::split;
  res.block = std::move(block);
  res.complement = submodule_module(m, complement);
  return res;
}

BlockSplit split_birth_core(const GridModule& m, const std::vector<int>& axes) {
  BlockSplit res = split_death_core(dual(m), axes);
  const GridShape& s = m.shape();
  if (res.block) res.block = dual_block(s, *res.block);
  if (!res.witness.empty()) res.witness = s.reversed(res.witness);
  if (res.status == SplitStatus::split) res.complement = dual(res.complement);
  return res;
}

namespace {

std::vector<int> all_axes(const GridShape& s) {
  std::vector<int> a(s.ndim());
  for (int i = 0; i < s.ndim(); ++i) a[i] = i;
  return a;
}

}  // namespace

BlockSplit split_death_block(const GridModule& m) { return split_death_core(m, all_axes(m.shape())); }
BlockSplit split_birth_block(const GridModule& m) { return split_birth_core(m, all_axes(m.shape())); }

std::string to_string(Method m) {
  switch (m) {
    case Method::generic: return "generic";
    case Method::constructive: return "constructive";
    case Method::automatic: return "auto";
  }
  return "?";
}

std::optional<Method> parse_method(const std::string& s) {
  if (s == "generic") return Method::generic;
  if (s == "constructive") return Method::constructive;
  if (s == "auto") return Method::automatic;
  return std::nullopt;
}

std::vector<BlockCount> block_multiset(std::vector<Block> blocks) {
  std::sort(blocks.begin(), blocks.end());
  std::vector<BlockCount> out;
  for (auto& b : blocks) {
    if (!out.empty() && out.back().block == b)
      ++out.back().multiplicity;
    else
      out.push_back({std::move(b), 1});
  }
  return out;
}

GridModule assemble(const GridShape& shape, const std::vector<BlockCount>& blocks, const PrimeField& field) {
  GridModule out(shape, field);
  for (const auto& bc : blocks) {
    const GridModule bm = block_module(shape, bc.block, field);
    for (int i = 0; i < bc.multiplicity; ++i) out = direct_sum(out, bm);
  }
  return out;
}

Decomposition generic_decomposition(const GridModule& m, int trials, std::uint64_t seed) {
  Decomposition d;
  d.method = Method::generic;
  d.trace = {"generic"};
  std::vector<Block> found;
  for (auto& leaf : decompose_indecomposables(m, trials, seed)) {
    if (!leaf.certified) {
      d.unsplit.push_back(std::move(leaf.module));
    } else if (auto b = recognize_block_summand(leaf.module)) {
      found.push_back(std::move(*b));
    } else {
      d.non_block.push_back(std::move(leaf.module));
    }
  }
  d.blocks = block_multiset(std::move(found));
  return d;
}

namespace {

bool is_cube_shape(const GridShape& s) {
  return s.ndim() >= 2 && std::all_of(s.sizes().begin(), s.sizes().end(), [](int x) { return x == 2; });
}

std::uint64_t retry_seed(std::uint64_t seed, int attempt) {
  return seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(attempt);
}

// Generic engine on a criterion-positive module: every certified leaf must be a block.
Decomposition generic_with_retries(const GridModule& m, const DecomposeOptions& opt) {
  Decomposition d;
  for (int attempt = 0; attempt <= opt.retries; ++attempt) {
    d = generic_decomposition(m, opt.trials, retry_seed(opt.seed, attempt));
    if (!d.non_block.empty())
      throw InternalInconsistency("indecomposable non-block summand of a locally block-decomposable module");
    if (d.unsplit.empty()) break;
  }
  return d;
}

}  // namespace

int minimal_exact_level(const GridModule& m, int jobs) {
  const int n = m.shape().ndim();
  if (n < 2) return 2;
  CheckOptions co;
  co.jobs = jobs;
  for (const auto& lvl : exactness_profile(m, co))
    if (lvl.exact()) return lvl.k;
  return n + 1;
}

std::optional<Decomposition> decompose_2exact_cube(const GridModule& m, std::uint64_t seed) {
  const GridShape& s = m.shape();
  if (!is_cube_shape(s)) return std::nullopt;
  if (!exactness_profile(m).front().exact()) return std::nullopt;
  const PrimeField& f = m.field();
  const GridModule on_claw = extend_by_zero(restrict_claw(m, s.min()));

  std::vector<Summand> leaves;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    leaves = decompose_indecomposables(on_claw, 24, retry_seed(seed, attempt));
    if (std::all_of(leaves.begin(), leaves.end(), [](const Summand& l) { return l.certified; })) break;
  }
  Decomposition d;
  d.method = Method::constructive;
  d.trace = {"claw"};
  std::vector<Block> found;
  for (const auto& leaf : leaves) {
    if (!leaf.certified) {
      d.unsplit.push_back(leaf.module);
      continue;
    }
    std::vector<Point> support;
    for (std::size_t idx = 0; idx < s.num_points(); ++idx) {
      if (leaf.module.dim_at(idx) > 1) throw InternalInconsistency("claw summand of a 2-exact module is not an interval");
      if (leaf.module.dim_at(idx) == 1) support.push_back(s.point(idx));
    }
    try {
      check_interval(s, support);
    } catch (const NotAnInterval&) {
      throw InternalInconsistency("claw summand of a 2-exact module is not an interval");
    }
    const GridModule ext = kan_extend_claw(restrict_claw(leaf.module, s.min()), s);
    auto b = recognize_block_summand(ext);
    if (!b) throw InternalInconsistency("Kan extension of a claw interval is not a block module");
    found.push_back(std::move(*b));
  }
  d.blocks = block_multiset(std::move(found));
  if (d.unsplit.empty() && !is_isomorphic(assemble(s, d.blocks, f), m, 32, seed))
    throw InternalInconsistency("Kan-extended blocks do not reassemble the module");
  return d;
}

namespace {

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> axes;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) axes.push_back(i);
    if (static_cast<int>(axes.size()) == k) out.push_back(std::move(axes));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Decomposition constructive(const GridModule& m, const DecomposeOptions& opt) {
  const GridShape& s = m.shape();
  const int n = s.ndim();
  std::vector<Block> found;
  std::vector<std::string> trace;
  GridModule rest = m;

  // While the module is only l-exact for some l >= 3, there is a death or
  // birth core on l - 1 axes; with l - 1 = n it is a death/birth block.
  while (rest.total_dim() > 0) {
    const int l = minimal_exact_level(rest, opt.jobs);
    if (l <= 2) break;
    bool progressed = false;
    for (const auto& axes : subsets_of_size(n, l - 1)) {
      for (const bool death : {true, false}) {
        BlockSplit sp = death ? split_death_core(rest, axes) : split_birth_core(rest, axes);
        if (sp.status == SplitStatus::not_splittable) throw InternalInconsistency(sp.detail);
        if (sp.status != SplitStatus::split) continue;
        found.push_back(std::move(*sp.block));
        rest = std::move(sp.complement);
        trace.push_back(std::string(death ? "death" : "birth") + (l - 1 == n ? "" : "-core"));
        progressed = true;
        break;
      }
      if (progressed) break;
    }
    if (!progressed)
      throw InternalInconsistency("module is not " + std::to_string(l - 1) + "-exact but no core block was found");
  }

  Decomposition d;
  if (rest.total_dim() > 0) {
    std::optional<Decomposition> tail;
    if (is_cube_shape(s)) tail = decompose_2exact_cube(rest, opt.seed);
    if (!tail) tail = generic_with_retries(rest, opt);
    d = std::move(*tail);
    for (const auto& bc : d.blocks)
      for (int i = 0; i < bc.multiplicity; ++i) found.push_back(bc.block);
    trace.insert(trace.end(), d.trace.begin(), d.trace.end());
  }
  d.trace = std::move(trace);
  d.method = Method::constructive;
  d.blocks = block_multiset(std::move(found));
  return d;
}

}  // namespace

DecomposeResult decompose_blocks(const GridModule& m, const DecomposeOptions& opt) {
  DecomposeResult res;
  CheckOptions co;
  co.jobs = opt.jobs;
  if (auto w = local_block_witness(m, co)) {
    res.status = DecomposeStatus::failure;
    res.witness = std::move(w);
    return res;
  }
  if (opt.method == Method::generic) {
    res.decomposition = generic_with_retries(m, opt);
  } else {
    res.decomposition = constructive(m, opt);
    res.decomposition.method = opt.method == Method::automatic ? Method::automatic : Method::constructive;
  }
  if (!res.decomposition.unsplit.empty()) res.status = DecomposeStatus::incomplete;
  return res;
}

}  // namespace blockdec
