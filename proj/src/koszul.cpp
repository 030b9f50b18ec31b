#include "blockdec/koszul.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace blockdec {

namespace {

Point mask_point(unsigned mask, int k) {
  Point p(std::max(k, 1), 0);
  for (int b = 0; b < k; ++b) p[b] = (mask >> b) & 1u;
  return p;
}

KoszulComplex build(const GridModule& cm, int k, unsigned fixed, const std::vector<int>& axes) {
  const PrimeField& f = cm.field();
  if (axes.empty()) {
    KoszulComplex kc;
    kc.k = 0;
    kc.chain_dims = {cm.dim(mask_point(fixed, k))};
    kc.terms = {{fixed}};
    kc.diffs = {Mat()};
    return kc;
  }
  const int a = axes.back();
  const std::vector<int> rest(axes.begin(), axes.end() - 1);
  const KoszulComplex F = build(cm, k, fixed, rest);
  const KoszulComplex R = build(cm, k, fixed | (1u << a), rest);
  const int kk = F.k + 1;

  KoszulComplex kc;
  kc.k = kk;
  kc.terms.resize(kk + 1);
  kc.chain_dims.assign(kk + 1, 0);
  for (int j = 0; j <= kk; ++j) {
    if (j >= 1) {
      kc.terms[j] = F.terms[j - 1];
      kc.chain_dims[j] += F.chain_dims[j - 1];
    }
    if (j <= F.k) {
      kc.terms[j].insert(kc.terms[j].end(), R.terms[j].begin(), R.terms[j].end());
      kc.chain_dims[j] += R.chain_dims[j];
    }
  }
  // Phi in degree j: block diagonal of the steps v -> v + a over F's terms.
  auto phi = [&](int j) {
    Mat out = Mat::Zero(R.chain_dims[j], F.chain_dims[j]);
    Eigen::Index r = 0, c = 0;
    for (unsigned v : F.terms[j]) {
      const Mat& s = cm.step(mask_point(v, k), a);
      out.block(r, c, s.rows(), s.cols()) = s;
      r += s.rows();
      c += s.cols();
    }
    return out;
  };
  kc.diffs.assign(kk + 1, Mat());
  for (int j = 1; j <= kk; ++j) {
    Mat d = Mat::Zero(kc.chain_dims[j - 1], kc.chain_dims[j]);
    const Eigen::Index f_rows = j >= 2 ? F.chain_dims[j - 2] : 0;  // F-part of degree j-1
    const Eigen::Index f_cols = F.chain_dims[j - 1];               // F-part of degree j
    if (j >= 2) d.block(0, 0, f_rows, f_cols) = F.diffs[j - 1];
    const Mat ph = phi(j - 1);
    d.block(f_rows, 0, ph.rows(), ph.cols()) = ph;
    if (j <= F.k) {
      const Mat& dr = R.diffs[j];
      d.block(f_rows, f_cols, dr.rows(), dr.cols()) = f.reduce(Mat(-dr));
    }
    kc.diffs[j] = std::move(d);
  }
  return kc;
}

template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

void require_valid(const GridModule& m) {
  const auto v = validate(m);
  if (!v.empty())
    throw std::invalid_argument("module does not commute at " + to_string(v.front().point) + " on axes " +
                                std::to_string(v.front().axis_i) + "," + std::to_string(v.front().axis_j));
}

}  // namespace

KoszulComplex koszul_complex_of_cube_module(const GridModule& cube_module, const std::vector<int>& axis_order) {
  const GridShape& s = cube_module.shape();
  int k = s.ndim();
  if (k == 1 && s.size(0) == 1) k = 0;
  for (int i = 0; i < k; ++i)
    if (s.size(i) != 2) throw std::invalid_argument("koszul complex needs a 2 x ... x 2 module");
  std::vector<int> order = axis_order;
  if (order.empty()) {
    order.resize(k);
    std::iota(order.begin(), order.end(), 0);
  }
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < static_cast<int>(sorted.size()); ++i)
    if (sorted[i] != i || static_cast<int>(sorted.size()) != k)
      throw std::invalid_argument("axis order must be a permutation of the cube axes");
  return build(cube_module, k, 0u, order);
}

KoszulComplex koszul_complex(const GridModule& m, const Cube& c, const std::vector<int>& axis_order) {
  return koszul_complex_of_cube_module(restrict_cube(m, c), axis_order);
}

std::vector<int> homology_dims(const PrimeField& f, const KoszulComplex& kc) {
  std::vector<Eigen::Index> ranks(kc.k + 2, 0);  // ranks[j] = rank d_j
  for (int j = 1; j <= kc.k; ++j) ranks[j] = rank(f, kc.diffs[j]);
  std::vector<int> h(kc.k + 1);
  for (int j = 0; j <= kc.k; ++j)
    h[j] = kc.chain_dims[j] - static_cast<int>(ranks[j]) - static_cast<int>(ranks[j + 1]);
  return h;
}

bool is_complex(const PrimeField& f, const KoszulComplex& kc) {
  for (int j = 2; j <= kc.k; ++j)
    if (!is_zero(f.mul(kc.diffs[j - 1], kc.diffs[j]))) return false;
  return true;
}

ExactnessFlags exactness_flags(const GridModule& m, const Cube& c) {
  const int k = c.dim();
  if (k < 2) throw std::invalid_argument("exactness flags need a cube of dimension at least 2");
  const auto h = homology_dims(m.field(), koszul_complex(m, c));
  ExactnessFlags fl;
  fl.middle = std::all_of(h.begin() + 1, h.end() - 1, [](int x) { return x == 0; });
  fl.left = fl.middle && h[k] == 0;
  fl.right = fl.middle && h[0] == 0;
  return fl;
}

std::optional<Witness> local_block_witness(const GridModule& m, const CheckOptions& opt) {
  require_valid(m);
  const PrimeField& f = m.field();
  for (int k = 2; k <= m.shape().ndim(); ++k) {
    const auto cubes = enumerate_cubes(m.shape(), k);
    auto check = [&](const Cube& c) -> std::optional<Witness> {
      const auto h = homology_dims(f, koszul_complex(m, c));
      for (int j = 1; j < k; ++j) {
        if (opt.outer_degrees_only && j != 1 && j != k - 1) continue;
        if (h[j] != 0) return Witness{c, j, h[j]};
      }
      return std::nullopt;
    };
    if (opt.jobs <= 1) {
      for (const Cube& c : cubes)
        if (auto w = check(c)) return w;
      continue;
    }
    // Chunked so that an early failure does not pay for the whole scan;
    // the first witness in cube order wins regardless of completion order.
    const std::size_t chunk = static_cast<std::size_t>(opt.jobs) * 16;
    for (std::size_t start = 0; start < cubes.size(); start += chunk) {
      const std::size_t count = std::min(chunk, cubes.size() - start);
      std::vector<std::optional<Witness>> res(count);
      parallel_for(count, opt.jobs, [&](std::size_t i) { res[i] = check(cubes[start + i]); });
      for (auto& w : res)
        if (w) return w;
    }
  }
  return std::nullopt;
}

std::vector<ExactnessLevel> exactness_profile(const GridModule& m, const CheckOptions& opt) {
  require_valid(m);
  std::vector<ExactnessLevel> out;
  for (int k = 2; k <= m.shape().ndim(); ++k) {
    const auto cubes = enumerate_cubes(m.shape(), k);
    std::vector<ExactnessFlags> flags(cubes.size());
    parallel_for(cubes.size(), opt.jobs, [&](std::size_t i) { flags[i] = exactness_flags(m, cubes[i]); });
    ExactnessLevel lvl;
    lvl.k = k;
    for (const auto& fl : flags) {
      lvl.all_middle = lvl.all_middle && fl.middle;
      lvl.all_left = lvl.all_left && fl.left;
      lvl.all_right = lvl.all_right && fl.right;
    }
    out.push_back(lvl);
  }
  return out;
}

}  // namespace blockdec
