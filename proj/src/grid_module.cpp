#include "blockdec/grid_module.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace blockdec {

GridModule::GridModule(GridShape shape, PrimeField field, std::vector<int> dims)
    : shape_(std::move(shape)), field_(field), dims_(std::move(dims)) {
  if (dims_.size() != shape_.num_points()) throw std::invalid_argument("dimension table has wrong length");
  for (int d : dims_)
    if (d < 0) throw std::invalid_argument("negative dimension");
  const int n = shape_.ndim();
  steps_.resize(shape_.num_points() * static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < shape_.num_points(); ++idx) {
    const Point p = shape_.point(idx);
    for (int i = 0; i < n; ++i) {
      if (!shape_.has_step(p, i)) continue;
      steps_[idx * n + i] = Mat::Zero(dims_[shape_.index(step_up(p, i))], dims_[idx]);
    }
  }
}

GridModule::GridModule(GridShape shape, PrimeField field)
    : GridModule(shape, field, std::vector<int>(shape.num_points(), 0)) {}

int GridModule::total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), 0); }

const Mat& GridModule::step(const Point& p, int axis) const { return step_at(shape_.index(p), axis); }

const Mat& GridModule::step_at(std::size_t index, int axis) const {
  return steps_[index * static_cast<std::size_t>(shape_.ndim()) + static_cast<std::size_t>(axis)];
}

void GridModule::set_step(const Point& p, int axis, const Mat& m) {
  if (!shape_.contains(p) || axis < 0 || axis >= shape_.ndim() || !shape_.has_step(p, axis))
    throw std::invalid_argument("step " + to_string(p) + " along axis " + std::to_string(axis) +
                                " leaves the grid");
  const int rows = dim(step_up(p, axis)), cols = dim(p);
  if (m.rows() != rows || m.cols() != cols)
    throw std::invalid_argument("step " + to_string(p) + " along axis " + std::to_string(axis) + " must be " +
                                std::to_string(rows) + "x" + std::to_string(cols));
  steps_[shape_.index(p) * shape_.ndim() + axis] = field_.reduce(m);
}

bool GridModule::operator==(const GridModule& other) const {
  return shape_ == other.shape_ && field_ == other.field_ && dims_ == other.dims_ && steps_ == other.steps_;
}

Mat structure_map(const GridModule& m, const Point& p, const Point& q) {
  if (!leq(p, q)) throw std::invalid_argument("structure_map: " + to_string(p) + " is not below " + to_string(q));
  const PrimeField& f = m.field();
  Point cur = p;
  Mat acc = identity(m.dim(p));
  for (int i = 0; i < m.shape().ndim(); ++i) {
    while (cur[i] < q[i]) {
      acc = f.mul(m.step(cur, i), acc);
      ++cur[i];
    }
  }
  return acc;
}

std::vector<Violation> validate(const GridModule& m) {
  std::vector<Violation> out;
  const GridShape& s = m.shape();
  const PrimeField& f = m.field();
  for (std::size_t idx = 0; idx < s.num_points(); ++idx) {
    const Point p = s.point(idx);
    for (int i = 0; i < s.ndim(); ++i) {
      if (!s.has_step(p, i)) continue;
      for (int j = i + 1; j < s.ndim(); ++j) {
        if (!s.has_step(p, j)) continue;
        Mat via_i = f.mul(m.step(step_up(p, i), j), m.step(p, i));
        Mat via_j = f.mul(m.step(step_up(p, j), i), m.step(p, j));
        if (via_i != via_j) out.push_back({p, i, j, std::move(via_i), std::move(via_j)});
      }
    }
  }
  return out;
}

void check_interval(const GridShape& shape, const std::vector<Point>& points) {
  if (points.empty()) throw NotAnInterval("interval must be non-empty", {});
  const std::size_t total = shape.num_points();
  const int n = shape.ndim();
  std::vector<char> in(total, 0), up(total, 0), down(total, 0);
  for (const Point& p : points) {
    if (!shape.contains(p)) throw NotAnInterval("point " + to_string(p) + " is outside the grid", {p});
    in[shape.index(p)] = 1;
  }
  // Index order is lexicographic, so predecessors p - e_i come first.
  for (std::size_t idx = 0; idx < total; ++idx) {
    const Point p = shape.point(idx);
    up[idx] = in[idx];
    for (int i = 0; i < n && !up[idx]; ++i)
      if (p[i] > 0) {
        Point q = p;
        --q[i];
        up[idx] = up[shape.index(q)];
      }
  }
  for (std::size_t r = total; r-- > 0;) {
    const Point p = shape.point(r);
    down[r] = in[r];
    for (int i = 0; i < n && !down[r]; ++i)
      if (shape.has_step(p, i)) down[r] = down[shape.index(step_up(p, i))];
  }
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (in[idx] || !up[idx] || !down[idx]) continue;
    const Point y = shape.point(idx);
    Point x, z;
    for (const Point& p : points) {
      if (x.empty() && leq(p, y)) x = p;
      if (z.empty() && leq(y, p)) z = p;
    }
    throw NotAnInterval("not convex: " + to_string(x) + " <= " + to_string(y) + " <= " + to_string(z), {x, y, z});
  }
  std::vector<char> seen(total, 0);
  std::deque<std::size_t> queue{shape.index(points.front())};
  seen[queue.front()] = 1;
  while (!queue.empty()) {
    const Point p = shape.point(queue.front());
    queue.pop_front();
    for (int i = 0; i < n; ++i)
      for (int delta : {-1, 1}) {
        Point q = p;
        q[i] += delta;
        if (!shape.contains(q)) continue;
        const std::size_t qi = shape.index(q);
        if (in[qi] && !seen[qi]) {
          seen[qi] = 1;
          queue.push_back(qi);
        }
      }
  }
  for (const Point& p : points)
    if (!seen[shape.index(p)])
      throw NotAnInterval("not connected: " + to_string(points.front()) + " and " + to_string(p),
                          {points.front(), p});
}

GridModule interval_module(const GridShape& shape, const std::vector<Point>& points, const PrimeField& field) {
  check_interval(shape, points);
  std::vector<int> dims(shape.num_points(), 0);
  for (const Point& p : points) dims[shape.index(p)] = 1;
  GridModule m(shape, field, dims);
  const Mat one = identity(1);
  for (const Point& p : points)
    for (int i = 0; i < shape.ndim(); ++i)
      if (shape.has_step(p, i) && dims[shape.index(step_up(p, i))] == 1) m.set_step(p, i, one);
  return m;
}

GridModule direct_sum(const GridModule& a, const GridModule& b) {
  if (!(a.shape() == b.shape())) throw std::invalid_argument("direct_sum: shapes differ");
  if (!(a.field() == b.field())) throw std::invalid_argument("direct_sum: fields differ");
  const GridShape& s = a.shape();
  std::vector<int> dims(s.num_points());
  for (std::size_t i = 0; i < dims.size(); ++i) dims[i] = a.dim_at(i) + b.dim_at(i);
  GridModule out(s, a.field(), dims);
  for (std::size_t idx = 0; idx < s.num_points(); ++idx) {
    const Point p = s.point(idx);
    for (int i = 0; i < s.ndim(); ++i)
      if (s.has_step(p, i)) out.set_step(p, i, block_diag(a.step_at(idx, i), b.step_at(idx, i)));
  }
  return out;
}

GridModule dual(const GridModule& m) {
  const GridShape& s = m.shape();
  std::vector<int> dims(s.num_points());
  for (std::size_t idx = 0; idx < dims.size(); ++idx) dims[idx] = m.dim(s.reversed(s.point(idx)));
  GridModule out(s, m.field(), dims);
  for (std::size_t idx = 0; idx < s.num_points(); ++idx) {
    const Point q = s.point(idx);
    for (int i = 0; i < s.ndim(); ++i) {
      if (!s.has_step(q, i)) continue;
      // D(q -> q + e_i) = M(r(q + e_i) -> r(q))^T
      out.set_step(q, i, Mat(m.step(s.reversed(step_up(q, i)), i).transpose()));
    }
  }
  return out;
}

GridModule restrict_cube(const GridModule& m, const Cube& c) {
  if (!c.inside(m.shape())) throw std::invalid_argument("cube " + to_string(c) + " lies outside the grid");
  const auto axes = c.active();
  const int k = static_cast<int>(axes.size());
  GridShape cs(k == 0 ? std::vector<int>{1} : std::vector<int>(k, 2));
  std::vector<int> dims(cs.num_points());
  auto local = [&](unsigned mask) {
    Point q(std::max(k, 1), 0);
    for (int b = 0; b < k; ++b) q[b] = (mask >> b) & 1u;
    return q;
  };
  for (unsigned mask = 0; mask < (1u << k); ++mask) dims[cs.index(local(mask))] = m.dim(c.vertex(mask));
  GridModule out(cs, m.field(), dims);
  for (unsigned mask = 0; mask < (1u << k); ++mask)
    for (int b = 0; b < k; ++b) {
      if (mask & (1u << b)) continue;
      out.set_step(local(mask), b, structure_map(m, c.vertex(mask), c.vertex(mask | (1u << b))));
    }
  return out;
}

ClawModule restrict_claw(const GridModule& m, const Point& center) {
  const GridShape& s = m.shape();
  if (!s.contains(center)) throw std::invalid_argument("claw center " + to_string(center) + " is outside the grid");
  ClawModule cm{s, m.field(), center, m.dim(center), {}, {}};
  cm.arm_dims.resize(s.ndim());
  cm.arm_maps.resize(s.ndim());
  for (int i = 0; i < s.ndim(); ++i) {
    Point cur = center;
    while (s.has_step(cur, i)) {
      cm.arm_maps[i].push_back(m.step(cur, i));
      ++cur[i];
      cm.arm_dims[i].push_back(m.dim(cur));
    }
  }
  return cm;
}

GridModule extend_by_zero(const ClawModule& cm) {
  const GridShape& s = cm.shape;
  std::vector<int> dims(s.num_points(), 0);
  dims[s.index(cm.center)] = cm.center_dim;
  for (int i = 0; i < s.ndim(); ++i)
    for (std::size_t j = 0; j < cm.arm_dims[i].size(); ++j) {
      Point q = cm.center;
      q[i] += static_cast<int>(j) + 1;
      dims[s.index(q)] = cm.arm_dims[i][j];
    }
  GridModule out(s, cm.field, dims);
  for (int i = 0; i < s.ndim(); ++i)
    for (std::size_t j = 0; j < cm.arm_maps[i].size(); ++j) {
      Point q = cm.center;
      q[i] += static_cast<int>(j);
      out.set_step(q, i, cm.arm_maps[i][j]);
    }
  return out;
}

namespace {

// Composite along arm `axis` from the center to arm coordinate t (t >= 1).
Mat arm_composite(const ClawModule& cm, int axis, int t) {
  Mat acc = identity(cm.center_dim);
  for (int j = 0; j < t; ++j) acc = cm.field.mul(cm.arm_maps[axis][j], acc);
  return acc;
}

struct ColimitChart {
  std::vector<int> arms;                 // axes with p_i > 0, ascending
  std::vector<Eigen::Index> arm_offset;  // offset of each arm block inside V(p)
  Eigen::Index center_offset = 0;
  Eigen::Index ambient = 0;
  Mat section;     // columns: chosen basis of the quotient, in V(p)
  Mat projection;  // V(p) -> quotient coordinates
};

ColimitChart colimit_at(const ClawModule& cm, const Point& p) {
  const PrimeField& f = cm.field;
  ColimitChart ch;
  for (int i = 0; i < cm.shape.ndim(); ++i)
    if (p[i] > 0) {
      ch.arms.push_back(i);
      ch.arm_offset.push_back(ch.ambient);
      ch.ambient += cm.arm_dims[i][p[i] - 1];
    }
  ch.center_offset = ch.ambient;
  ch.ambient += cm.center_dim;
  // Relations x ~ f_i(x): column (-f_i x) in arm block i, x in the center block.
  Mat rel = Mat::Zero(ch.ambient, static_cast<Eigen::Index>(ch.arms.size()) * cm.center_dim);
  for (std::size_t a = 0; a < ch.arms.size(); ++a) {
    const int i = ch.arms[a];
    const Mat fi = arm_composite(cm, i, p[i]);
    const Eigen::Index col = static_cast<Eigen::Index>(a) * cm.center_dim;
    rel.block(ch.arm_offset[a], col, fi.rows(), cm.center_dim) = f.reduce(Mat(-fi));
    rel.block(ch.center_offset, col, cm.center_dim, cm.center_dim) = identity(cm.center_dim);
  }
  const Mat rel_basis = column_space(f, rel);
  ch.section = complement_basis(f, rel_basis, ch.ambient);
  auto inv = inverse(f, hcat(rel_basis, ch.section));
  ch.projection = inv->bottomRows(ch.section.cols());
  return ch;
}

}  // namespace

GridModule kan_extend_claw(const ClawModule& cm, const GridShape& shape) {
  if (!(cm.shape == shape)) throw std::invalid_argument("kan_extend_claw: claw lives on a different grid");
  if (cm.center != shape.min()) throw std::invalid_argument("kan_extend_claw: claw must be centred at the global minimum");
  const PrimeField& f = cm.field;
  std::vector<ColimitChart> charts(shape.num_points());
  std::vector<int> dims(shape.num_points());
  for (std::size_t idx = 0; idx < shape.num_points(); ++idx) {
    charts[idx] = colimit_at(cm, shape.point(idx));
    dims[idx] = static_cast<int>(charts[idx].section.cols());
  }
  GridModule out(shape, f, dims);
  for (std::size_t idx = 0; idx < shape.num_points(); ++idx) {
    const Point p = shape.point(idx);
    const ColimitChart& src = charts[idx];
    for (int k = 0; k < shape.ndim(); ++k) {
      if (!shape.has_step(p, k)) continue;
      const ColimitChart& dst = charts[shape.index(step_up(p, k))];
      // V(p) -> V(p + e_k): identity on the center and on untouched arms, arm map on arm k.
      Mat t = Mat::Zero(dst.ambient, src.ambient);
      t.block(dst.center_offset, src.center_offset, cm.center_dim, cm.center_dim) = identity(cm.center_dim);
      for (std::size_t a = 0; a < src.arms.size(); ++a) {
        const int i = src.arms[a];
        const auto it = std::find(dst.arms.begin(), dst.arms.end(), i);
        const Eigen::Index da = dst.arm_offset[it - dst.arms.begin()];
        const Mat& piece = i == k ? cm.arm_maps[i][p[i]] : identity(cm.arm_dims[i][p[i] - 1]);
        t.block(da, src.arm_offset[a], piece.rows(), piece.cols()) = piece;
      }
      out.set_step(p, k, f.mul(dst.projection, f.mul(t, src.section)));
    }
  }
  return out;
}

namespace {

Mat random_matrix(const PrimeField& f, Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<Scalar> pick(0, static_cast<Scalar>(f.characteristic()) - 1);
  Mat a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = pick(rng);
  return a;
}

}  // namespace

GridModule scramble(const GridModule& m, std::uint64_t seed) {
  const GridShape& s = m.shape();
  const PrimeField& f = m.field();
  std::mt19937_64 rng(seed);
  std::vector<Mat> g(s.num_points()), g_inv(s.num_points());
  for (std::size_t idx = 0; idx < s.num_points(); ++idx) {
    const int d = m.dim_at(idx);
    for (;;) {
      g[idx] = random_matrix(f, d, d, rng);
      auto inv = inverse(f, g[idx]);
      if (inv) {
        g_inv[idx] = *inv;
        break;
      }
    }
  }
  GridModule out(s, f, m.dims());
  for (std::size_t idx = 0; idx < s.num_points(); ++idx) {
    const Point p = s.point(idx);
    for (int i = 0; i < s.ndim(); ++i) {
      if (!s.has_step(p, i)) continue;
      const std::size_t q = s.index(step_up(p, i));
      out.set_step(p, i, f.mul(g[q], f.mul(m.step_at(idx, i), g_inv[idx])));
    }
  }
  return out;
}

std::vector<Morphism> hom_basis(const GridModule& from, const GridModule& to) {
  if (!(from.shape() == to.shape())) throw std::invalid_argument("hom_basis: shapes differ");
  const GridShape& s = from.shape();
  const PrimeField& f = from.field();
  const std::size_t np = s.num_points();
  std::vector<Eigen::Index> offset(np + 1, 0);
  for (std::size_t idx = 0; idx < np; ++idx)
    offset[idx + 1] = offset[idx] + static_cast<Eigen::Index>(to.dim_at(idx)) * from.dim_at(idx);
  const Eigen::Index unknowns = offset[np];

  Eigen::Index rows = 0;
  for (std::size_t idx = 0; idx < np; ++idx) {
    const Point p = s.point(idx);
    for (int i = 0; i < s.ndim(); ++i)
      if (s.has_step(p, i)) rows += static_cast<Eigen::Index>(to.dim(step_up(p, i))) * from.dim_at(idx);
  }
  // Naturality: to.step(p,i) * phi_p - phi_q * from.step(p,i) = 0, entrywise.
  Mat sys = Mat::Zero(rows, unknowns);
  Eigen::Index r = 0;
  for (std::size_t idx = 0; idx < np; ++idx) {
    const Point p = s.point(idx);
    for (int i = 0; i < s.ndim(); ++i) {
      if (!s.has_step(p, i)) continue;
      const std::size_t q = s.index(step_up(p, i));
      const Mat& ns = to.step_at(idx, i);
      const Mat& ms = from.step_at(idx, i);
      const int mp = from.dim_at(idx), mq = from.dim_at(q), np_ = to.dim_at(idx), nq = to.dim_at(q);
      for (int a = 0; a < nq; ++a)
        for (int b = 0; b < mp; ++b, ++r) {
          for (int c = 0; c < np_; ++c)
            if (ns(a, c)) sys(r, offset[idx] + c * mp + b) = f.add(sys(r, offset[idx] + c * mp + b), ns(a, c));
          for (int c = 0; c < mq; ++c)
            if (ms(c, b)) sys(r, offset[q] + a * mq + c) = f.sub(sys(r, offset[q] + a * mq + c), ms(c, b));
        }
    }
  }
  const Mat kern = kernel_basis(f, sys);
  std::vector<Morphism> out;
  out.reserve(static_cast<std::size_t>(kern.cols()));
  for (Eigen::Index c = 0; c < kern.cols(); ++c) {
    Morphism phi(np);
    for (std::size_t idx = 0; idx < np; ++idx) {
      const int rr = to.dim_at(idx), cc = from.dim_at(idx);
      phi[idx] = Mat(rr, cc);
      for (int a = 0; a < rr; ++a)
        for (int b = 0; b < cc; ++b) phi[idx](a, b) = kern(offset[idx] + a * cc + b, c);
    }
    out.push_back(std::move(phi));
  }
  return out;
}

bool is_natural(const GridModule& from, const GridModule& to, const Morphism& phi) {
  const GridShape& s = from.shape();
  const PrimeField& f = from.field();
  if (phi.size() != s.num_points()) return false;
  for (std::size_t idx = 0; idx < s.num_points(); ++idx) {
    if (phi[idx].rows() != to.dim_at(idx) || phi[idx].cols() != from.dim_at(idx)) return false;
    const Point p = s.point(idx);
    for (int i = 0; i < s.ndim(); ++i) {
      if (!s.has_step(p, i)) continue;
      const std::size_t q = s.index(step_up(p, i));
      if (f.mul(to.step_at(idx, i), phi[idx]) != f.mul(phi[q], from.step_at(idx, i))) return false;
    }
  }
  return true;
}

Morphism random_combination(const PrimeField& f, const std::vector<Morphism>& basis, std::mt19937_64& rng) {
  if (basis.empty()) return {};
  std::uniform_int_distribution<Scalar> pick(0, static_cast<Scalar>(f.characteristic()) - 1);
  Morphism out = basis.front();
  for (auto& m : out) m.setZero();
  for (const Morphism& b : basis) {
    const Scalar c = pick(rng);
    if (c == 0) continue;
    for (std::size_t idx = 0; idx < out.size(); ++idx) out[idx] = f.add(out[idx], f.scale(b[idx], c));
  }
  return out;
}

bool is_isomorphic(const GridModule& a, const GridModule& b, int trials, std::uint64_t seed) {
  if (!(a.shape() == b.shape()) || a.dims() != b.dims()) return false;
  if (a.total_dim() == 0) return true;
  const auto basis = hom_basis(a, b);
  if (basis.empty()) return false;
  const PrimeField& f = a.field();
  std::mt19937_64 rng(seed);
  // Over a tiny field a random morphism is singular somewhere with high
  // probability once there are several summands, so buy more draws.
  const std::int64_t scale = std::max<std::int64_t>(1, std::int64_t{128} / f.characteristic());
  const std::int64_t draws = trials * scale;
  for (std::int64_t t = 0; t < draws; ++t) {
    const Morphism phi = random_combination(f, basis, rng);
    bool ok = true;
    for (std::size_t idx = 0; idx < phi.size() && ok; ++idx)
      ok = rank(f, phi[idx]) == a.dim_at(idx);
    if (ok) return true;
  }
  return false;
}

}  // namespace blockdec
