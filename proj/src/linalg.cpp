#include "blockdec/linalg.hpp"

#include <stdexcept>
#include <string>

namespace blockdec {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t characteristic) : p_(characteristic) {
  if (!is_prime(p_))
    throw std::invalid_argument("field characteristic " + std::to_string(p_) + " is not prime");
  if (p_ >= (1u << 24))
    throw std::invalid_argument("field characteristic must be below 2^24");
}

Scalar PrimeField::pow(Scalar a, std::uint64_t e) const {
  Scalar base = reduce(a), acc = 1 % p_;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

Scalar PrimeField::inv(Scalar a) const {
  a = reduce(a);
  if (a == 0) throw std::domain_error("inverse of zero");
  return pow(a, p_ - 2);
}

Mat PrimeField::reduce(const Mat& a) const {
  return a.unaryExpr([this](Scalar x) { return reduce(x); });
}

Vec PrimeField::reduce(const Vec& a) const {
  return a.unaryExpr([this](Scalar x) { return reduce(x); });
}

Mat PrimeField::mul(const Mat& a, const Mat& b) const {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: inner dimensions differ");
  if (a.rows() == 0 || b.cols() == 0 || a.cols() == 0) return Mat::Zero(a.rows(), b.cols());
  return reduce(Mat(a * b));
}

Vec PrimeField::mul(const Mat& a, const Vec& b) const {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix-vector product: dimensions differ");
  if (a.rows() == 0 || a.cols() == 0) return Vec::Zero(a.rows());
  return reduce(Vec(a * b));
}

Mat PrimeField::pow(const Mat& a, std::uint64_t e) const {
  Mat base = a, acc = identity(a.rows());
  while (e) {
    if (e & 1) acc = mul(acc, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return acc;
}

RowEchelon rref(const PrimeField& f, Mat a) {
  RowEchelon out;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) a.row(piv).swap(a.row(r));
    const Scalar s = f.inv(a(r, c));
    for (Eigen::Index j = c; j < cols; ++j) a(r, j) = f.mul(a(r, j), s);
    // Only the pivot row's nonzero tail matters in the updates below.
    std::vector<Eigen::Index> support;
    for (Eigen::Index j = c; j < cols; ++j)
      if (a(r, j) != 0) support.push_back(j);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Scalar factor = a(i, c);
      if (factor == 0) continue;
      for (Eigen::Index j : support) a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(a);
  return out;
}

Eigen::Index rank(const PrimeField& f, const Mat& a) {
  return static_cast<Eigen::Index>(rref(f, a).pivots.size());
}

Mat kernel_basis(const PrimeField& f, const Mat& a) {
  const RowEchelon e = rref(f, a);
  const Eigen::Index cols = a.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  Mat basis = Mat::Zero(cols, cols - static_cast<Eigen::Index>(e.pivots.size()));
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      basis(e.pivots[r], k) = f.neg(e.reduced(static_cast<Eigen::Index>(r), free));
    ++k;
  }
  return basis;
}

std::optional<Mat> solve(const PrimeField& f, const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
  const RowEchelon e = rref(f, hcat(a, f.reduce(b)));
  const Eigen::Index n = a.cols();
  Mat x = Mat::Zero(n, b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= n) return std::nullopt;  // pivot in the augmented part
    x.row(e.pivots[r]) = e.reduced.row(static_cast<Eigen::Index>(r)).tail(b.cols());
  }
  return x;
}

std::optional<Vec> solve(const PrimeField& f, const Mat& a, const Vec& b) {
  Mat rhs = b;
  auto x = solve(f, a, rhs);
  if (!x) return std::nullopt;
  return Vec(x->col(0));
}

Mat complement_basis(const PrimeField& f, const Mat& sub, Eigen::Index ambientDim,
                     const std::vector<Eigen::Index>& order) {
  if (sub.rows() != ambientDim) throw std::invalid_argument("complement_basis: wrong ambient dimension");
  if (rank(f, sub) != sub.cols()) throw std::invalid_argument("complement_basis: dependent input columns");
  Mat current = sub;
  Mat added(ambientDim, 0);
  Eigen::Index r = sub.cols();
  for (Eigen::Index idx : order) {
    if (r == ambientDim) break;
    Mat e = Mat::Zero(ambientDim, 1);
    e(idx, 0) = 1;
    Mat trial = hcat(current, e);
    if (rank(f, trial) > r) {
      current = std::move(trial);
      added = hcat(added, e);
      ++r;
    }
  }
  return added;
}

Mat complement_basis(const PrimeField& f, const Mat& sub, Eigen::Index ambientDim) {
  std::vector<Eigen::Index> order(ambientDim);
  for (Eigen::Index i = 0; i < ambientDim; ++i) order[i] = i;
  return complement_basis(f, sub, ambientDim, order);
}

Mat column_space(const PrimeField& f, const Mat& a) {
  const RowEchelon e = rref(f, a);
  Mat out(a.rows(), static_cast<Eigen::Index>(e.pivots.size()));
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    out.col(static_cast<Eigen::Index>(i)) = a.col(e.pivots[i]);
  return out;
}

Mat intersect(const PrimeField& f, const Mat& a, const Mat& b) {
  const Mat ca = column_space(f, a), cb = column_space(f, b);
  if (ca.cols() == 0 || cb.cols() == 0) return Mat(a.rows(), 0);
  // ca*x = cb*y  <=>  [ca -cb] (x;y) = 0
  const Mat k = kernel_basis(f, hcat(ca, f.reduce(Mat(-cb))));
  return column_space(f, f.mul(ca, Mat(k.topRows(ca.cols()))));
}

Mat preimage(const PrimeField& f, const Mat& a, const Mat& sub) {
  const Mat cs = column_space(f, sub);
  const Mat k = kernel_basis(f, hcat(a, f.reduce(Mat(-cs))));
  return column_space(f, Mat(k.topRows(a.cols())));
}

std::optional<Mat> inverse(const PrimeField& f, const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix is not square");
  const Eigen::Index n = a.rows();
  const RowEchelon e = rref(f, hcat(a, identity(n)));
  if (static_cast<Eigen::Index>(e.pivots.size()) < n || (n > 0 && e.pivots[n - 1] >= n))
    return std::nullopt;
  return Mat(e.reduced.rightCols(n));
}

Mat left_inverse(const PrimeField& f, const Mat& a) {
  // Solve a^T * X = I for X; then X^T a = I.
  auto x = solve(f, Mat(a.transpose()), identity(a.cols()));
  if (!x) throw std::invalid_argument("left_inverse: columns are dependent");
  return x->transpose();
}

Mat identity(Eigen::Index n) { return Mat::Identity(n, n); }
Mat zeros(Eigen::Index rows, Eigen::Index cols) { return Mat::Zero(rows, cols); }

Mat hcat(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row counts differ");
  Mat out(a.rows(), a.cols() + b.cols());
  out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

Mat vcat(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vcat: column counts differ");
  Mat out(a.rows() + b.rows(), a.cols());
  out.topRows(a.rows()) = a;
  out.bottomRows(b.rows()) = b;
  return out;
}

Mat block_diag(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

bool is_zero(const Mat& a) { return a.size() == 0 || (a.array() == 0).all(); }

}  // namespace blockdec
