#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <vector>

namespace blockdec {

/// Dense row-major matrix over an integral scalar. Entries of matrices that
/// live in a module are always kept in canonical form [0, p).
template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Scalar = std::int64_t;
using Mat = DenseMatrix<Scalar>;
using Vec = DenseVector<Scalar>;

constexpr std::uint32_t kDefaultCharacteristic = 65521;

/// The prime field Z/pZ. Products are formed in 64-bit integers and reduced
/// afterwards, which is exact while inner dimension * p^2 < 2^63; the
/// characteristic is therefore capped below 2^24.
class PrimeField {
public:
  explicit PrimeField(std::uint32_t characteristic = kDefaultCharacteristic);

  std::uint32_t characteristic() const { return p_; }

  Scalar reduce(Scalar x) const {
    Scalar r = x % static_cast<Scalar>(p_);
    return r < 0 ? r + p_ : r;
  }
  Scalar add(Scalar a, Scalar b) const { return reduce(a + b); }
  Scalar sub(Scalar a, Scalar b) const { return reduce(a - b); }
  Scalar mul(Scalar a, Scalar b) const { return reduce(a * b); }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar inv(Scalar a) const;
  Scalar pow(Scalar a, std::uint64_t e) const;

  Mat reduce(const Mat& a) const;
  Vec reduce(const Vec& a) const;
  Mat mul(const Mat& a, const Mat& b) const;
  Vec mul(const Mat& a, const Vec& b) const;
  Mat sub(const Mat& a, const Mat& b) const { return reduce(Mat(a - b)); }
  Mat add(const Mat& a, const Mat& b) const { return reduce(Mat(a + b)); }
  Mat scale(const Mat& a, Scalar s) const { return reduce(Mat(a * reduce(s))); }
  Mat pow(const Mat& a, std::uint64_t e) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

/// Reduced row echelon form with first-nonzero pivoting.
struct RowEchelon {
  Mat reduced;
  std::vector<Eigen::Index> pivots;  ///< pivot column of each nonzero row
};

RowEchelon rref(const PrimeField& f, Mat a);

Eigen::Index rank(const PrimeField& f, const Mat& a);

/// Columns form a basis of ker a; one column per free variable.
Mat kernel_basis(const PrimeField& f, const Mat& a);

/// Some x with a*x = b, or nullopt when b is outside the column space.
std::optional<Vec> solve(const PrimeField& f, const Mat& a, const Vec& b);

/// Matrix version of solve: some X with a*X = b.
std::optional<Mat> solve(const PrimeField& f, const Mat& a, const Mat& b);

/// Extends the independent columns of `sub` to a basis of F^ambientDim by
/// greedily adding standard basis vectors; returns only the added columns.
Mat complement_basis(const PrimeField& f, const Mat& sub, Eigen::Index ambientDim);

/// Same as above but trying the standard vectors in `order`.
Mat complement_basis(const PrimeField& f, const Mat& sub, Eigen::Index ambientDim,
                     const std::vector<Eigen::Index>& order);

/// Independent columns spanning the column space (a subset of a's columns).
Mat column_space(const PrimeField& f, const Mat& a);

/// Basis of span(a) ∩ span(b); inputs need not be independent.
Mat intersect(const PrimeField& f, const Mat& a, const Mat& b);

/// Basis of {x : a*x ∈ span(sub)}.
Mat preimage(const PrimeField& f, const Mat& a, const Mat& sub);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<Mat> inverse(const PrimeField& f, const Mat& a);

/// A left inverse L (L*a = I) of a matrix with independent columns.
Mat left_inverse(const PrimeField& f, const Mat& a);

Mat identity(Eigen::Index n);
Mat zeros(Eigen::Index rows, Eigen::Index cols);

/// [a b] and [a; b]; both accept empty operands.
Mat hcat(const Mat& a, const Mat& b);
Mat vcat(const Mat& a, const Mat& b);
Mat block_diag(const Mat& a, const Mat& b);

bool is_zero(const Mat& a);

}  // namespace blockdec
