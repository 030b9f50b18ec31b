#pragma once
// Shared generators and oracles for the unit tests.

#include "blockdec/grid_module.hpp"
#include "blockdec/linalg.hpp"

#include <random>
#include <set>
#include <vector>

namespace testing {

using namespace blockdec;

inline Mat mat(std::initializer_list<std::initializer_list<Scalar>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
  Mat a(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (Scalar x : row) a(i, j++) = x;
    ++i;
  }
  return a;
}

inline Mat random_mat(const PrimeField& f, int rows, int cols, std::mt19937_64& rng, double zero_bias = 0.0) {
  std::uniform_int_distribution<Scalar> pick(0, f.characteristic() - 1);
  std::bernoulli_distribution zero(zero_bias);
  Mat a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = zero(rng) ? 0 : pick(rng);
  return a;
}

// Size of the row space, by enumerating every combination of rows; p^rank.
inline std::size_t row_space_size(const PrimeField& f, const Mat& a) {
  std::set<std::vector<Scalar>> span;
  const std::size_t p = f.characteristic();
  std::size_t combos = 1;
  for (Eigen::Index i = 0; i < a.rows(); ++i) combos *= p;
  for (std::size_t code = 0; code < combos; ++code) {
    std::vector<Scalar> v(a.cols(), 0);
    std::size_t c = code;
    for (Eigen::Index i = 0; i < a.rows(); ++i, c /= p)
      for (Eigen::Index j = 0; j < a.cols(); ++j) v[j] = f.add(v[j], f.mul(static_cast<Scalar>(c % p), a(i, j)));
    span.insert(v);
  }
  return span.size();
}

inline int log_p(std::size_t x, std::size_t p) {
  int r = 0;
  while (x > 1) {
    x /= p;
    ++r;
  }
  return r;
}

}  // namespace testing
