#include "blockdec/poly.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace testing;
namespace bp = blockdec::poly;

TEST_CASE("charpoly annihilates its matrix") {
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {2u, 7u, 65521u}) {
    const PrimeField f(p);
    for (int t = 0; t < 40; ++t) {
      const int n = static_cast<int>(rng() % 6);
      const Mat a = random_mat(f, n, n, rng, 0.3);
      const bp::Poly c = bp::charpoly(f, a);
      REQUIRE(bp::degree(c) == n);
      CHECK(c.back() == 1);
      // Horner evaluation at the matrix (Cayley-Hamilton).
      Mat acc = Mat::Zero(n, n);
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = f.add(f.mul(acc, a), f.scale(identity(n), *it));
      CHECK(is_zero(acc));
    }
  }
}

TEST_CASE("roots agree with exhaustive evaluation") {
  std::mt19937_64 rng(9);
  for (std::uint32_t p : {5u, 101u, 65521u}) {
    const PrimeField f(p);
    for (int t = 0; t < 30; ++t) {
      // Product of random linear factors times a random quadratic.
      bp::Poly a{1};
      std::set<Scalar> planted;
      const int k = static_cast<int>(rng() % 4);
      for (int i = 0; i < k; ++i) {
        const Scalar r = static_cast<Scalar>(rng() % p);
        planted.insert(r);
        a = bp::mul(f, a, bp::Poly{f.neg(r), 1});
      }
      a = bp::mul(f, a, bp::Poly{static_cast<Scalar>(rng() % p), static_cast<Scalar>(rng() % p), 1});
      const auto got = bp::roots(f, a, rng);
      if (p <= 101) {
        std::vector<Scalar> want;
        for (Scalar x = 0; x < static_cast<Scalar>(p); ++x)
          if (bp::evaluate(f, a, x) == 0) want.push_back(x);
        CHECK(got == want);
      } else {
        for (Scalar r : planted) CHECK(std::binary_search(got.begin(), got.end(), r));
        for (Scalar r : got) CHECK(bp::evaluate(f, a, r) == 0);
      }
    }
  }
}

TEST_CASE("eigenvalues of a triangular matrix are its diagonal") {
  const PrimeField f;
  std::mt19937_64 rng(1);
  const Mat a = mat({{4, 1, 9}, {0, 7, 2}, {0, 0, 4}});
  CHECK(bp::eigenvalues(f, a, rng) == std::vector<Scalar>{4, 7});
  CHECK(bp::eigenvalues(f, Mat(0, 0), rng).empty());
}
