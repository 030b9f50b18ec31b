#pragma once

#include "blockdec/linalg.hpp"

#include <random>
#include <vector>

namespace blockdec::poly {

/// Coefficients from the constant term upwards; the zero polynomial is empty.
using Poly = std::vector<Scalar>;

Poly trim(Poly a);
int degree(const Poly& a);
Scalar evaluate(const PrimeField& f, const Poly& a, Scalar x);

Poly mul(const PrimeField& f, const Poly& a, const Poly& b);
Poly sub(const PrimeField& f, const Poly& a, const Poly& b);
Poly mod(const PrimeField& f, Poly a, const Poly& m);
Poly gcd(const PrimeField& f, Poly a, Poly b);  // monic
Poly powmod(const PrimeField& f, const Poly& base, std::uint64_t e, const Poly& m);

/// Characteristic polynomial det(xI - a), monic of degree rows(a).
Poly charpoly(const PrimeField& f, const Mat& a);

/// Distinct roots in F_p, ascending. Equal-degree splitting is randomized,
/// the result is not.
std::vector<Scalar> roots(const PrimeField& f, const Poly& a, std::mt19937_64& rng);

/// Eigenvalues of a square matrix lying in F_p, ascending.
std::vector<Scalar> eigenvalues(const PrimeField& f, const Mat& a, std::mt19937_64& rng);

}  // namespace blockdec::poly
