#include "blockdec/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace blockdec::poly {

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Scalar evaluate(const PrimeField& f, const Poly& a, Scalar x) {
  Scalar acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = f.add(f.mul(acc, x), *it);
  return acc;
}

Poly mul(const PrimeField& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  return trim(std::move(out));
}

Poly sub(const PrimeField& f, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = f.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  return trim(std::move(out));
}

Poly mod(const PrimeField& f, Poly a, const Poly& m) {
  if (m.empty()) throw std::domain_error("polynomial division by zero");
  a = trim(std::move(a));
  const Scalar lead_inv = f.inv(m.back());
  while (a.size() >= m.size()) {
    const Scalar c = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, m[i]));
    a = trim(std::move(a));
  }
  return a;
}

Poly gcd(const PrimeField& f, Poly a, Poly b) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    Poly r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Scalar s = f.inv(a.back());
    for (auto& c : a) c = f.mul(c, s);
  }
  return a;
}

Poly powmod(const PrimeField& f, const Poly& base, std::uint64_t e, const Poly& m) {
  Poly acc{1}, b = mod(f, base, m);
  acc = mod(f, acc, m);
  while (e) {
    if (e & 1) acc = mod(f, mul(f, acc, b), m);
    e >>= 1;
    if (e) b = mod(f, mul(f, b, b), m);
  }
  return acc;
}

Poly charpoly(const PrimeField& f, const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("charpoly: matrix is not square");
  const Eigen::Index n = a.rows();
  Mat h = a;
  // Similarity reduction to upper Hessenberg form.
  for (Eigen::Index m = 1; m + 1 < n; ++m) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = m; i < n; ++i)
      if (h(i, m - 1) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != m) {
      h.row(piv).swap(h.row(m));
      h.col(piv).swap(h.col(m));
    }
    const Scalar t_inv = f.inv(h(m, m - 1));
    for (Eigen::Index i = m + 1; i < n; ++i) {
      const Scalar u = f.mul(h(i, m - 1), t_inv);
      if (u == 0) continue;
      for (Eigen::Index j = 0; j < n; ++j) h(i, j) = f.sub(h(i, j), f.mul(u, h(m, j)));
      for (Eigen::Index j = 0; j < n; ++j) h(j, m) = f.add(h(j, m), f.mul(u, h(j, i)));
    }
  }
  // p_k = (x - h_kk) p_{k-1} - sum_i h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
  std::vector<Poly> p(static_cast<std::size_t>(n) + 1);
  p[0] = {1};
  for (Eigen::Index k = 1; k <= n; ++k) {
    p[k] = mul(f, Poly{f.neg(h(k - 1, k - 1)), 1}, p[k - 1]);
    Scalar t = 1;
    for (Eigen::Index i = k - 1; i >= 1; --i) {
      t = f.mul(t, h(i, i - 1));
      const Scalar c = f.mul(h(i - 1, k - 1), t);
      if (c != 0) p[k] = sub(f, p[k], mul(f, Poly{c}, p[i - 1]));
    }
  }
  return p[n];
}

namespace {

void split_roots(const PrimeField& f, const Poly& g, std::mt19937_64& rng, std::vector<Scalar>& out) {
  const int d = degree(g);
  if (d <= 0) return;
  if (d == 1) {
    out.push_back(f.neg(f.mul(g[0], f.inv(g[1]))));
    return;
  }
  const std::uint64_t p = f.characteristic();
  std::uniform_int_distribution<std::uint64_t> pick(0, p - 1);
  for (;;) {
    const Scalar a = static_cast<Scalar>(pick(rng));
    Poly h = powmod(f, Poly{a, 1}, (p - 1) / 2, g);
    h = gcd(f, sub(f, h, Poly{1}), g);
    const int dh = degree(h);
    if (dh > 0 && dh < d) {
      split_roots(f, h, rng, out);
      Poly q = g;  // g / h
      Poly quotient(static_cast<std::size_t>(d - dh + 1), 0);
      const Scalar lead_inv = f.inv(h.back());
      while (degree(q) >= dh) {
        const std::size_t shift = q.size() - h.size();
        const Scalar c = f.mul(q.back(), lead_inv);
        quotient[shift] = c;
        for (std::size_t i = 0; i < h.size(); ++i) q[shift + i] = f.sub(q[shift + i], f.mul(c, h[i]));
        q = trim(std::move(q));
      }
      split_roots(f, trim(quotient), rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Scalar> roots(const PrimeField& f, const Poly& a_in, std::mt19937_64& rng) {
  const Poly a = trim(a_in);
  if (a.empty()) throw std::invalid_argument("roots of the zero polynomial");
  std::vector<Scalar> out;
  const std::uint64_t p = f.characteristic();
  if (p <= 64) {
    for (Scalar x = 0; x < static_cast<Scalar>(p); ++x)
      if (evaluate(f, a, x) == 0) out.push_back(x);
    return out;
  }
  // The split part gcd(x^p - x, a) has exactly the distinct roots of a.
  Poly xp = powmod(f, Poly{0, 1}, p, a);
  Poly g = gcd(f, sub(f, xp, Poly{0, 1}), a);
  if (degree(g) > 0 && g[0] == 0) {
    out.push_back(0);
    g.erase(g.begin());  // divide by x
  }
  split_roots(f, g, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Scalar> eigenvalues(const PrimeField& f, const Mat& a, std::mt19937_64& rng) {
  if (a.rows() == 0) return {};
  return roots(f, charpoly(f, a), rng);
}

}  // namespace blockdec::poly
