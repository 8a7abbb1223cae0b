#include "fq_linalg.hpp"

#include <algorithm>
#include <utility>

namespace qrmix::fq {

namespace m = qrmix::modular;

std::vector<std::size_t> rref(Matrix& a, u64 q) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols && row < a.rows; ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows) continue;
    if (pivot != row) {
      for (std::size_t j = 0; j < a.cols; ++j) std::swap(a(pivot, j), a(row, j));
    }
    const u64 scale = m::inv(a(row, col), q);
    for (std::size_t j = 0; j < a.cols; ++j) a(row, j) = m::mul(a(row, j), scale, q);
    for (std::size_t i = 0; i < a.rows; ++i) {
      if (i == row || a(i, col) == 0) continue;
      const u64 factor = a(i, col);
      for (std::size_t j = 0; j < a.cols; ++j) {
        a(i, j) = m::sub(a(i, j), m::mul(factor, a(row, j), q), q);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  a.rows = row;
  a.v.resize(row * a.cols);
  return pivots;
}

Matrix nullspace(const Matrix& a, u64 q) {
  Matrix r = a;
  const auto pivots = rref(r, q);
  std::vector<bool> is_pivot(a.cols, false);
  for (auto p : pivots) is_pivot[p] = true;

  Matrix basis(a.cols - pivots.size(), a.cols);
  std::size_t out = 0;
  for (std::size_t free = 0; free < a.cols; ++free) {
    if (is_pivot[free]) continue;
    basis(out, free) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      basis(out, pivots[i]) = m::sub(0, r(i, free), q);
    }
    ++out;
  }
  return basis;
}

namespace {

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_sub(Poly a, const Poly& b, u64 q) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = m::sub(a[i], b[i], q);
  trim(a);
  return a;
}

Poly make_monic(Poly p, u64 q) {
  if (p.empty()) return p;
  const u64 s = m::inv(p.back(), q);
  for (auto& c : p) c = m::mul(c, s, q);
  return p;
}

// Quotient of exact or inexact division; remainder discarded.
Poly poly_div(Poly a, const Poly& b, u64 q) {
  trim(a);
  if (a.size() < b.size()) return {};
  Poly quotient(a.size() - b.size() + 1, 0);
  const u64 lead_inv = m::inv(b.back(), q);
  for (std::size_t i = a.size(); i-- >= b.size();) {
    const u64 c = m::mul(a[i], lead_inv, q);
    quotient[i - (b.size() - 1)] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::size_t idx = i - (b.size() - 1) + j;
      a[idx] = m::sub(a[idx], m::mul(c, b[j], q), q);
    }
  }
  trim(quotient);
  return quotient;
}

Poly poly_powmod(Poly base, u64 e, const Poly& mod, u64 q) {
  Poly result{1};
  result = poly_mod(result, mod, q);
  base = poly_mod(std::move(base), mod, q);
  while (e > 0) {
    if (e & 1U) result = poly_mod(poly_mul(result, base, q), mod, q);
    base = poly_mod(poly_mul(base, base, q), mod, q);
    e >>= 1U;
  }
  return result;
}

void split_roots(const Poly& f, u64 q, Rng& rng, std::vector<u64>& out) {
  if (f.size() <= 1) return;
  if (f.size() == 2) {
    // f = f0 + f1 x, root -f0 / f1
    out.push_back(m::mul(m::sub(0, f[0], q), m::inv(f[1], q), q));
    return;
  }
  while (true) {
    const u64 delta = rng.below(q);
    Poly t = poly_powmod({delta, 1}, (q - 1) / 2, f, q);
    t = poly_sub(std::move(t), {1}, q);
    Poly d = poly_gcd(f, t, q);
    if (d.size() > 1 && d.size() < f.size()) {
      split_roots(d, q, rng, out);
      split_roots(poly_div(f, d, q), q, rng, out);
      return;
    }
  }
}

}  // namespace

Poly poly_mul(const Poly& a, const Poly& b, u64 q) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = m::add(r[i + j], m::mul(a[i], b[j], q), q);
  }
  trim(r);
  return r;
}

Poly poly_mod(Poly a, const Poly& b, u64 q) {
  trim(a);
  if (a.size() < b.size()) return a;
  const u64 lead_inv = m::inv(b.back(), q);
  for (std::size_t i = a.size(); i-- >= b.size();) {
    const u64 c = m::mul(a[i], lead_inv, q);
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::size_t idx = i - (b.size() - 1) + j;
      a[idx] = m::sub(a[idx], m::mul(c, b[j], q), q);
    }
  }
  a.resize(b.size() - 1);
  trim(a);
  return a;
}

Poly poly_gcd(Poly a, Poly b, u64 q) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, q);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a), q);
}

u64 poly_eval(const Poly& f, u64 x, u64 q) {
  u64 acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = m::add(m::mul(acc, x, q), f[i], q);
  return acc;
}

Poly charpoly(Matrix a, u64 q) {
  const std::size_t n = a.rows;
  // Similarity transform to upper Hessenberg form.
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t pivot = j + 1;
    while (pivot < n && a(pivot, j) == 0) ++pivot;
    if (pivot == n) continue;
    if (pivot != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(a(r, pivot), a(r, j + 1));
    }
    const u64 inv_pivot = m::inv(a(j + 1, j), q);
    for (std::size_t i = j + 2; i < n; ++i) {
      const u64 u = m::mul(a(i, j), inv_pivot, q);
      if (u == 0) continue;
      for (std::size_t c = 0; c < n; ++c) a(i, c) = m::sub(a(i, c), m::mul(u, a(j + 1, c), q), q);
      for (std::size_t r = 0; r < n; ++r) a(r, j + 1) = m::add(a(r, j + 1), m::mul(u, a(r, i), q), q);
    }
  }

  // p_{i+1} = (x - h_ii) p_i - sum_{j<i} h_ji (prod_{l=j+1..i} h_{l,l-1}) p_j
  std::vector<Poly> p(n + 1);
  p[0] = {1};
  for (std::size_t i = 0; i < n; ++i) {
    Poly next(i + 2, 0);
    for (std::size_t t = 0; t < p[i].size(); ++t) {
      next[t + 1] = m::add(next[t + 1], p[i][t], q);
      next[t] = m::sub(next[t], m::mul(a(i, i), p[i][t], q), q);
    }
    u64 prod = 1;
    for (std::size_t j = i; j-- > 0;) {
      prod = m::mul(prod, a(j + 1, j), q);
      const u64 coef = m::mul(a(j, i), prod, q);
      if (coef == 0) continue;
      for (std::size_t t = 0; t < p[j].size(); ++t) {
        next[t] = m::sub(next[t], m::mul(coef, p[j][t], q), q);
      }
    }
    trim(next);
    p[i + 1] = std::move(next);
  }
  return p[n];
}

std::vector<u64> distinct_roots(const Poly& f, u64 q, Rng& rng) {
  Poly monic = make_monic(f, q);
  if (monic.size() <= 1) return {};
  // Product of the distinct linear factors: gcd(f, x^q - x).
  Poly xq = poly_powmod({0, 1}, q, monic, q);
  Poly g = poly_gcd(monic, poly_sub(std::move(xq), {0, 1}, q), q);
  std::vector<u64> roots;
  split_roots(g, q, rng, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace qrmix::fq
