#pragma once

// Dense linear algebra and univariate polynomials over a prime field F_q,
// q < 2^31. Internal to the character module.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qrmix/modular.hpp"
#include "qrmix/numeric.hpp"

namespace qrmix::fq {

using u64 = std::uint64_t;

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<u64> v;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0) {}
  u64& operator()(std::size_t i, std::size_t j) { return v[i * cols + j]; }
  u64 operator()(std::size_t i, std::size_t j) const { return v[i * cols + j]; }
};

/// Row-reduces `m` in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
std::vector<std::size_t> rref(Matrix& m, u64 q);

/// Basis (as rows) of {c : A c = 0}.
Matrix nullspace(const Matrix& a, u64 q);

/// Polynomials are coefficient vectors, lowest degree first, with no
/// trailing zeros (the zero polynomial is empty).
using Poly = std::vector<u64>;

/// Characteristic polynomial det(xI - A) of a square matrix, via reduction to
/// upper Hessenberg form.
Poly charpoly(Matrix a, u64 q);

/// Distinct roots of f in F_q, ascending. Uses gcd(f, x^q - x) followed by
/// Cantor-Zassenhaus equal-degree splitting driven by `rng`.
std::vector<u64> distinct_roots(const Poly& f, u64 q, Rng& rng);

// Exposed for tests.
Poly poly_mod(Poly a, const Poly& m, u64 q);
Poly poly_gcd(Poly a, Poly b, u64 q);
Poly poly_mul(const Poly& a, const Poly& b, u64 q);
u64 poly_eval(const Poly& f, u64 x, u64 q);

}  // namespace qrmix::fq
