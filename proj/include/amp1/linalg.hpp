#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "amp1/rational.hpp"

namespace amp1 {

/// Dense matrix over the exact rationals, row major.
using RatMatrix = std::vector<std::vector<Rational>>;

/// Reduced row echelon form in place. Returns the pivot column of each
/// pivot row, so the rank is the size of the returned vector.
inline std::vector<size_t> rref_in_place(RatMatrix& m) {
  std::vector<size_t> pivots;
  if (m.empty()) return pivots;
  const size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && m[sel][c].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    const Rational inv = Rational(1) / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const Rational f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline size_t rank(RatMatrix m) { return rref_in_place(m).size(); }

/// One exact solution of A x = b (free variables set to zero), or nullopt
/// if the system is inconsistent. `cols` pins the number of unknowns so
/// systems with no equations still produce a correctly sized solution.
inline std::optional<std::vector<Rational>> solve(const RatMatrix& a,
                                                  const std::vector<Rational>& b,
                                                  size_t cols) {
  const size_t rows = a.size();
  if (rows != 0 && a[0].size() != cols)
    throw error("solve: column count mismatch");
  if (b.size() != rows) throw error("solve: rhs length mismatch");
  RatMatrix aug(rows, std::vector<Rational>(cols + 1));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  const std::vector<size_t> pivots = rref_in_place(aug);
  for (size_t p : pivots)
    if (p == cols) return std::nullopt;  // row reduces to 0 = 1
  std::vector<Rational> x(cols, Rational(0));
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
  return x;
}

inline std::optional<std::vector<Rational>> solve(const RatMatrix& a,
                                                  const std::vector<Rational>& b) {
  return solve(a, b, a.empty() ? 0 : a[0].size());
}

/// Rank by fraction-free (Bareiss) elimination: denominators are cleared
/// row by row, then all updates stay in integers with exact divisions.
inline size_t rank_fraction_free(const RatMatrix& input) {
  if (input.empty()) return 0;
  const size_t rows = input.size(), cols = input[0].size();
  std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols));
  for (size_t i = 0; i < rows; ++i) {
    mpz_class scale(1);
    for (size_t j = 0; j < cols; ++j) {
      mpz_class den = input[i][j].denominator();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
      scale = scale / g * den;
    }
    for (size_t j = 0; j < cols; ++j)
      m[i][j] = input[i][j].numerator() * (scale / input[i][j].denominator());
  }
  mpz_class prev(1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j) {
        mpz_class num = m[i][j] * m[r][c] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

}  // namespace amp1
