#pragma once

// Slow reference computations that share no code paths with the library
// beyond Field::add / Field::mul on single elements.

#include <cstdint>
#include <set>
#include <vector>

#include "lrc/lrc.hpp"

namespace oracle {

using lrc::Field;
using lrc::Matrix;
using lrc::Value;

/// Schoolbook product of base-p digit polynomials, reduced by the full
/// modulus (leading term included in its encoding).
inline Value poly_mul_mod(std::uint32_t p, std::uint32_t m, std::uint64_t modulus, Value a, Value b) {
  std::vector<std::uint64_t> x(m), y(m), mod(m + 1), prod(2 * m, 0);
  for (std::uint32_t i = 0; i < m; ++i, a /= p, b /= p) {
    x[i] = a % p;
    y[i] = b % p;
  }
  for (std::uint32_t i = 0; i <= m; ++i, modulus /= p) mod[i] = modulus % p;
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
  for (std::uint32_t d = 2 * m - 1; d >= m; --d) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    for (std::uint32_t i = 0; i <= m; ++i) prod[d - m + i] = (prod[d - m + i] + p * p - c * mod[i] % p) % p;
  }
  Value out = 0;
  for (std::uint32_t i = m; i-- > 0;) out = out * p + static_cast<Value>(prod[i]);
  return out;
}

/// Every codeword, by enumerating all q^k messages.
inline std::vector<std::vector<Value>> all_codewords(const Matrix& g) {
  const Field& f = g.field();
  const std::size_t k = g.rows(), n = g.cols();
  std::vector<Value> msg(k, 0);
  std::vector<std::vector<Value>> out;
  while (true) {
    std::vector<Value> w(n, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = 0; c < n; ++c) w[c] = f.add(w[c], f.mul(msg[i], g.at(i, c)));
    out.push_back(std::move(w));
    std::size_t i = 0;
    while (i < k && ++msg[i] == f.order()) msg[i++] = 0;
    if (i == k) break;
  }
  return out;
}

inline std::size_t weight(const std::vector<Value>& w) {
  std::size_t c = 0;
  for (Value v : w) c += v != 0;
  return c;
}

/// Smallest nonzero weight over all codewords; 0 if the code is {0}.
inline std::size_t naive_distance(const Matrix& g) {
  std::size_t best = 0;
  for (const auto& w : all_codewords(g)) {
    const std::size_t wt = weight(w);
    if (wt && (!best || wt < best)) best = wt;
  }
  return best;
}

/// log_q of the number of distinct row-space vectors.
inline std::size_t span_rank(const Matrix& g) {
  const auto words = all_codewords(g);
  const std::set<std::vector<Value>> uniq(words.begin(), words.end());
  std::size_t r = 0;
  for (std::size_t s = uniq.size(); s > 1; s /= g.field().order()) ++r;
  return r;
}

/// Laplace expansion along the first row.
inline Value laplace_det(const Matrix& m) {
  const Field& f = m.field();
  const std::size_t n = m.rows();
  if (n == 1) return m.at(0, 0);
  Value acc = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix minor(f, n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j)
        if (j != c) minor.at(i - 1, jj++) = m.at(i, j);
    Value term = f.mul(m.at(0, c), laplace_det(minor));
    acc = c % 2 ? f.sub(acc, term) : f.add(acc, term);
  }
  return acc;
}

inline Matrix random_matrix(const Field& f, std::size_t k, std::size_t n, lrc::Rng& rng) {
  Matrix m(f, k, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < n; ++c) m.at(i, c) = static_cast<Value>(lrc::uniform_below(rng, f.order()));
  return m;
}

inline Matrix random_full_rank(const Field& f, std::size_t k, std::size_t n, lrc::Rng& rng) {
  while (true) {
    Matrix m = random_matrix(f, k, n, rng);
    if (lrc::rank(m) == k) return m;
  }
}

}  // namespace oracle
