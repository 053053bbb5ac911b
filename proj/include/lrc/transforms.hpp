#pragma once

// Code modifications that trade length, dimension and locality:
//   enlarge:  (n, k, d, r, delta) -> (n+1, k+1, d, r+1, delta)
//   puncture: (n, k, d, r, delta) -> (n-1, k-1, d' >= d, r, delta)

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "lrc/code.hpp"
#include "lrc/error.hpp"
#include "lrc/linalg.hpp"
#include "lrc/random.hpp"

namespace lrc {

struct EnlargeWitness {
  std::vector<Value> appended_row;     // the vector a
  std::size_t circuits_checked = 0;    // relations a must avoid
  std::uint64_t samples = 0;           // candidates drawn, including the winner
  std::uint64_t rejected_by_output_check = 0;
};

struct EnlargeResult {
  LinearCode code;
  LocalityAssignment assignment;
  EnlargeWitness witness;
  std::size_t d = 0;
};

struct EnlargeOptions {
  std::uint64_t seed = 0;
  std::uint64_t max_samples = 100'000;
  DistanceOptions distance;
};

/// Circuits of size 2..max_size whose greatest column is j, for every j.
inline std::vector<Circuit> circuits_by_greatest(const Matrix& g, std::size_t max_size) {
  std::vector<Circuit> out;
  for (std::size_t j = 0; j < g.cols(); ++j)
    for (auto& c : circuits_through(g, j, max_size))
      if (c.columns.size() >= 2 && c.columns.back() == j) out.push_back(std::move(c));
  return out;
}

/// Appends a row a and a unit column: G2 = [[G, 0], [a, 1]]. The row is
/// drawn by rejection sampling until it breaks every circuit relation of
/// size <= r + 1 (so old repair groups stay valid) and lies at distance
/// >= d from the code. The output is verified before it is returned.
inline EnlargeResult enlarge(const LinearCode& code, const LocalityAssignment& a, std::size_t r, std::size_t delta,
                             std::optional<std::size_t> d = std::nullopt, const EnlargeOptions& opts = {}) {
  const std::size_t n = code.length(), k = code.dimension();
  if (r >= k) fail(ErrorCode::kRNoLessThanK, "enlarging needs r < k");
  if (!verify_locality(code, a, r, delta).all_pass)
    fail(ErrorCode::kInputNotVerified, "input does not verify (r, delta)-locality");
  const std::size_t measured = min_distance(code, opts.distance).d;
  if (d && *d != measured)
    fail(ErrorCode::kInputNotVerified, "declared d=" + std::to_string(*d) + " but measured d=" + std::to_string(measured));

  const Matrix& g = code.generator();
  const Field& f = code.field();
  const auto circuits = circuits_by_greatest(g, std::min(r + 1, n));

  // Output assignment: S_j + {n+1}; symbol n+1 reuses S_1 + {n+1}.
  std::vector<std::vector<std::size_t>> sets = a.sets();
  for (auto& s : sets) s.push_back(n + 1);
  sets.push_back(sets.front());
  LocalityAssignment out_assignment(std::move(sets));

  EnlargeWitness witness;
  witness.circuits_checked = circuits.size();
  std::vector<Value> row(n);
  for (std::uint64_t sample = 0; sample < opts.max_samples; ++sample) {
    ++witness.samples;
    Rng rng = make_rng({opts.seed, sample});
    for (auto& x : row) x = static_cast<Value>(uniform_below(rng, f.order()));

    const bool breaks_all = std::all_of(circuits.begin(), circuits.end(), [&](const Circuit& c) {
      Value s = 0;
      for (std::size_t t = 0; t < c.columns.size(); ++t) s = f.add(s, f.mul(c.coeffs[t], row[c.columns[t]]));
      return s != 0;
    });
    if (!breaks_all) continue;

    Matrix extended(f, k + 1, n);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = 0; c < n; ++c) extended.at(i, c) = g.at(i, c);
    for (std::size_t c = 0; c < n; ++c) extended.at(k, c) = row[c];
    if (rank(extended) != k + 1) continue;  // a inside the code
    if (matrix_min_distance(extended, opts.distance).d < measured) continue;

    Matrix g2(f, k + 1, n + 1);
    for (std::size_t i = 0; i <= k; ++i)
      for (std::size_t c = 0; c < n; ++c) g2.at(i, c) = extended.at(i, c);
    g2.at(k, n) = 1;
    LinearCode out(std::move(g2));
    if (!verify_locality(out, out_assignment, r + 1, delta).all_pass) {
      ++witness.rejected_by_output_check;
      continue;
    }
    witness.appended_row = row;
    const std::size_t d_out = min_distance(out, opts.distance).d;
    return {std::move(out), std::move(out_assignment), std::move(witness), d_out};
  }
  fail(ErrorCode::kNoWitnessFound, "no admissible row found in " + std::to_string(opts.max_samples) + " samples");
}

struct PunctureResult {
  LinearCode code;
  LocalityAssignment assignment;
  bool zero_column = false;  // coord was identically zero; an extra row was dropped
};

/// Keeps the codewords vanishing at `coord` and deletes that coordinate.
/// Realized by pivoting on column coord so one row is nonzero there, then
/// deleting that row and the column.
inline PunctureResult puncture(const LinearCode& code, const LocalityAssignment& a, std::size_t coord = 1) {
  const std::size_t n = code.length(), k = code.dimension();
  if (k < 2) fail(ErrorCode::kDimensionTooSmall, "puncturing needs k >= 2");
  if (coord < 1 || coord > n) fail(ErrorCode::kBadParams, "coordinate out of range");
  if (a.size() != n) fail(ErrorCode::kDimensionMismatch, "locality assignment has wrong length");
  const std::size_t c0 = coord - 1;
  const Field& f = code.field();
  Matrix g = code.generator();

  std::size_t pivot = 0;
  while (pivot < k && g.at(pivot, c0) == 0) ++pivot;
  const bool zero_column = pivot == k;
  if (zero_column) {
    pivot = k - 1;  // all codewords already vanish; any row can go
  } else {
    const Value inv = f.inv(g.at(pivot, c0));
    for (std::size_t i = 0; i < k; ++i) {
      if (i == pivot || g.at(i, c0) == 0) continue;
      const Value factor = f.mul(g.at(i, c0), inv);
      for (std::size_t c = 0; c < n; ++c) g.at(i, c) = f.sub(g.at(i, c), f.mul(factor, g.at(pivot, c)));
    }
  }

  std::vector<std::size_t> keep_rows, keep_cols;
  for (std::size_t i = 0; i < k; ++i)
    if (i != pivot) keep_rows.push_back(i);
  for (std::size_t c = 0; c < n; ++c)
    if (c != c0) keep_cols.push_back(c);
  Matrix reduced = g.select_rows(keep_rows).select_columns(keep_cols);

  std::vector<std::vector<std::size_t>> sets;
  for (std::size_t j = 1; j <= n; ++j) {
    if (j == coord) continue;
    std::vector<std::size_t> s;
    for (std::size_t x : a.set_of(j)) {
      if (x == coord) continue;
      s.push_back(x > coord ? x - 1 : x);
    }
    sets.push_back(std::move(s));
  }
  return {LinearCode(std::move(reduced)), LocalityAssignment(std::move(sets)), zero_column};
}

}  // namespace lrc
