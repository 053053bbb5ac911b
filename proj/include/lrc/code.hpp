#pragma once

// Linear codes, the optimality bounds, minimum distance, (r, delta)-locality
// verification, erasure repair and classification against the bound.
//
// Symbols are 1-indexed at this layer: symbol j is column j-1 of G.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lrc/error.hpp"
#include "lrc/gf.hpp"
#include "lrc/linalg.hpp"

namespace lrc {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultDistanceBudget = std::uint64_t{1} << 26;

/// Per-symbol repair sets. sets()[j - 1] is S_j, sorted, 1-based symbols.
class LocalityAssignment {
 public:
  LocalityAssignment() = default;
  explicit LocalityAssignment(std::vector<std::vector<std::size_t>> sets) : sets_(std::move(sets)) {
    for (auto& s : sets_) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
  }

  std::size_t size() const { return sets_.size(); }
  const std::vector<std::size_t>& set_of(std::size_t symbol) const { return sets_.at(symbol - 1); }
  const std::vector<std::vector<std::size_t>>& sets() const { return sets_; }

  /// Largest |S_j|.
  std::size_t max_set_size() const {
    std::size_t out = 0;
    for (const auto& s : sets_) out = std::max(out, s.size());
    return out;
  }

  friend bool operator==(const LocalityAssignment&, const LocalityAssignment&) = default;

 private:
  std::vector<std::vector<std::size_t>> sets_;
};

/// A k-dimensional code of length n given by a full-rank k x n generator.
class LinearCode {
 public:
  explicit LinearCode(Matrix generator) : g_(std::move(generator)) {
    if (g_.rows() < 1 || g_.rows() >= g_.cols())
      fail(ErrorCode::kBadParams, "need 1 <= k < n, got k=" + std::to_string(g_.rows()) + " n=" + std::to_string(g_.cols()));
    if (rank(g_) != g_.rows()) fail(ErrorCode::kBadParams, "generator matrix is not full row rank");
  }

  const Matrix& generator() const { return g_; }
  const Field& field() const { return g_.field(); }
  std::size_t length() const { return g_.cols(); }
  std::size_t dimension() const { return g_.rows(); }

  std::vector<Value> encode(std::span<const Value> message) const { return g_.left_multiply(message); }

  bool is_codeword(std::span<const Value> word) const {
    if (word.size() != length()) return false;
    const Matrix gt = g_.transpose();
    std::vector<std::size_t> cols(dimension());
    std::iota(cols.begin(), cols.end(), 0);
    return in_span(gt, cols, word).has_value();
  }

 private:
  Matrix g_;
};

inline std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

/// Singleton-like bound for (r, delta)-locality:
/// n - k - (ceil(k/r) - 1)(delta - 1) + 1.
inline long d_opt(std::size_t n, std::size_t k, std::size_t r, std::size_t delta) {
  if (delta < 2 || r < 1 || r > k || k >= n)
    fail(ErrorCode::kBadParams, "d_opt needs delta >= 2 and 1 <= r <= k < n");
  return static_cast<long>(n) - static_cast<long>(k) - static_cast<long>((ceil_div(k, r) - 1) * (delta - 1)) + 1;
}

/// The delta = 2 bound, also valid for vector-linear codes:
/// n - k - ceil(k/r) + 2. k may be fractional for vector-linear codes, so
/// the caller passes it as log_|A| |C| already rounded where needed.
inline long d_opt_vector(std::size_t n, std::size_t k, std::size_t r) {
  if (r < 1 || r > k || k >= n) fail(ErrorCode::kBadParams, "d_opt_vector needs 1 <= r <= k < n");
  return static_cast<long>(n) - static_cast<long>(k) - static_cast<long>(ceil_div(k, r)) + 2;
}

/// |B_s(x)| = sum_{i<=s} C(n,i) (q-1)^i, exact.
inline BigInt sphere_volume(std::uint64_t q, std::size_t n, std::size_t s) {
  if (s > n) fail(ErrorCode::kBadParams, "sphere radius exceeds length");
  BigInt total = 0, binom = 1, power = 1;
  for (std::size_t i = 0; i <= s; ++i) {
    total += binom * power;
    binom = binom * (n - i) / (i + 1);
    power *= (q - 1);
  }
  return total;
}

enum class DistanceMethod { kAuto, kProjective, kFlats };

inline const char* to_string(DistanceMethod m) {
  switch (m) {
    case DistanceMethod::kAuto: return "auto";
    case DistanceMethod::kProjective: return "projective";
    case DistanceMethod::kFlats: return "flats";
  }
  return "?";
}

struct DistanceOptions {
  std::uint64_t budget = kDefaultDistanceBudget;
  DistanceMethod method = DistanceMethod::kAuto;
};

struct DistanceResult {
  std::size_t d = 0;  // 0 when the code has no nonzero codeword
  DistanceMethod method = DistanceMethod::kProjective;
  std::uint64_t work = 0;  // messages or column subsets enumerated
};

namespace detail {

inline long double projective_count(std::uint64_t q, std::size_t rho) {
  return (std::pow(static_cast<long double>(q), static_cast<long double>(rho)) - 1.0L) / static_cast<long double>(q - 1);
}

inline long double binomial_ld(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  long double out = 1;
  for (std::size_t i = 0; i < k; ++i) out = out * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
  return out;
}

// Minimum weight over one message per projective class: messages whose
// first nonzero entry is 1. Basis rows come from the RREF so rank-deficient
// inputs are handled.
inline DistanceResult distance_projective(const Matrix& m) {
  auto ech = rref(m);
  const std::size_t rho = ech.pivot_cols.size();
  const std::size_t n = m.cols();
  const Field& f = m.field();
  const Value q = f.order();
  DistanceResult res{n + 1, DistanceMethod::kProjective, 0};
  if (rho == 0) return {0, DistanceMethod::kProjective, 0};

  std::vector<Value> word(n), digits;
  for (std::size_t lead = 0; lead < rho; ++lead) {
    // word = row[lead] + sum_{t > lead} digits[t] * row[t], odometer over digits.
    for (std::size_t c = 0; c < n; ++c) word[c] = ech.reduced.at(lead, c);
    const std::size_t tail = rho - lead - 1;
    digits.assign(tail, 0);
    while (true) {
      ++res.work;
      std::size_t w = 0;
      for (Value x : word) w += (x != 0);
      res.d = std::min(res.d, w);
      // Increment the odometer; digit i drives row lead + 1 + i.
      std::size_t i = 0;
      for (; i < tail; ++i) {
        const std::size_t r = lead + 1 + i;
        const Value old = digits[i];
        const Value next = (old + 1 == q) ? 0 : old + 1;
        const Value delta = f.sub(next, old);
        for (std::size_t c = 0; c < n; ++c) {
          const Value g = ech.reduced.at(r, c);
          if (g != 0) word[c] = f.add(word[c], f.mul(delta, g));
        }
        digits[i] = next;
        if (next != 0) break;
      }
      if (i == tail) break;
    }
  }
  return res;
}

// d = n - max{|X| : rank(columns X) < rho}. Maximal such X are the flats of
// rank rho - 1, each spanned by some independent (rho - 1)-subset.
inline DistanceResult distance_flats(const Matrix& m) {
  const std::size_t rho = rank(m);
  const std::size_t n = m.cols();
  if (rho == 0) return {0, DistanceMethod::kFlats, 0};
  std::vector<std::vector<Value>> cols(n);
  for (std::size_t c = 0; c < n; ++c) cols[c] = m.column(c);
  std::size_t best = 0;
  std::uint64_t work = 0;
  for_each_combination(n, rho - 1, [&](std::span<const std::size_t> subset) {
    ++work;
    SpanBuilder span(m.field(), m.rows());
    for (std::size_t c : subset)
      if (!span.add(cols[c])) return true;  // dependent, its flat is found elsewhere
    std::size_t count = 0;
    for (std::size_t c = 0; c < n; ++c) count += span.contains(cols[c]);
    best = std::max(best, count);
    return true;
  });
  return {n - best, DistanceMethod::kFlats, work};
}

}  // namespace detail

/// Exact minimum distance of the row space of m (m need not be full rank).
/// kAuto picks whichever exact method enumerates less, subject to budget.
inline DistanceResult matrix_min_distance(const Matrix& m, const DistanceOptions& opts = {}) {
  const std::size_t rho = rank(m);
  const long double proj = detail::projective_count(m.field().order(), rho);
  const long double flats = detail::binomial_ld(m.cols(), rho == 0 ? 0 : rho - 1);
  const long double budget = static_cast<long double>(opts.budget);
  auto run = [&](DistanceMethod method) {
    return method == DistanceMethod::kProjective ? detail::distance_projective(m) : detail::distance_flats(m);
  };
  switch (opts.method) {
    case DistanceMethod::kProjective:
      if (proj > budget) fail(ErrorCode::kBudgetExceeded, "projective enumeration needs " + std::to_string(static_cast<double>(proj)) + " messages");
      return run(DistanceMethod::kProjective);
    case DistanceMethod::kFlats:
      if (flats > budget) fail(ErrorCode::kBudgetExceeded, "flat enumeration needs " + std::to_string(static_cast<double>(flats)) + " subsets");
      return run(DistanceMethod::kFlats);
    case DistanceMethod::kAuto: break;
  }
  // Weigh by per-item cost: a message costs ~n, a subset ~n * rho * rows.
  const long double proj_cost = proj * m.cols();
  const long double flats_cost = flats * m.cols() * std::max<std::size_t>(rho, 1) * m.rows();
  const bool proj_ok = proj <= budget, flats_ok = flats <= budget;
  if (!proj_ok && !flats_ok) fail(ErrorCode::kBudgetExceeded, "both exact distance methods exceed the enumeration budget");
  if (proj_ok && (!flats_ok || proj_cost <= flats_cost)) return run(DistanceMethod::kProjective);
  return run(DistanceMethod::kFlats);
}

inline DistanceResult min_distance(const LinearCode& code, const DistanceOptions& opts = {}) {
  return matrix_min_distance(code.generator(), opts);
}

/// Non-exact fallback: the least weight among sampled nonzero codewords is
/// an upper bound on d.
template <typename Rng>
std::size_t sampled_distance_upper_bound(const LinearCode& code, std::size_t samples, Rng& rng) {
  const Value q = code.field().order();
  std::size_t best = code.length();
  std::vector<Value> msg(code.dimension());
  for (std::size_t s = 0; s < samples; ++s) {
    bool nonzero = false;
    for (auto& x : msg) {
      x = static_cast<Value>(rng() % q);
      nonzero |= x != 0;
    }
    if (!nonzero) continue;
    auto w = code.encode(msg);
    best = std::min<std::size_t>(best, static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](Value v) { return v != 0; })));
  }
  return best;
}

inline std::vector<std::size_t> to_columns(const std::vector<std::size_t>& symbols) {
  std::vector<std::size_t> out;
  out.reserve(symbols.size());
  for (std::size_t s : symbols) out.push_back(s - 1);
  return out;
}

struct SymbolLocality {
  std::size_t symbol = 0;
  std::vector<std::size_t> set;
  std::optional<std::size_t> projected_distance;  // nullopt: projection is the zero code
  bool pass = false;
};

struct LocalityReport {
  std::vector<SymbolLocality> entries;
  bool all_pass = false;
};

/// Distance of the code punctured to the given 1-based symbols, using the
/// projection's own rank. nullopt when every projected codeword is zero.
inline std::optional<std::size_t> projected_distance(const LinearCode& code, const std::vector<std::size_t>& symbols) {
  const auto cols = to_columns(symbols);
  auto res = matrix_min_distance(code.generator().select_columns(cols));
  if (res.d == 0) return std::nullopt;
  return res.d;
}

/// Checks each S_j: contains j, |S_j| <= r + delta - 1, and the restricted
/// code has minimum distance >= delta.
inline LocalityReport verify_locality(const LinearCode& code, const LocalityAssignment& a, std::size_t r, std::size_t delta) {
  LocalityReport report;
  report.all_pass = a.size() == code.length();
  const std::size_t n = code.length();
  for (std::size_t j = 1; j <= n; ++j) {
    SymbolLocality entry;
    entry.symbol = j;
    if (j > a.size()) {
      report.entries.push_back(entry);
      report.all_pass = false;
      continue;
    }
    entry.set = a.set_of(j);
    const bool in_range = std::all_of(entry.set.begin(), entry.set.end(), [&](std::size_t s) { return s >= 1 && s <= n; });
    const bool well_formed = in_range && std::binary_search(entry.set.begin(), entry.set.end(), j) &&
                             entry.set.size() <= r + delta - 1;
    if (in_range) entry.projected_distance = projected_distance(code, entry.set);
    entry.pass = well_formed && (!entry.projected_distance || *entry.projected_distance >= delta);
    report.all_pass = report.all_pass && entry.pass;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

/// Bounded search for a locality assignment: for each symbol, the first
/// subset (smallest size, then lexicographic) of size <= r + delta - 1
/// containing it whose projection has distance >= delta. Returns nullopt if
/// some symbol has no such set; throws BudgetExceeded past work_cap subsets.
inline std::optional<LocalityAssignment> discover_locality(const LinearCode& code, std::size_t r, std::size_t delta,
                                                           std::uint64_t work_cap = 1'000'000) {
  const std::size_t n = code.length();
  const std::size_t max_size = std::min(n, r + delta - 1);
  std::uint64_t work = 0;
  std::vector<std::vector<std::size_t>> sets;
  for (std::size_t j = 1; j <= n; ++j) {
    std::optional<std::vector<std::size_t>> found;
    for (std::size_t size = 1; size <= max_size && !found; ++size) {
      detail::for_each_combination(n - 1, size - 1, [&](std::span<const std::size_t> others) {
        if (++work > work_cap) fail(ErrorCode::kBudgetExceeded, "locality discovery exceeded its work cap");
        std::vector<std::size_t> s{j};
        for (std::size_t o : others) s.push_back(o + 1 >= j ? o + 2 : o + 1);
        std::sort(s.begin(), s.end());
        auto pd = projected_distance(code, s);
        if (!pd || *pd >= delta) {
          found = s;
          return false;
        }
        return true;
      });
    }
    if (!found) return std::nullopt;
    sets.push_back(*found);
  }
  return LocalityAssignment(std::move(sets));
}

using ReceivedWord = std::vector<std::optional<Value>>;

/// Fills erasures from each erased symbol's own repair set. Every S_j of an
/// erased j may hold at most delta - 1 erasures.
inline std::vector<Value> repair(const LinearCode& code, const LocalityAssignment& a, const ReceivedWord& word, std::size_t delta) {
  const std::size_t n = code.length();
  if (word.size() != n) fail(ErrorCode::kDimensionMismatch, "received word has wrong length");
  if (a.size() != n) fail(ErrorCode::kDimensionMismatch, "locality assignment has wrong length");
  const Field& f = code.field();
  const Matrix& g = code.generator();

  std::vector<Value> out(n, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    if (!word[j - 1]) {
      const auto& set = a.set_of(j);
      const auto erased = std::count_if(set.begin(), set.end(), [&](std::size_t s) { return !word[s - 1]; });
      if (static_cast<std::size_t>(erased) >= delta)
        fail(ErrorCode::kRepairImpossible, "repair set of symbol " + std::to_string(j) + " has " + std::to_string(erased) + " erasures");
    } else {
      out[j - 1] = *word[j - 1];
    }
  }
  for (std::size_t j = 1; j <= n; ++j) {
    if (word[j - 1]) continue;
    std::vector<std::size_t> known;
    for (std::size_t s : a.set_of(j))
      if (word[s - 1]) known.push_back(s - 1);
    auto coeffs = in_span(g, known, g.column(j - 1));
    if (!coeffs) fail(ErrorCode::kRepairImpossible, "symbol " + std::to_string(j) + " is not determined by its surviving repair set");
    Value v = 0;
    for (std::size_t t = 0; t < known.size(); ++t) v = f.add(v, f.mul((*coeffs)[t], out[known[t]]));
    out[j - 1] = v;
  }
  if (!code.is_codeword(out)) fail(ErrorCode::kNotACodeword, "surviving symbols are inconsistent with the code");
  return out;
}

enum class Label { kOptimal, kAlmostOptimal, kGap, kBoundViolation };

inline const char* to_string(Label l) {
  switch (l) {
    case Label::kOptimal: return "optimal";
    case Label::kAlmostOptimal: return "almost-optimal";
    case Label::kGap: return "gap";
    case Label::kBoundViolation: return "bound-violation";
  }
  return "?";
}

struct Classification {
  std::size_t d = 0;
  long d_opt = 0;
  long gap = 0;
  Label label = Label::kGap;
};

inline Label label_for_gap(long gap, std::size_t delta) {
  if (gap < 0) return Label::kBoundViolation;
  if (gap == 0) return Label::kOptimal;
  if (gap <= static_cast<long>(delta) - 1) return Label::kAlmostOptimal;
  return Label::kGap;
}

inline Classification classify_distance(std::size_t n, std::size_t k, std::size_t r, std::size_t delta, std::size_t d) {
  Classification c;
  c.d = d;
  c.d_opt = d_opt(n, k, r, delta);
  c.gap = c.d_opt - static_cast<long>(d);
  c.label = label_for_gap(c.gap, delta);
  return c;
}

/// Gap to the bound; requires the locality assignment to verify.
inline Classification classify(const LinearCode& code, const LocalityAssignment& a, std::size_t r, std::size_t delta,
                               const DistanceOptions& opts = {}) {
  if (!verify_locality(code, a, r, delta).all_pass)
    fail(ErrorCode::kInputNotVerified, "locality assignment does not verify for the given (r, delta)");
  const auto d = min_distance(code, opts).d;
  return classify_distance(code.length(), code.dimension(), r, delta, d);
}

}  // namespace lrc
