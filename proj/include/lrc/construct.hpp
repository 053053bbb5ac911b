#pragma once

// Block-structured LRC construction. The n symbols are split into blocks
// of sizes s_1 <= ... <= s_a; block j carries t_j = s_j - delta + 1 random
// columns E_j followed by delta - 1 columns E_j B_j, where B_j is a Cauchy
// matrix. Any t_j columns of a block span it, so each block repairs up to
// delta - 1 erasures locally.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "lrc/code.hpp"
#include "lrc/error.hpp"
#include "lrc/linalg.hpp"
#include "lrc/random.hpp"

namespace lrc {

class PartitionSpec {
 public:
  PartitionSpec(std::vector<std::size_t> sizes, std::size_t delta) : sizes_(std::move(sizes)), delta_(delta) {
    if (sizes_.empty()) fail(ErrorCode::kBadParams, "partition has no blocks");
    if (delta_ < 2) fail(ErrorCode::kBadParams, "delta must be >= 2");
    std::sort(sizes_.begin(), sizes_.end());
    if (sizes_.front() < delta_) fail(ErrorCode::kBadParams, "every block needs at least delta symbols");
  }

  const std::vector<std::size_t>& sizes() const { return sizes_; }
  std::size_t delta() const { return delta_; }
  std::size_t blocks() const { return sizes_.size(); }
  std::size_t length() const { return std::accumulate(sizes_.begin(), sizes_.end(), std::size_t{0}); }
  std::size_t info_size(std::size_t j) const { return sizes_[j] - delta_ + 1; }
  std::size_t total_info() const { return length() - blocks() * (delta_ - 1); }

  /// delta <= s_j <= r + delta - 1 and sum t_j >= k.
  void validate(std::size_t n, std::size_t k, std::size_t r) const {
    if (length() != n) fail(ErrorCode::kBadParams, "partition sizes sum to " + std::to_string(length()) + ", not n=" + std::to_string(n));
    if (sizes_.back() > r + delta_ - 1) fail(ErrorCode::kBadParams, "block larger than r + delta - 1");
    if (total_info() < k) fail(ErrorCode::kBadParams, "rank condition violated: n - a(delta-1) < k");
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < sizes_.size(); ++i) out += (i ? "," : "") + std::to_string(sizes_[i]);
    return out;
  }

 private:
  std::vector<std::size_t> sizes_;
  std::size_t delta_;
};

/// ceil(n / (r + delta - 1)) blocks, as many of full size as possible; the
/// shortfall is taken from the leading blocks without going below delta.
inline PartitionSpec default_partition(std::size_t n, std::size_t k, std::size_t r, std::size_t delta) {
  if (delta < 2 || r < 1 || k < 1 || k >= n) fail(ErrorCode::kBadParams, "need delta >= 2, r >= 1, 1 <= k < n");
  const std::size_t full = r + delta - 1;
  const std::size_t a = ceil_div(n, full);
  if (n < a * (delta - 1) + k) fail(ErrorCode::kInfeasible, "k exceeds n - ceil(n/(r+delta-1))(delta-1)");
  std::vector<std::size_t> sizes(a, full);
  std::size_t shortfall = a * full - n;
  for (auto& s : sizes) {
    const std::size_t take = std::min(shortfall, full - delta);
    s -= take;
    shortfall -= take;
  }
  if (shortfall > 0) fail(ErrorCode::kInfeasible, "n cannot be split into blocks of size in [delta, r+delta-1]");
  PartitionSpec p(std::move(sizes), delta);
  if (p.total_info() < k) fail(ErrorCode::kInfeasible, "rank condition violated");
  return p;
}

struct DistanceFloor {
  std::size_t z = 0;
  std::size_t value = 0;  // n - (k-1) - z(delta-1)
};

/// z is the largest block count whose cumulative t_j stays <= k - 1.
inline DistanceFloor distance_floor(const PartitionSpec& p, std::size_t k) {
  std::size_t z = 0, acc = 0;
  while (z < p.blocks() && acc + p.info_size(z) <= k - 1) acc += p.info_size(z++);
  const std::size_t n = p.length();
  return {z, n - (k - 1) - z * (p.delta() - 1)};
}

struct RandomLrc {
  Matrix generator;
  LocalityAssignment assignment;
  PartitionSpec partition;
  DistanceFloor floor;
  // Block-contiguous symbol j (1-based) sits at position permutation[j-1]
  // (1-based) of the (E | F) column order.
  std::vector<std::size_t> permutation;
};

namespace detail {

inline std::vector<Value> distinct_elements(Rng& rng, const Field& f, std::size_t count) {
  std::vector<Value> out;
  while (out.size() < count) {
    const auto v = static_cast<Value>(uniform_below(rng, f.order()));
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

}  // namespace detail

/// One draw of the randomized construction; not verified.
inline RandomLrc random_lrc(std::size_t n, std::size_t k, std::size_t r, std::size_t delta, const Field& f,
                            const PartitionSpec& p, std::uint64_t seed, std::uint64_t attempt = 0) {
  if (r >= k) fail(ErrorCode::kBadParams, "construction needs r < k");
  if (p.delta() != delta) fail(ErrorCode::kBadParams, "partition built for a different delta");
  p.validate(n, k, r);
  const std::size_t largest = p.sizes().back();
  if (f.order() < largest) fail(ErrorCode::kFieldTooSmall, "Cauchy blocks need q >= largest block size");

  const std::size_t info = p.total_info();
  Rng e_rng = make_rng({seed, attempt, 0});
  Rng b_rng = make_rng({seed, attempt, 1});
  Matrix e(f, k, info);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < info; ++c) e.at(i, c) = static_cast<Value>(uniform_below(e_rng, f.order()));

  Matrix g(f, k, n);
  std::vector<std::vector<std::size_t>> sets(n);
  std::vector<std::size_t> permutation(n);
  std::size_t pos = 0, e_offset = 0, f_offset = info;
  for (std::size_t j = 0; j < p.blocks(); ++j) {
    const std::size_t t = p.info_size(j), w = delta - 1;
    auto pts = detail::distinct_elements(b_rng, f, t + w);
    std::vector<Value> xs(pts.begin(), pts.begin() + static_cast<long>(t)), ys;
    for (std::size_t i = t; i < t + w; ++i) ys.push_back(f.neg(pts[i]));
    const Matrix b = cauchy_block(f, xs, ys);

    std::vector<std::size_t> members;
    for (std::size_t c = 0; c < t; ++c) {
      for (std::size_t i = 0; i < k; ++i) g.at(i, pos) = e.at(i, e_offset + c);
      permutation[pos] = e_offset + c + 1;
      members.push_back(++pos);
    }
    for (std::size_t c = 0; c < w; ++c) {
      for (std::size_t i = 0; i < k; ++i) {
        Value v = 0;
        for (std::size_t l = 0; l < t; ++l) v = f.add(v, f.mul(e.at(i, e_offset + l), b.at(l, c)));
        g.at(i, pos) = v;
      }
      permutation[pos] = f_offset + c + 1;
      members.push_back(++pos);
    }
    for (std::size_t s : members) sets[s - 1] = members;
    e_offset += t;
    f_offset += w;
  }
  return {std::move(g), LocalityAssignment(std::move(sets)), p, distance_floor(p, k), std::move(permutation)};
}

struct ConstructionReport {
  std::size_t n = 0, k = 0, r = 0, delta = 0;
  std::string field;
  PartitionSpec partition{{2}, 2};
  DistanceFloor floor;
  std::optional<std::size_t> measured_d;
  long d_opt = 0;
  std::optional<long> gap;
  std::optional<Label> label;
  std::uint64_t attempts = 0;
  std::uint64_t seed = 0;
  bool verified = false;
  std::vector<std::size_t> permutation;
};

struct Construction {
  LinearCode code;
  LocalityAssignment assignment;
  ConstructionReport report;
};

/// Failure of construct_almost_optimal; carries the best candidate seen.
class ConstructionFailed : public Error {
 public:
  ConstructionFailed(const std::string& what, std::optional<Construction> best)
      : Error(ErrorCode::kRetriesExhausted, what), best_(std::move(best)) {}
  const std::optional<Construction>& best() const { return best_; }

 private:
  std::optional<Construction> best_;
};

/// Candidate checks shared by the construction and the pass-rate studies:
/// full rank, block locality, exact d >= floor.
struct CandidateCheck {
  bool full_rank = false;
  bool locality = false;
  std::optional<std::size_t> d;
  bool meets_floor = false;
};

inline CandidateCheck check_candidate(const RandomLrc& cand, std::size_t r, std::size_t delta, const DistanceOptions& opts = {}) {
  CandidateCheck out;
  out.full_rank = rank(cand.generator) == cand.generator.rows();
  if (!out.full_rank) return out;
  LinearCode code(cand.generator);
  out.locality = verify_locality(code, cand.assignment, r, delta).all_pass;
  out.d = min_distance(code, opts).d;
  out.meets_floor = out.locality && *out.d >= cand.floor.value;
  return out;
}

struct ConstructOptions {
  std::optional<PartitionSpec> partition;
  std::uint64_t seed = 0;
  std::uint64_t max_retries = 32;
  DistanceOptions distance;
};

/// Draws with (seed, attempt) for attempt = 0, 1, ... and returns the first
/// draw that is full rank, verifies locality and reaches the distance floor.
inline Construction construct_almost_optimal(std::size_t n, std::size_t k, std::size_t r, std::size_t delta, const Field& f,
                                             const ConstructOptions& opts = {}) {
  const PartitionSpec p = opts.partition ? *opts.partition : default_partition(n, k, r, delta);
  std::optional<Construction> best;
  for (std::uint64_t attempt = 0; attempt < opts.max_retries; ++attempt) {
    RandomLrc cand = random_lrc(n, k, r, delta, f, p, opts.seed, attempt);
    const CandidateCheck check = check_candidate(cand, r, delta, opts.distance);
    if (!check.full_rank) continue;

    ConstructionReport rep;
    rep.n = n;
    rep.k = k;
    rep.r = r;
    rep.delta = delta;
    rep.field = f.describe();
    rep.partition = p;
    rep.floor = cand.floor;
    rep.measured_d = check.d;
    rep.d_opt = d_opt(n, k, r, delta);
    rep.gap = rep.d_opt - static_cast<long>(*check.d);
    rep.label = label_for_gap(*rep.gap, delta);
    rep.attempts = attempt + 1;
    rep.seed = opts.seed;
    rep.verified = check.meets_floor;
    rep.permutation = cand.permutation;
    Construction c{LinearCode(std::move(cand.generator)), std::move(cand.assignment), std::move(rep)};
    if (c.report.verified) return c;
    if (check.locality && (!best || *best->report.measured_d < *c.report.measured_d)) best = std::move(c);
  }
  if (best) best->report.attempts = opts.max_retries;
  throw ConstructionFailed("no verified code in " + std::to_string(opts.max_retries) + " attempts", std::move(best));
}

}  // namespace lrc
