#pragma once

// Quasi-uniform codes from subgroups of G = (Z_2^2)^k.
//
// An element of G is a 2k-bit string written left to right as in
// "111100"; character i of the string is bit i of the uint64_t. Coordinate
// i of a codeword is the coset g + G_i, labeled by the parity checks of
// G_i (a basis of its annihilator), which is a group isomorphism
// G / G_i -> Z_2^{codim}.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lrc/code.hpp"
#include "lrc/error.hpp"

namespace lrc {

using BitVec = std::uint64_t;

inline bool parity(BitVec x) { return std::popcount(x) & 1; }

inline BitVec parse_bits(std::string_view s) {
  if (s.size() > 64) fail(ErrorCode::kTooLarge, "bit string longer than 64");
  BitVec out = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') out |= BitVec{1} << i;
    else if (s[i] != '0') fail(ErrorCode::kParse, "bad bit string '" + std::string(s) + "'");
  }
  return out;
}

inline std::string format_bits(BitVec x, std::size_t bits) {
  std::string out(bits, '0');
  for (std::size_t i = 0; i < bits; ++i)
    if ((x >> i) & 1) out[i] = '1';
  return out;
}

/// GF(2) row space in reduced echelon form; the pivot of a row is its
/// lowest set bit (leftmost character).
class Gf2Basis {
 public:
  /// Adds v; returns false if it was already in the span.
  bool add(BitVec v) {
    v = reduce(v);
    if (v == 0) return false;
    const BitVec pivot = v & (~v + 1);
    for (auto& b : rows_)
      if (b & pivot) b ^= v;
    rows_.push_back(v);
    std::sort(rows_.begin(), rows_.end(), [](BitVec a, BitVec b) { return (a & (~a + 1)) < (b & (~b + 1)); });
    return true;
  }

  BitVec reduce(BitVec v) const {
    for (BitVec b : rows_) {
      const BitVec pivot = b & (~b + 1);
      if (v & pivot) v ^= b;
    }
    return v;
  }

  bool contains(BitVec v) const { return reduce(v) == 0; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<BitVec>& rows() const { return rows_; }

 private:
  std::vector<BitVec> rows_;
};

class BinarySubgroup {
 public:
  BinarySubgroup(std::size_t bits, const std::vector<BitVec>& generators) : bits_(bits) {
    if (bits_ > 64) fail(ErrorCode::kTooLarge, "ambient dimension above 64 bits");
    const BitVec mask = bits_ == 64 ? ~BitVec{0} : (BitVec{1} << bits_) - 1;
    for (BitVec g : generators) {
      if (g & ~mask) fail(ErrorCode::kDimensionMismatch, "generator wider than the ambient group");
      basis_.add(g);
    }
  }

  static BinarySubgroup from_strings(std::size_t bits, const std::vector<std::string>& gens) {
    std::vector<BitVec> v;
    for (const auto& s : gens) {
      if (s.size() != bits) fail(ErrorCode::kDimensionMismatch, "generator '" + s + "' is not " + std::to_string(bits) + " bits");
      v.push_back(parse_bits(s));
    }
    return BinarySubgroup(bits, v);
  }

  static BinarySubgroup trivial(std::size_t bits) { return BinarySubgroup(bits, {}); }

  static BinarySubgroup ambient(std::size_t bits) {
    std::vector<BitVec> units;
    for (std::size_t i = 0; i < bits; ++i) units.push_back(BitVec{1} << i);
    return BinarySubgroup(bits, units);
  }

  std::size_t bits() const { return bits_; }
  std::size_t dim() const { return basis_.rank(); }
  std::size_t codim() const { return bits_ - dim(); }
  const std::vector<BitVec>& basis() const { return basis_.rows(); }
  bool contains(BitVec x) const { return basis_.contains(x); }

  /// Annihilator {y : <x, y> = 0 for all x in this group}.
  BinarySubgroup dual() const {
    BitVec pivots = 0;
    for (BitVec b : basis()) pivots |= b & (~b + 1);
    std::vector<BitVec> gens;
    for (std::size_t f = 0; f < bits_; ++f) {
      const BitVec fb = BitVec{1} << f;
      if (pivots & fb) continue;
      BitVec y = fb;
      for (BitVec b : basis())
        if (b & fb) y |= b & (~b + 1);
      gens.push_back(y);
    }
    return BinarySubgroup(bits_, gens);
  }

  std::vector<std::string> basis_strings() const {
    std::vector<std::string> out;
    for (BitVec b : basis()) out.push_back(format_bits(b, bits_));
    return out;
  }

  friend bool operator==(const BinarySubgroup& a, const BinarySubgroup& b) {
    return a.bits_ == b.bits_ && a.basis() == b.basis();
  }

 private:
  std::size_t bits_;
  Gf2Basis basis_;
};

/// Intersection via annihilators: (A cap B)^perp = A^perp + B^perp.
inline BinarySubgroup subgroup_intersect(const std::vector<BinarySubgroup>& groups) {
  if (groups.empty()) fail(ErrorCode::kBadParams, "empty intersection");
  const std::size_t bits = groups.front().bits();
  std::vector<BitVec> checks;
  for (const auto& g : groups) {
    if (g.bits() != bits) fail(ErrorCode::kDimensionMismatch, "subgroups live in different ambient groups");
    auto d = g.dual();
    checks.insert(checks.end(), d.basis().begin(), d.basis().end());
  }
  return BinarySubgroup(bits, checks).dual();
}

/// Coordinates 1..n of a code C = {(g + G_1, ..., g + G_n)} over G = (Z_2^2)^k.
class QuasiUniformSpec {
 public:
  QuasiUniformSpec(std::size_t k, std::vector<BinarySubgroup> groups) : k_(k), groups_(std::move(groups)) {
    if (2 * k_ > 64) fail(ErrorCode::kTooLarge, "k above 32 does not fit 64-bit group elements");
    for (const auto& g : groups_)
      if (g.bits() != 2 * k_) fail(ErrorCode::kDimensionMismatch, "subgroup ambient dimension != 2k");
    for (const auto& g : groups_) checks_.push_back(g.dual().basis());
  }

  std::size_t k() const { return k_; }
  std::size_t bits() const { return 2 * k_; }
  std::size_t length() const { return groups_.size(); }
  const std::vector<BinarySubgroup>& groups() const { return groups_; }
  const BinarySubgroup& group(std::size_t symbol) const { return groups_.at(symbol - 1); }

  /// Parity-check rows labeling coordinate `symbol` (1-based).
  const std::vector<BitVec>& label_checks(std::size_t symbol) const { return checks_.at(symbol - 1); }

  /// log2 |C_X| = 2k - dim G_X = rank of the stacked parity checks of X.
  std::size_t projection_log2(const std::vector<std::size_t>& symbols) const {
    Gf2Basis b;
    for (std::size_t s : symbols)
      for (BitVec h : label_checks(s)) b.add(h);
    return b.rank();
  }

  BinarySubgroup intersection(const std::vector<std::size_t>& symbols) const {
    if (symbols.empty()) return BinarySubgroup::ambient(bits());
    std::vector<BinarySubgroup> gs;
    for (std::size_t s : symbols) gs.push_back(group(s));
    return subgroup_intersect(gs);
  }

 private:
  std::size_t k_;
  std::vector<BinarySubgroup> groups_;
  std::vector<std::vector<BitVec>> checks_;
};

/// Codewords packed into one word: symbol i occupies widths[i] bits at
/// offsets[i]. The set is XOR-closed.
class VectorLinearCode {
 public:
  VectorLinearCode(std::vector<std::size_t> widths, std::vector<BitVec> words) : widths_(std::move(widths)), words_(std::move(words)) {
    std::size_t off = 0;
    for (std::size_t w : widths_) {
      offsets_.push_back(off);
      off += w;
    }
    if (off > 64) fail(ErrorCode::kTooLarge, "codeword wider than 64 bits");
    std::sort(words_.begin(), words_.end());
    words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
  }

  std::size_t length() const { return widths_.size(); }
  std::size_t size() const { return words_.size(); }
  const std::vector<BitVec>& words() const { return words_; }
  const std::vector<std::size_t>& widths() const { return widths_; }

  /// log_4 |C|.
  double k_eff() const { return std::log2(static_cast<double>(words_.size())) / 2.0; }

  BitVec symbol(BitVec word, std::size_t sym) const {
    const std::size_t w = widths_.at(sym - 1);
    if (w == 0) return 0;
    return (word >> offsets_[sym - 1]) & ((BitVec{1} << w) - 1);
  }

  BitVec mask(const std::vector<std::size_t>& symbols) const {
    BitVec m = 0;
    for (std::size_t s : symbols) {
      const std::size_t w = widths_.at(s - 1);
      if (w) m |= ((BitVec{1} << w) - 1) << offsets_[s - 1];
    }
    return m;
  }

  /// |C_X| by projecting every codeword.
  std::size_t projection_size(const std::vector<std::size_t>& symbols) const {
    const BitVec m = mask(symbols);
    std::vector<BitVec> proj;
    proj.reserve(words_.size());
    for (BitVec w : words_) proj.push_back(w & m);
    std::sort(proj.begin(), proj.end());
    return static_cast<std::size_t>(std::unique(proj.begin(), proj.end()) - proj.begin());
  }

  /// A set is XOR-closed iff it is its own span, i.e. |set| = 2^rank.
  bool xor_closed() const {
    Gf2Basis b;
    for (BitVec w : words_) b.add(w);
    return b.rank() < 64 && words_.size() == (std::size_t{1} << b.rank()) &&
           std::binary_search(words_.begin(), words_.end(), BitVec{0});
  }

  /// Minimum number of differing symbols between distinct codewords.
  std::size_t min_distance() const {
    std::size_t best = length() + 1;
    for (BitVec w : words_) {
      if (w == 0) continue;
      std::size_t weight = 0;
      for (std::size_t s = 1; s <= length(); ++s) weight += symbol(w, s) != 0;
      best = std::min(best, weight);
    }
    return best > length() ? 0 : best;
  }

 private:
  std::vector<std::size_t> widths_;
  std::vector<std::size_t> offsets_;
  std::vector<BitVec> words_;
};

inline constexpr std::size_t kMaxEnumerationK = 8;

/// Enumerates {(g + G_1, ..., g + G_n) : g in G}; requires k <= 8.
inline VectorLinearCode code_from_groups(const QuasiUniformSpec& spec) {
  if (spec.k() > kMaxEnumerationK) fail(ErrorCode::kTooLarge, "enumeration limited to k <= 8 (|G| <= 4^8)");
  std::vector<std::size_t> widths;
  for (std::size_t s = 1; s <= spec.length(); ++s) widths.push_back(spec.label_checks(s).size());
  // The labeling is linear, so walk G in Gray-code order and XOR in the
  // image of the flipped unit vector.
  std::vector<BitVec> unit_images(spec.bits(), 0);
  for (std::size_t b = 0; b < spec.bits(); ++b) {
    BitVec img = 0;
    std::size_t off = 0;
    for (std::size_t s = 1; s <= spec.length(); ++s) {
      const auto& checks = spec.label_checks(s);
      for (std::size_t t = 0; t < checks.size(); ++t)
        if ((checks[t] >> b) & 1) img |= BitVec{1} << (off + t);
      off += checks.size();
    }
    unit_images[b] = img;
  }
  std::vector<BitVec> words;
  const std::uint64_t count = std::uint64_t{1} << spec.bits();
  words.reserve(count);
  BitVec cur = 0;
  words.push_back(cur);
  for (std::uint64_t i = 1; i < count; ++i) {
    cur ^= unit_images[static_cast<std::size_t>(std::countr_zero(i))];
    words.push_back(cur);
  }
  return VectorLinearCode(std::move(widths), std::move(words));
}

struct QuasiParams {
  std::size_t n = 0;
  double k_eff = 0;           // log_4 |C|
  std::size_t log2_size = 0;  // log_2 |C|
  std::size_t d = 0;
  bool degenerate = false;    // some coordinate is constant (G_i = G)
};

inline constexpr std::size_t kMaxSubsetScanLength = 20;

/// d = n - max{|X| : G_X strictly contains G_[n]} and |C| = |G| / |G_[n]|.
/// The scan extends X only while that containment is strict, since it
/// cannot become strict again for supersets.
inline QuasiParams quasi_params(const QuasiUniformSpec& spec) {
  const std::size_t n = spec.length();
  if (n > kMaxSubsetScanLength) fail(ErrorCode::kTooLarge, "subset scan limited to n <= 20");
  QuasiParams out;
  out.n = n;
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i + 1;
  out.log2_size = spec.projection_log2(all);
  out.k_eff = static_cast<double>(out.log2_size) / 2.0;
  for (std::size_t s = 1; s <= n; ++s) out.degenerate = out.degenerate || spec.group(s).codim() == 0;

  std::size_t best = 0;
  std::function<void(std::size_t, const Gf2Basis&, std::size_t)> dfs = [&](std::size_t start, const Gf2Basis& checks, std::size_t size) {
    best = std::max(best, size);
    for (std::size_t i = start; i < n; ++i) {
      if (size + (n - i) <= best) return;
      Gf2Basis next = checks;
      for (BitVec h : spec.label_checks(i + 1)) next.add(h);
      if (next.rank() < out.log2_size) dfs(i + 1, next, size + 1);
    }
  };
  dfs(0, Gf2Basis{}, 0);
  out.d = out.degenerate ? 0 : n - best;
  return out;
}

enum class Family { kC1_33, kC2_33, kC1_43 };

inline Family parse_family(std::string_view name) {
  if (name == "c1-33" || name == "C1_33") return Family::kC1_33;
  if (name == "c2-33" || name == "C2_33") return Family::kC2_33;
  if (name == "c1-43" || name == "C1_43") return Family::kC1_43;
  fail(ErrorCode::kBadFamily, "unknown family '" + std::string(name) + "' (expected c1-33, c2-33 or c1-43)");
}

inline const char* to_string(Family f) {
  switch (f) {
    case Family::kC1_33: return "c1-33";
    case Family::kC2_33: return "c2-33";
    case Family::kC1_43: return "c1-43";
  }
  return "?";
}

/// Nominal (n, k, d, r) of a family member.
struct FamilyParams {
  std::size_t n, k, d, r;
};

inline FamilyParams family_params(Family fam, std::size_t i) {
  switch (fam) {
    case Family::kC1_33: return {4 * i + 3, 3 * i + 1, 3, 3};
    case Family::kC2_33: return {4 * i + 4, 3 * i + 2, 3, 3};
    case Family::kC1_43: return {4 * i + 4, 3 * i + 1, 4, 3};
  }
  return {0, 0, 0, 0};
}

namespace detail {

// The six-bit subgroups of A = (Z_2^2)^3 used by every family.
inline std::vector<std::string> block_generators(int which) {
  switch (which) {
    case 1: return {"001000", "000100", "000010", "000001"};  // 00 x Z x Z
    case 2: return {"100000", "010000", "000010", "000001"};  // Z x 00 x Z
    case 3: return {"100000", "010000", "001000", "000100"};  // Z x Z x 00
    default: return {"111100", "110011", "010100", "010001"};
  }
}

class FamilyBuilder {
 public:
  FamilyBuilder(std::size_t i, std::size_t tail_bits) : i_(i), tail_(tail_bits) {}

  std::size_t bits() const { return 6 * i_ + tail_; }

  // O^j x six x O^{i-j-1} x tail
  BitVec embed(std::size_t j, std::string_view six, std::string_view tail) const {
    return parse_bits(six) << (6 * j) | parse_bits(tail) << (6 * i_);
  }

  BitVec tail_only(std::string_view tail) const { return parse_bits(tail) << (6 * i_); }

  // A^j x A_m x A^{i-j-1} x (Z_2^2)^{tail}
  BinarySubgroup block(std::size_t j, int which) const {
    std::vector<BitVec> gens;
    for (std::size_t b = 0; b < bits(); ++b)
      if (b < 6 * j || b >= 6 * j + 6) gens.push_back(BitVec{1} << b);
    for (const auto& s : block_generators(which)) gens.push_back(parse_bits(s) << (6 * j));
    return BinarySubgroup(bits(), gens);
  }

  BinarySubgroup units(const std::vector<std::size_t>& positions) const {
    std::vector<BitVec> gens;
    for (std::size_t b : positions) gens.push_back(BitVec{1} << b);
    return BinarySubgroup(bits(), gens);
  }

  // <O^j x six x O x tail : listed pairs, 0 <= j < i> plus fixed extras.
  BinarySubgroup per_block(const std::vector<std::pair<std::string, std::string>>& pairs, const std::vector<BitVec>& extra = {}) const {
    std::vector<BitVec> gens = extra;
    for (std::size_t j = 0; j < i_; ++j)
      for (const auto& [six, tail] : pairs) gens.push_back(embed(j, six, tail));
    return BinarySubgroup(bits(), gens);
  }

  // Pairs for every element of a 6-bit set given as a prefix pattern, e.g.
  // B_1 = 11 x Z x Z is ("11", position 0).
  static std::vector<std::string> fixed_symbol_set(std::size_t pos, std::string_view value) {
    std::vector<std::string> out;
    for (unsigned free = 0; free < 16; ++free) {
      std::string s(6, '0');
      std::size_t bit = 0;
      for (std::size_t sym = 0; sym < 3; ++sym) {
        if (sym == pos) {
          s[2 * sym] = value[0];
          s[2 * sym + 1] = value[1];
          continue;
        }
        for (int t = 0; t < 2; ++t) s[2 * sym + static_cast<std::size_t>(t)] = ((free >> bit++) & 1) ? '1' : '0';
      }
      out.push_back(s);
    }
    return out;
  }

 private:
  std::size_t i_;
  std::size_t tail_;
};

}  // namespace detail

inline constexpr std::size_t kMaxFamilyIndex = 10;

/// Subgroup lists of the three optimal vector-linear families over F_2^2.
inline QuasiUniformSpec family_build(Family fam, std::size_t i) {
  if (i < 1) fail(ErrorCode::kBadParams, "family index i must be >= 1");
  if (i > kMaxFamilyIndex) fail(ErrorCode::kTooLarge, "family index above 10 exceeds 64-bit group elements");
  const std::size_t tail = fam == Family::kC2_33 ? 4 : 2;
  const detail::FamilyBuilder fb(i, tail);
  std::vector<BinarySubgroup> gs;
  for (std::size_t j = 0; j < i; ++j)
    for (int which = 1; which <= 4; ++which) gs.push_back(fb.block(j, which));

  std::vector<std::size_t> head(6 * i);
  for (std::size_t b = 0; b < 6 * i; ++b) head[b] = b;
  const std::vector<std::pair<std::string, std::string>> shared33 = {
      {"011000", ""}, {"110100", ""}, {"110010", ""}, {"100001", ""}};
  auto with_tail = [](std::vector<std::pair<std::string, std::string>> pairs, const std::string& zero) {
    for (auto& p : pairs)
      if (p.second.empty()) p.second = zero;
    return pairs;
  };

  switch (fam) {
    case Family::kC1_33: {
      gs.push_back(fb.units(head));
      auto p2 = with_tail(shared33, "00");
      p2.push_back({"010000", "10"});
      p2.push_back({"110000", "01"});
      gs.push_back(fb.per_block(p2));
      auto p3 = with_tail(shared33, "00");
      p3.push_back({"110000", "10"});
      p3.push_back({"100000", "01"});
      gs.push_back(fb.per_block(p3));
      return QuasiUniformSpec(3 * i + 1, std::move(gs));
    }
    case Family::kC2_33: {
      auto g1 = head;
      g1.push_back(6 * i + 2);
      g1.push_back(6 * i + 3);
      gs.push_back(fb.units(g1));
      auto g2 = head;
      g2.push_back(6 * i);
      g2.push_back(6 * i + 1);
      gs.push_back(fb.units(g2));
      auto p3 = with_tail(shared33, "0000");
      p3.push_back({"100000", "1000"});
      p3.push_back({"010000", "0100"});
      gs.push_back(fb.per_block(p3, {fb.tail_only("1011"), fb.tail_only("0110")}));
      auto p4 = with_tail(shared33, "0000");
      p4.push_back({"100000", "0010"});
      p4.push_back({"010000", "0001"});
      gs.push_back(fb.per_block(p4, {fb.tail_only("1110"), fb.tail_only("1001")}));
      return QuasiUniformSpec(3 * i + 2, std::move(gs));
    }
    case Family::kC1_43: {
      auto sets = [&](std::size_t pos, const std::string& tail_b, const std::string& tail_c) {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (auto& s : detail::FamilyBuilder::fixed_symbol_set(pos, "11")) pairs.push_back({s, tail_b});
        for (auto& s : detail::FamilyBuilder::fixed_symbol_set(pos, "01")) pairs.push_back({s, tail_c});
        return pairs;
      };
      gs.push_back(fb.per_block(sets(0, "01", "11")));
      gs.push_back(fb.per_block(sets(1, "01", "11")));
      gs.push_back(fb.per_block(sets(2, "11", "01")));
      gs.push_back(fb.per_block({{"111100", "00"}, {"110011", "00"}, {"110000", "11"},
                                 {"010100", "00"}, {"010001", "00"}, {"010000", "01"}}));
      return QuasiUniformSpec(3 * i + 1, std::move(gs));
    }
  }
  fail(ErrorCode::kBadFamily, "unknown family");
}

/// Projection-cardinality repair test: S repairs every member iff
/// |C_{S \ {x}}| = |C_S| for all x in S.
template <typename ProjectionLog2>
bool set_repairs_all(const std::vector<std::size_t>& set, ProjectionLog2&& log2_size) {
  if (set.empty()) return false;
  const std::size_t full = log2_size(set);
  for (std::size_t x : set) {
    std::vector<std::size_t> rest;
    for (std::size_t s : set)
      if (s != x) rest.push_back(s);
    if (log2_size(rest) != full) return false;
  }
  return true;
}

struct VectorLocalityEntry {
  std::size_t symbol = 0;
  std::vector<std::size_t> set;
  bool pass = false;
};

struct VectorLocalityReport {
  std::vector<VectorLocalityEntry> entries;
  bool all_pass = false;
};

namespace detail {

template <typename ProjectionLog2>
VectorLocalityReport verify_vector_locality_impl(std::size_t n, const LocalityAssignment& a, std::size_t r, ProjectionLog2&& log2_size) {
  VectorLocalityReport rep;
  rep.all_pass = a.size() == n;
  for (std::size_t j = 1; j <= n && j <= a.size(); ++j) {
    VectorLocalityEntry e;
    e.symbol = j;
    e.set = a.set_of(j);
    const bool in_range = std::all_of(e.set.begin(), e.set.end(), [&](std::size_t s) { return s >= 1 && s <= n; });
    e.pass = in_range && std::binary_search(e.set.begin(), e.set.end(), j) && e.set.size() <= r + 1 &&
             set_repairs_all(e.set, log2_size);
    rep.all_pass = rep.all_pass && e.pass;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace detail

/// Locality with delta = 2 via subgroup intersections.
inline VectorLocalityReport verify_vector_locality(const QuasiUniformSpec& spec, const LocalityAssignment& a, std::size_t r) {
  return detail::verify_vector_locality_impl(spec.length(), a, r, [&](const std::vector<std::size_t>& x) { return spec.projection_log2(x); });
}

/// Locality with delta = 2 via direct projection of the codewords.
inline VectorLocalityReport verify_vector_locality(const VectorLinearCode& code, const LocalityAssignment& a, std::size_t r) {
  return detail::verify_vector_locality_impl(code.length(), a, r, [&](const std::vector<std::size_t>& x) {
    return static_cast<std::size_t>(std::countr_zero(code.projection_size(x)));
  });
}

/// For each symbol, the first set (smallest size, then lexicographic) of at
/// most max_size symbols containing it that repairs all its members.
/// `fixed` supplies known sets for some symbols; those are taken as given.
inline std::optional<LocalityAssignment> discover_vector_locality(const QuasiUniformSpec& spec, std::size_t max_size,
                                                                  const std::vector<std::vector<std::size_t>>& fixed = {}) {
  const std::size_t n = spec.length();
  auto log2_size = [&](const std::vector<std::size_t>& x) { return spec.projection_log2(x); };
  std::vector<std::vector<std::size_t>> sets(n);
  for (std::size_t j = 1; j <= n; ++j) {
    if (j <= fixed.size() && !fixed[j - 1].empty()) {
      sets[j - 1] = fixed[j - 1];
      continue;
    }
    bool found = false;
    for (std::size_t size = 2; size <= max_size && !found; ++size) {
      detail::for_each_combination(n - 1, size - 1, [&](std::span<const std::size_t> others) {
        std::vector<std::size_t> s{j};
        for (std::size_t o : others) s.push_back(o + 1 >= j ? o + 2 : o + 1);
        std::sort(s.begin(), s.end());
        if (set_repairs_all(s, log2_size)) {
          sets[j - 1] = s;
          found = true;
          return false;
        }
        return true;
      });
    }
    if (!found) return std::nullopt;
  }
  return LocalityAssignment(std::move(sets));
}

/// Block sets {4j+1, ..., 4j+4} for j < i, tail symbols by search over
/// sets of size <= r + 1 = 4.
inline std::optional<LocalityAssignment> family_locality(const QuasiUniformSpec& spec, std::size_t i) {
  std::vector<std::vector<std::size_t>> fixed(spec.length());
  for (std::size_t j = 0; j < i; ++j)
    for (std::size_t t = 1; t <= 4; ++t) fixed[4 * j + t - 1] = {4 * j + 1, 4 * j + 2, 4 * j + 3, 4 * j + 4};
  return discover_vector_locality(spec, 4, fixed);
}

struct QuasiVerification {
  QuasiParams params;
  std::size_t r = 0;           // max |S_j| - 1 over the assignment
  std::optional<long> bound;   // n - k - ceil(k/r) + 2 when k is integral
  bool optimal = false;
  VectorLocalityReport locality;
};

/// Parameters, locality (delta = 2) and the vector-bound comparison.
inline QuasiVerification quasi_verify(const QuasiUniformSpec& spec, const LocalityAssignment& a) {
  QuasiVerification out;
  out.params = quasi_params(spec);
  out.r = a.max_set_size() > 0 ? a.max_set_size() - 1 : 0;
  out.locality = verify_vector_locality(spec, a, out.r);
  const bool integral_k = out.params.log2_size % 2 == 0;
  const std::size_t k = out.params.log2_size / 2;
  if (integral_k && out.r >= 1 && out.r <= k && k < out.params.n) {
    out.bound = d_opt_vector(out.params.n, k, out.r);
    out.optimal = out.locality.all_pass && !out.params.degenerate && static_cast<long>(out.params.d) == *out.bound;
  }
  return out;
}

}  // namespace lrc
