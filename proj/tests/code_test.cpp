#include <gtest/gtest.h>

#include <cmath>

#include "lrc/lrc.hpp"
#include "oracles.hpp"

using namespace lrc;

namespace {

Matrix hamming74() {
  return Matrix::from_rows(Field::make(2), {{1, 0, 0, 0, 1, 1, 0},
                                            {0, 1, 0, 0, 0, 1, 1},
                                            {0, 0, 1, 0, 1, 1, 1},
                                            {0, 0, 0, 1, 1, 0, 1}});
}

// Vandermonde rows alpha_j^i over distinct points: an MDS [n, k] code.
LinearCode reed_solomon(const Field& f, std::size_t n, std::size_t k) {
  Matrix g(f, k, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < k; ++i) g.at(i, j) = f.pow(static_cast<Value>(j), i);
  return LinearCode(g);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kParse;
}

}  // namespace

TEST(Bounds, DOpt) {
  EXPECT_EQ(d_opt(7, 4, 3, 2), 3);
  EXPECT_EQ(d_opt(16, 10, 5, 3), 5);
  EXPECT_EQ(d_opt(8, 4, 2, 3), 3);
  EXPECT_EQ(d_opt(10, 4, 2, 3), 5);
  EXPECT_EQ(code_of([] { d_opt(8, 4, 5, 3); }), ErrorCode::kBadParams);
  EXPECT_EQ(code_of([] { d_opt(8, 4, 2, 1); }), ErrorCode::kBadParams);
  EXPECT_EQ(code_of([] { d_opt(4, 4, 2, 2); }), ErrorCode::kBadParams);
}

TEST(Bounds, DOptVector) {
  EXPECT_EQ(d_opt_vector(7, 4, 3), 3);
  EXPECT_EQ(d_opt_vector(8, 4, 3), 4);
  for (std::size_t n = 3; n < 12; ++n)
    for (std::size_t k = 1; k < n; ++k) EXPECT_EQ(d_opt_vector(n, k, k), static_cast<long>(n - k + 1));
  // delta = 2 makes the two bounds coincide.
  for (std::size_t n = 3; n < 12; ++n)
    for (std::size_t k = 1; k < n; ++k)
      for (std::size_t r = 1; r <= k; ++r) EXPECT_EQ(d_opt(n, k, r, 2), d_opt_vector(n, k, r));
}

TEST(Bounds, SphereVolume) {
  EXPECT_EQ(sphere_volume(2, 3, 1), 4);
  EXPECT_EQ(sphere_volume(7, 9, 0), 1);
  EXPECT_EQ(sphere_volume(3, 4, 2), 33);
  EXPECT_EQ(sphere_volume(2, 10, 10), 1024);
  EXPECT_EQ(sphere_volume(1024, 40, 40), BigInt(1) << 400);
}

TEST(Bounds, SphereVolumeUpperBound) {
  for (std::uint64_t q : {2u, 3u, 16u, 256u})
    for (std::size_t n = 1; n <= 24; ++n)
      for (std::size_t s = 0; s <= n; ++s) {
        BigInt central = 1;
        for (std::size_t i = 0; i < n / 2; ++i) central = central * (n - i) / (i + 1);
        BigInt qs = 1;
        for (std::size_t i = 0; i < s; ++i) qs *= q;
        EXPECT_LE(sphere_volume(q, n, s), (1 + s) * central * qs) << q << " " << n << " " << s;
      }
}

TEST(Bounds, ProductLowerBound) {
  // prod (x - c_j) >= x^n - sum c_j x^(n-1) for 0 <= c_j <= x.
  Rng rng = make_rng({21});
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 1 + uniform_below(rng, 8);
    const long double x = static_cast<long double>(uniform_below(rng, 1000));
    long double prod = 1, sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const long double c = x == 0 ? 0 : static_cast<long double>(uniform_below(rng, static_cast<std::uint64_t>(x) + 1));
      prod *= x - c;
      sum += c;
    }
    const long double rhs = std::pow(x, n) - sum * std::pow(x, n - 1);
    EXPECT_GE(prod, rhs - 1e-9L * std::pow(x, n));
  }
}

TEST(MinDistance, Examples) {
  const Field f2 = Field::make(2);
  Matrix ii(f2, 3, 6);
  for (std::size_t i = 0; i < 3; ++i) ii.at(i, i) = ii.at(i, i + 3) = 1;
  EXPECT_EQ(min_distance(LinearCode(ii)).d, 2u);
  EXPECT_EQ(min_distance(LinearCode(hamming74())).d, 3u);
  EXPECT_EQ(oracle::naive_distance(hamming74()), 3u);
  for (std::size_t n : {2u, 5u, 9u}) {
    Matrix rep(Field::make(3), 1, n);
    for (std::size_t c = 0; c < n; ++c) rep.at(0, c) = 1;
    EXPECT_EQ(min_distance(LinearCode(rep)).d, n);
  }
  EXPECT_EQ(min_distance(reed_solomon(Field::from_order(16), 12, 5)).d, 8u);
}

TEST(MinDistance, MethodsAgreeWithOracle) {
  Rng rng = make_rng({22});
  for (std::uint64_t q : {2u, 3u, 4u, 7u, 16u}) {
    const Field f = Field::from_order(q);
    for (int t = 0; t < 15; ++t) {
      const std::size_t k = 1 + uniform_below(rng, q <= 4 ? 5 : 3);
      const std::size_t n = k + 1 + uniform_below(rng, 6);
      const Matrix g = oracle::random_full_rank(f, k, n, rng);
      const std::size_t expect = oracle::naive_distance(g);
      const LinearCode code(g);
      EXPECT_EQ(min_distance(code, {kDefaultDistanceBudget, DistanceMethod::kProjective}).d, expect);
      EXPECT_EQ(min_distance(code, {kDefaultDistanceBudget, DistanceMethod::kFlats}).d, expect);
      EXPECT_EQ(min_distance(code).d, expect);
      EXPECT_GE(sampled_distance_upper_bound(code, 50, rng), expect);
    }
  }
}

TEST(MinDistance, RowOperationsPreserveD) {
  Rng rng = make_rng({23});
  const Field f = Field::from_order(8);
  for (int t = 0; t < 20; ++t) {
    const Matrix g = oracle::random_full_rank(f, 3, 7, rng);
    EXPECT_EQ(min_distance(LinearCode(g)).d, min_distance(LinearCode(rref(g).reduced)).d);
  }
}

TEST(MinDistance, Budget) {
  const LinearCode rs = reed_solomon(Field::from_order(256), 20, 6);
  DistanceOptions tiny{1000, DistanceMethod::kProjective};
  EXPECT_EQ(code_of([&] { min_distance(rs, tiny); }), ErrorCode::kBudgetExceeded);
  DistanceOptions flats{1u << 20, DistanceMethod::kAuto};
  const auto res = min_distance(rs, flats);
  EXPECT_EQ(res.method, DistanceMethod::kFlats);
  EXPECT_EQ(res.d, 15u);
  EXPECT_EQ(code_of([&] { min_distance(rs, {10, DistanceMethod::kAuto}); }), ErrorCode::kBudgetExceeded);
}

TEST(LinearCode, Validation) {
  const Field f = Field::make(2);
  EXPECT_EQ(code_of([&] { LinearCode(Matrix::identity(f, 3)); }), ErrorCode::kBadParams);
  EXPECT_EQ(code_of([&] { LinearCode(Matrix::from_rows(f, {{1, 1, 0}, {1, 1, 0}})); }), ErrorCode::kBadParams);
  const LinearCode h(hamming74());
  const std::vector<Value> msg{1, 0, 1, 1};
  EXPECT_TRUE(h.is_codeword(h.encode(msg)));
  EXPECT_FALSE(h.is_codeword(std::vector<Value>{1, 0, 0, 0, 0, 0, 0}));
}

TEST(Locality, RepetitionPairs) {
  const LinearCode c(Matrix::from_rows(Field::make(2), {{1, 0, 1, 0}, {0, 1, 0, 1}}));
  const LocalityAssignment a({{1, 3}, {2, 4}, {1, 3}, {2, 4}});
  const auto rep = verify_locality(c, a, 1, 2);
  EXPECT_TRUE(rep.all_pass);
  for (const auto& e : rep.entries) EXPECT_EQ(e.projected_distance, 2u);
}

TEST(Locality, MdsWindows) {
  const std::size_t n = 9, k = 4;
  const LinearCode rs = reed_solomon(Field::from_order(16), n, k);
  std::vector<std::vector<std::size_t>> sets;
  for (std::size_t j = 1; j <= n; ++j) {
    std::vector<std::size_t> s;
    for (std::size_t t = 0; t <= k; ++t) s.push_back((j - 1 + t) % n + 1);
    sets.push_back(s);
  }
  EXPECT_TRUE(verify_locality(rs, LocalityAssignment(sets), k, 2).all_pass);
}

TEST(Locality, Failures) {
  const LinearCode h(hamming74());
  // A set missing its own symbol, one too large, one too weak.
  // Columns 1, 3, 4, 5 sum to zero.
  const LocalityAssignment a({{2, 3}, {1, 2, 3, 4, 5, 6, 7}, {1, 3, 4, 5}, {4}, {1, 3, 4, 5}, {6}, {7}});
  const auto rep = verify_locality(h, a, 3, 2);
  EXPECT_FALSE(rep.all_pass);
  EXPECT_FALSE(rep.entries[0].pass);
  EXPECT_FALSE(rep.entries[1].pass);
  EXPECT_TRUE(rep.entries[2].pass);
  EXPECT_FALSE(rep.entries[3].pass);
}

TEST(Locality, ProjectionUsesOwnRank) {
  // Columns 1,2 of this code carry rank 1: the projection is a [2,1,2] code.
  const LinearCode c(Matrix::from_rows(Field::make(3), {{1, 2, 0, 1}, {0, 0, 1, 1}}));
  EXPECT_EQ(projected_distance(c, {1, 2}), 2u);
  EXPECT_EQ(projected_distance(c, {3, 4}), 1u);
}

TEST(Locality, Discovery) {
  const LinearCode c(Matrix::from_rows(Field::make(2), {{1, 0, 1, 0}, {0, 1, 0, 1}}));
  auto a = discover_locality(c, 1, 2);
  ASSERT_TRUE(a);
  EXPECT_EQ(*a, LocalityAssignment({{1, 3}, {2, 4}, {1, 3}, {2, 4}}));
  EXPECT_FALSE(discover_locality(LinearCode(hamming74()), 1, 2));
  EXPECT_EQ(code_of([] { discover_locality(LinearCode(hamming74()), 3, 3, 5); }), ErrorCode::kBudgetExceeded);
}

class RepairTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ConstructOptions o;
    o.seed = 3;
    built = construct_almost_optimal(8, 4, 2, 3, Field::from_order(256), o);
  }
  std::optional<Construction> built;
};

TEST_F(RepairTest, RoundTrips) {
  const auto& c = built->code;
  Rng rng = make_rng({24});
  for (int t = 0; t < 100; ++t) {
    std::vector<Value> msg(4);
    for (auto& x : msg) x = static_cast<Value>(uniform_below(rng, 256));
    const auto word = c.encode(msg);
    ReceivedWord rx(word.begin(), word.end());
    // up to 2 erasures in each block {1..4}, {5..8}
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t e = uniform_below(rng, 3); e > 0; --e) rx[4 * b + uniform_below(rng, 4)].reset();
    EXPECT_EQ(repair(c, built->assignment, rx, 3), word);
  }
}

TEST_F(RepairTest, SingleErasureDeltaTwoGroup) {
  const LinearCode c(Matrix::from_rows(Field::make(5), {{1, 0, 1, 2, 0, 0}, {0, 1, 1, 3, 0, 0}, {0, 0, 0, 0, 1, 1}}));
  const LocalityAssignment a({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}, {2, 3, 4}, {5, 6}, {5, 6}});
  ASSERT_TRUE(verify_locality(c, a, 2, 2).all_pass);
  const std::vector<Value> msg{2, 4, 1};
  const auto word = c.encode(msg);
  for (std::size_t j = 0; j < 6; ++j) {
    ReceivedWord rx(word.begin(), word.end());
    rx[j].reset();
    EXPECT_EQ(repair(c, a, rx, 2), word);
  }
}

TEST_F(RepairTest, Failures) {
  const auto& c = built->code;
  const auto word = c.encode(std::vector<Value>{1, 2, 3, 4});
  ReceivedWord rx(word.begin(), word.end());
  rx[0].reset();
  rx[1].reset();
  rx[2].reset();
  EXPECT_EQ(code_of([&] { repair(c, built->assignment, rx, 3); }), ErrorCode::kRepairImpossible);

  ReceivedWord bad(word.begin(), word.end());
  bad[0].reset();
  *bad[5] ^= 1;
  EXPECT_EQ(code_of([&] { repair(c, built->assignment, bad, 3); }), ErrorCode::kNotACodeword);
}

TEST(Classify, Labels) {
  EXPECT_EQ(classify_distance(8, 4, 2, 3, 3).label, Label::kOptimal);
  const auto c = classify_distance(10, 4, 2, 3, 3);
  EXPECT_EQ(c.d_opt, 5);
  EXPECT_EQ(c.gap, 2);
  EXPECT_EQ(c.label, Label::kAlmostOptimal);
  EXPECT_EQ(classify_distance(10, 4, 2, 3, 2).label, Label::kGap);
  EXPECT_EQ(classify_distance(8, 4, 2, 3, 4).label, Label::kBoundViolation);
  EXPECT_STREQ(to_string(Label::kAlmostOptimal), "almost-optimal");
}

TEST(Classify, RequiresVerifiedLocality) {
  const LinearCode h(hamming74());
  const LocalityAssignment bad({{1}, {2}, {3}, {4}, {5}, {6}, {7}});
  EXPECT_EQ(code_of([&] { classify(h, bad, 2, 2); }), ErrorCode::kInputNotVerified);
}
