#include <gtest/gtest.h>

#include "lrc/lrc.hpp"
#include "oracles.hpp"

using namespace lrc;

namespace {

Construction build(std::size_t n, std::size_t k, std::size_t r, std::size_t delta, std::uint64_t q, std::uint64_t seed) {
  ConstructOptions o;
  o.seed = seed;
  return construct_almost_optimal(n, k, r, delta, Field::from_order(q), o);
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

TEST(Puncture, SmallExample) {
  const LinearCode c(Matrix::from_rows(Field::make(2), {{1, 0, 0}, {0, 1, 1}}));
  const auto res = puncture(c, LocalityAssignment({{1}, {2, 3}, {2, 3}}), 1);
  EXPECT_EQ(res.code.length(), 2u);
  EXPECT_EQ(res.code.dimension(), 1u);
  const auto words = oracle::all_codewords(res.code.generator());
  EXPECT_EQ(std::set<std::vector<Value>>(words.begin(), words.end()), (std::set<std::vector<Value>>{{0, 0}, {1, 1}}));
  EXPECT_EQ(min_distance(res.code).d, 2u);
  EXPECT_EQ(min_distance(c).d, 1u);
  EXPECT_EQ(res.assignment, LocalityAssignment({{1, 2}, {1, 2}}));
}

TEST(Puncture, KeepsExactlyTheVanishingCodewords) {
  Rng rng = make_rng({31});
  const Field f = Field::from_order(5);
  for (int t = 0; t < 20; ++t) {
    const Matrix g = oracle::random_full_rank(f, 3, 6, rng);
    const std::size_t coord = 1 + uniform_below(rng, 6);
    std::vector<std::vector<std::size_t>> sets(6, {1, 2, 3, 4, 5, 6});
    const auto res = puncture(LinearCode(g), LocalityAssignment(sets), coord);
    if (res.zero_column) continue;
    std::set<std::vector<Value>> expect;
    for (auto w : oracle::all_codewords(g)) {
      if (w[coord - 1] != 0) continue;
      w.erase(w.begin() + static_cast<long>(coord - 1));
      expect.insert(w);
    }
    const auto got = oracle::all_codewords(res.code.generator());
    EXPECT_EQ(std::set<std::vector<Value>>(got.begin(), got.end()), expect);
  }
}

TEST(Puncture, ZeroColumn) {
  const LinearCode c(Matrix::from_rows(Field::make(3), {{1, 0, 1, 2}, {0, 0, 1, 1}}));
  const auto res = puncture(c, LocalityAssignment({{1, 3, 4}, {2}, {1, 3, 4}, {1, 3, 4}}), 2);
  EXPECT_TRUE(res.zero_column);
  EXPECT_EQ(res.code.length(), 3u);
  EXPECT_EQ(res.code.dimension(), 1u);
}

TEST(Puncture, Contract) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto c = build(8, 4, 2, 3, 8, seed);
    const std::size_t d = min_distance(c.code).d;
    for (std::size_t coord = 1; coord <= 8; ++coord) {
      const auto p = puncture(c.code, c.assignment, coord);
      EXPECT_EQ(p.code.length(), 7u);
      EXPECT_EQ(p.code.dimension(), 3u);
      EXPECT_GE(min_distance(p.code).d, d);
      EXPECT_TRUE(verify_locality(p.code, p.assignment, 2, 3).all_pass);
    }
  }
}

TEST(Puncture, OptimalStaysOptimalWhenCeilingsAgree) {
  // ceil(4/2) == ceil(3/2)
  const auto c = build(8, 4, 2, 3, 256, 5);
  ASSERT_EQ(c.report.label, Label::kOptimal);
  const auto p = puncture(c.code, c.assignment);
  EXPECT_EQ(classify(p.code, p.assignment, 2, 3).label, Label::kOptimal);
}

TEST(Puncture, Errors) {
  const LinearCode c(Matrix::from_rows(Field::make(2), {{1, 1, 1}}));
  const LocalityAssignment a({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}});
  EXPECT_EQ(code_of([&] { puncture(c, a); }), ErrorCode::kDimensionTooSmall);
}

TEST(Enlarge, OptimalStaysOptimal) {
  const auto c = build(8, 4, 2, 3, 1024, 1);
  ASSERT_EQ(c.report.label, Label::kOptimal);
  EnlargeOptions o;
  o.seed = 9;
  const auto e = enlarge(c.code, c.assignment, 2, 3, 3, o);
  EXPECT_EQ(e.code.length(), 9u);
  EXPECT_EQ(e.code.dimension(), 5u);
  EXPECT_EQ(e.d, 3u);
  EXPECT_EQ(min_distance(e.code).d, 3u);
  EXPECT_TRUE(verify_locality(e.code, e.assignment, 3, 3).all_pass);
  EXPECT_EQ(e.assignment.set_of(9), (std::vector<std::size_t>{1, 2, 3, 4, 9}));
  EXPECT_EQ(classify(e.code, e.assignment, 3, 3).label, Label::kOptimal);
  EXPECT_EQ(e.witness.appended_row.size(), 8u);
  EXPECT_GE(e.witness.samples, 1u);
}

TEST(Enlarge, GeneratorShapeAndWitness) {
  const auto c = build(8, 4, 2, 3, 64, 2);
  const auto e = enlarge(c.code, c.assignment, 2, 3);
  const Matrix& g2 = e.code.generator();
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(g2.at(i, 8), 0u);
    for (std::size_t col = 0; col < 8; ++col) EXPECT_EQ(g2.at(i, col), c.code.generator().at(i, col));
  }
  EXPECT_EQ(g2.at(4, 8), 1u);
  // The row breaks every short relation.
  const Field& f = c.code.field();
  for (const auto& circ : circuits_by_greatest(c.code.generator(), 3)) {
    Value s = 0;
    for (std::size_t t = 0; t < circ.columns.size(); ++t) s = f.add(s, f.mul(circ.coeffs[t], e.witness.appended_row[circ.columns[t]]));
    EXPECT_NE(s, 0u);
  }
  // Distance from a to the input code is at least d.
  const std::size_t d = min_distance(c.code).d;
  for (const auto& w : oracle::all_codewords(c.code.generator())) {
    std::size_t dist = 0;
    for (std::size_t col = 0; col < 8; ++col) dist += w[col] != e.witness.appended_row[col];
    EXPECT_GE(dist, d);
  }
}

TEST(Enlarge, Deterministic) {
  const auto c = build(8, 4, 2, 3, 64, 4);
  EnlargeOptions o;
  o.seed = 17;
  EXPECT_EQ(enlarge(c.code, c.assignment, 2, 3, std::nullopt, o).witness.appended_row,
            enlarge(c.code, c.assignment, 2, 3, std::nullopt, o).witness.appended_row);
}

TEST(Enlarge, Errors) {
  const auto c = build(8, 4, 2, 3, 64, 0);
  EXPECT_EQ(code_of([&] { enlarge(c.code, c.assignment, 4, 3); }), ErrorCode::kRNoLessThanK);
  EXPECT_EQ(code_of([&] { enlarge(c.code, c.assignment, 2, 3, 4); }), ErrorCode::kInputNotVerified);
  EXPECT_EQ(code_of([&] { enlarge(c.code, c.assignment, 2, 4); }), ErrorCode::kInputNotVerified);
  EnlargeOptions o;
  o.max_samples = 0;
  EXPECT_EQ(code_of([&] { enlarge(c.code, c.assignment, 2, 3, std::nullopt, o); }), ErrorCode::kNoWitnessFound);
}
