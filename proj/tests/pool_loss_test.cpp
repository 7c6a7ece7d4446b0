#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "uavcover/pool_loss.hpp"

using namespace uavcover;

namespace {

GridMatrix random_int(std::size_t n, std::mt19937_64& rng) {
  GridMatrix m = GridMatrix::square(n);
  std::uniform_int_distribution<int> v(0, 3);
  for (auto& c : m.cells()) c = v(rng) == 3 ? double(v(rng)) : 0.0;
  return m;
}

}  // namespace

TEST(SumPool, FilterOneIsIdentity) {
  std::mt19937_64 rng(1);
  const auto m = random_int(9, rng);
  EXPECT_EQ(sum_pool(m, 1), m);
}

TEST(SumPool, TwoByTwoOnesPadsAfter) {
  // One zero cell of padding after each axis and none before.
  const GridMatrix ones(2, 2, CellKind::integer, {1, 1, 1, 1});
  EXPECT_EQ(sum_pool(ones, 2), GridMatrix(2, 2, CellKind::integer, {4, 2, 2, 1}));
  EXPECT_EQ(sum_pool(ones, 2), oracle::naive_sum_pool(ones, 2));
}

TEST(SumPool, ZeroStaysZero) {
  const auto z = GridMatrix::square(16);
  for (std::size_t f : {1u, 2u, 4u, 8u, 16u}) EXPECT_EQ(sum_pool(z, f), z);
}

TEST(SumPool, OutOfRange) {
  const auto z = GridMatrix::square(4);
  EXPECT_THROW(sum_pool(z, 0), std::invalid_argument);
  EXPECT_THROW(sum_pool(z, 5), std::invalid_argument);
}

TEST(SumPool, MatchesNaiveOracle) {
  std::mt19937_64 rng(2);
  for (std::size_t n : {8u, 13u, 32u}) {
    const auto m = random_int(n, rng);
    for (std::size_t f = 1; f <= n; f *= 2) ASSERT_EQ(sum_pool(m, f), oracle::naive_sum_pool(m, f));
  }
}

TEST(PoolLoss, EqualMatricesGiveZero) {
  std::mt19937_64 rng(3);
  const auto k = random_int(32, rng);
  const auto res = pool_loss(k, k);
  EXPECT_EQ(res.total, 0.0);
  for (const auto& l : res.per_level) EXPECT_EQ(l.loss, 0.0);
  ASSERT_EQ(res.per_level.size(), 6u);
  EXPECT_EQ(res.per_level.back().filter, 32u);
}

TEST(PoolLoss, SymmetricAndMatchesOracle) {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 10; ++rep) {
    const auto k = random_int(16, rng), y = random_int(16, rng);
    const auto a = pool_loss(k, y), b = pool_loss(y, k);
    EXPECT_EQ(a.total, b.total);
    EXPECT_EQ(a.total, oracle::naive_pool_loss(k, y, {1, 2, 4, 8, 16}));
    EXPECT_EQ(a.total > 0.0, !(k == y));
  }
}

TEST(PoolLoss, DisplacementIncreasesLoss) {
  auto k = GridMatrix::square(16);
  k(4, 4) = 1;
  double prev = 0.0;
  for (std::size_t col : {5u, 8u, 12u}) {
    auto y = GridMatrix::square(16);
    y(4, col) = 1;
    const double total = pool_loss(k, y).total;
    EXPECT_GT(total, prev) << "col " << col;
    prev = total;
  }
}

TEST(PoolLoss, LevelsSumToTotal) {
  std::mt19937_64 rng(5);
  const auto k = random_int(64, rng), y = random_int(64, rng);
  const auto res = pool_loss(k, y);
  double s = 0.0;
  for (const auto& l : res.per_level) s += l.loss;
  EXPECT_EQ(s, res.total);
  EXPECT_EQ(res.per_level.size(), 7u);
}

TEST(PoolLoss, ConfigValidation) {
  const auto a = GridMatrix::square(16);
  EXPECT_THROW(pool_loss(a, GridMatrix::square(8)), std::invalid_argument);
  EXPECT_THROW(pool_loss(a, a, PoolLossConfig{{1, 3}}), std::invalid_argument);
  EXPECT_THROW(pool_loss(a, a, PoolLossConfig{{2, 1}}), std::invalid_argument);
  EXPECT_THROW(pool_loss(a, a, PoolLossConfig{{1, 32}}), std::invalid_argument);
  EXPECT_THROW(pool_loss(a, a, PoolLossConfig{{}}), std::invalid_argument);
  EXPECT_EQ(PoolLossConfig::for_grid(256).filters.size(), 7u);
  EXPECT_EQ(PoolLossConfig::for_grid(10).filters, (std::vector<std::size_t>{1, 2, 4, 8}));
}
