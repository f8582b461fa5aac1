#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "maxarity/arity.hpp"
#include "oracle/oracle.hpp"

namespace maxarity {
namespace {

using namespace testing;

TEST(DepthBound, Formula) {
  EXPECT_EQ(depth_bound_for(1), 1u);
  EXPECT_EQ(depth_bound_for(2), 2u);
  EXPECT_EQ(depth_bound_for(3), 3u);
  EXPECT_EQ(depth_bound_for(4), 3u);
  EXPECT_EQ(depth_bound_for(5), 4u);
  EXPECT_EQ(depth_bound_for(8), 4u);
  EXPECT_EQ(depth_bound_for(9), 5u);
}

TEST(MinimalArity, Fixtures) {
  const std::map<std::string, std::size_t> expected = {
      {"G1", 3},      {"G2", 3},      {"G3", 2},     {"G4", 3},
      {"seven_max", 2}, {"pair_sum", 2}, {"affine", 1}, {"max_xy", 2},
      {"shifted", 3}, {"relu1", 2},   {"relu3", 4}};
  for (const auto& [name, f] : all_fixtures()) {
    auto cert = minimal_arity(f);
    ASSERT_TRUE(expected.count(name)) << name;
    EXPECT_EQ(cert.k_star, expected.at(name)) << name;
    EXPECT_EQ(cert.depth_bound, depth_bound_for(cert.k_star)) << name;
    EXPECT_LE(cert.k_star, f.arity()) << name;
    EXPECT_EQ(cert.witness.has_value(), cert.k_star > 1) << name;
  }
}

TEST(MinimalArity, ReluMaxNeedsFullArity) {
  for (std::size_t n = 1; n <= 4; ++n) {
    EXPECT_EQ(minimal_arity(relu_max(n)).k_star, n + 1) << n;
  }
}

TEST(MinimalArity, WitnessIsGenuine) {
  for (const auto& [name, f] : all_fixtures()) {
    auto cert = minimal_arity(f);
    if (!cert.witness) continue;
    const auto& w = *cert.witness;
    EXPECT_EQ(w.flag.length() + 2, cert.k_star) << name;
    EXPECT_NE(w.first_value, w.second_value) << name;
    GradientField field(f);
    if (w.flag.length() == 0) {
      EXPECT_EQ(field.at(w.first), w.first_value) << name;
      EXPECT_EQ(field.at(w.second), w.second_value) << name;
    } else {
      EXPECT_EQ(oracle::delta_by_shrinking(field, w.flag, w.first), w.first_value) << name;
      EXPECT_EQ(oracle::delta_by_shrinking(field, w.flag, w.second), w.second_value) << name;
    }
  }
}

TEST(MinimalArity, ConstancyCoversTheTopLevel) {
  auto cert = minimal_arity(g1());
  ASSERT_FALSE(cert.constancy.empty());
  for (const auto& c : cert.constancy) {
    EXPECT_EQ(c.flag.length(), 2u);
    EXPECT_FALSE(c.value.is_zero());
  }
}

TEST(CheckArity, Examples) {
  EXPECT_TRUE(check_arity(g3(), 2));
  auto r4 = check_arity(g4(), 2);
  EXPECT_FALSE(r4);
  ASSERT_TRUE(r4.violation.has_value());
  EXPECT_EQ(r4.violation->flag.length(), 1u);
  EXPECT_FALSE(check_arity(g1(), 2));
  EXPECT_TRUE(check_arity(affine2(), 1));
  EXPECT_FALSE(check_arity(max_xy(), 1));
}

TEST(CheckArity, RejectsOutOfRange) {
  EXPECT_THROW(check_arity(g1(), 0), Error);
  EXPECT_THROW(check_arity(g1(), 4), Error);
}

TEST(CheckArity, AgreesWithMinimalArity) {
  for (const auto& [name, f] : all_fixtures()) {
    auto k = minimal_arity(f).k_star;
    for (std::size_t j = 1; j <= f.dimension() + 1; ++j) {
      EXPECT_EQ(static_cast<bool>(check_arity(f, j)), j >= k) << name << " k=" << j;
    }
  }
}

TEST(MinimalArity, InvariantUnderAffineChanges) {
  RandomRationals rng(21);
  AffineMap m{{Vec{2, 1}, Vec{1, 1}}, Vec{Rat(1, 2), -3}};
  for (const auto& [name, f] : all_fixtures()) {
    auto k = minimal_arity(f).k_star;
    std::size_t n = f.dimension();
    auto plus = f + CpwlExpr::affine({rng.vec(n), rng.rat()});
    EXPECT_EQ(minimal_arity(plus).k_star, k) << name;
    EXPECT_EQ(minimal_arity(f.scaled(Rat(-7, 3))).k_star, k) << name;
    if (n == 2) EXPECT_EQ(minimal_arity(f.composed(m)).k_star, k) << name;
  }
}

TEST(MinimalArity, SubadditiveOnSums) {
  RandomRationals rng(22);
  auto fx = all_fixtures();
  for (const auto& a : fx) {
    for (const auto& b : fx) {
      if (a.expr.dimension() != b.expr.dimension()) continue;
      auto sum = a.expr + b.expr.scaled(rng.rat(1, 3));
      EXPECT_LE(minimal_arity(sum).k_star,
                std::max(minimal_arity(a.expr).k_star, minimal_arity(b.expr).k_star))
          << a.name << " + " << b.name;
    }
  }
}

TEST(MinimalArity, NeverExceedsRepresentationArity) {
  RandomRationals rng(23);
  for (int t = 0; t < 60; ++t) {
    auto f = random_expr(rng, static_cast<std::size_t>(rng.integer(1, 2)));
    auto k = minimal_arity(f).k_star;
    EXPECT_LE(k, f.arity()) << f.str();
    EXPECT_LE(k, f.dimension() + 1) << f.str();
  }
}

}  // namespace
}  // namespace maxarity
