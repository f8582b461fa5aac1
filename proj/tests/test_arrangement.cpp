#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "maxarity/arrangement.hpp"
#include "oracle/oracle.hpp"
#include "stratification_checks.hpp"

namespace maxarity {
namespace {

using namespace testing;

std::set<Hyperplane> as_set(const std::vector<Hyperplane>& hs) {
  return {hs.begin(), hs.end()};
}

const Hyperplane kX0(Vec{1, 0}, 0);
const Hyperplane kY0(Vec{0, 1}, 0);
const Hyperplane kDiag(Vec{1, -1}, 0);

TEST(Hyperplane, CanonicalForm) {
  Hyperplane h(Vec{Rat(-1, 2), Rat(1, 3)}, Rat(5, 6));
  EXPECT_EQ(h.normal(), (Vec{3, -2}));
  EXPECT_EQ(h.offset(), Rat(-5));
  EXPECT_EQ(Hyperplane(Vec{-2, 2}, 0), kDiag);
}

TEST(ArrangementOf, Examples) {
  EXPECT_EQ(as_set(arrangement_of(g1())), (std::set<Hyperplane>{kX0, kY0, kDiag}));
  EXPECT_TRUE(arrangement_of(affine2()).empty());
  EXPECT_EQ(as_set(arrangement_of(g3())), (std::set<Hyperplane>{kX0, kY0, kDiag}));
  EXPECT_EQ(arrangement_of(g3()).size(), 3u);
}

TEST(EnumerateCells, ThreeConcurrentLines) {
  auto fam = enumerate_cells({kX0, kY0, kDiag}, AffineSubspace::whole(2));
  EXPECT_EQ(fam.cells_of_dim(2).size(), 6u);
  EXPECT_EQ(fam.cells_of_dim(1).size(), 6u);
  EXPECT_EQ(fam.cells_of_dim(0).size(), 1u);
  check_stratified(fam);
}

TEST(EnumerateCells, NoHyperplanes) {
  auto fam = enumerate_cells({}, AffineSubspace::whole(2));
  ASSERT_EQ(fam.cells().size(), 1u);
  EXPECT_EQ(fam.cells()[0].dim, 2u);
}

TEST(EnumerateCells, LineSplitByPoint) {
  auto within = hyperplane_subspace(Vec{1, -1}, 0);
  auto fam = enumerate_cells({kX0}, within);
  EXPECT_EQ(fam.cells_of_dim(1).size(), 2u);
  EXPECT_EQ(fam.cells_of_dim(0).size(), 1u);
  EXPECT_EQ(fam.cells()[fam.cells_of_dim(0)[0]].sample, (Vec{0, 0}));
  check_stratified(fam);
}

TEST(EnumerateCells, ParallelAndContainingHyperplanes) {
  // Within x = y: the hyperplane x - y = 0 contains it, x - y = 1 misses it.
  auto within = hyperplane_subspace(Vec{1, -1}, 0);
  auto fam = enumerate_cells({kDiag, Hyperplane(Vec{1, -1}, 1), kY0}, within);
  EXPECT_EQ(fam.cells().size(), 3u);
  for (const auto& c : fam.cells()) {
    EXPECT_EQ(c.signs[0], 0);
    EXPECT_EQ(c.signs[1], -1);
  }
  check_stratified(fam);
}

TEST(EnumerateCells, GenericLinesMatchBruteForce) {
  // Three lines in general position: 1 + 3 + 3 regions.
  std::vector<Hyperplane> hs{Hyperplane(Vec{1, 0}, 0), Hyperplane(Vec{0, 1}, 0),
                             Hyperplane(Vec{1, 1}, 1)};
  auto fam = enumerate_cells(hs, AffineSubspace::whole(2));
  EXPECT_EQ(fam.full_dimensional().size(), 7u);
  EXPECT_EQ(oracle::brute_cells(hs, 2).size(), 7u);
  EXPECT_EQ(oracle::brute_cells({kX0, kY0, kDiag}, 2).size(), 6u);
  EXPECT_EQ(oracle::brute_cells({}, 2).size(), 1u);
}

TEST(EnumerateCells, FullDimensionalScopeAgrees) {
  for (const auto& [name, f] : all_fixtures()) {
    auto hs = arrangement_of(f);
    auto all = enumerate_cells(hs, AffineSubspace::whole(f.dimension()));
    auto top = enumerate_cells(hs, AffineSubspace::whole(f.dimension()),
                               CellScope::full_dimensional);
    std::set<SignVector> a, b;
    for (auto i : all.full_dimensional()) a.insert(all.cells()[i].signs);
    for (const auto& c : top.cells()) {
      EXPECT_EQ(c.dim, f.dimension());
      b.insert(c.signs);
    }
    EXPECT_EQ(a, b) << name;
  }
}

TEST(EnumerateCells, RandomArrangementsMatchBruteForce) {
  RandomRationals rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = rng.integer(1, 3);
    std::size_t m = rng.integer(0, n == 3 ? 6 : 9);
    std::vector<Hyperplane> hs;
    for (std::size_t i = 0; i < m; ++i) {
      Vec a = rng.vec(n, -2, 2, 1);
      if (a.is_zero()) continue;
      hs.emplace_back(a, Rat(rng.integer(-2, 2)));
    }
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    auto fam = enumerate_cells(hs, AffineSubspace::whole(n));
    std::vector<SignVector> mine;
    for (auto i : fam.full_dimensional()) mine.push_back(fam.cells()[i].signs);
    std::sort(mine.begin(), mine.end());
    EXPECT_EQ(mine, oracle::brute_cells(hs, n));
    // Region count bound: sum_{i<=n} C(m, i).
    std::size_t bound = 0, binom = 1;
    for (std::size_t i = 0; i <= n; ++i) {
      bound += binom;
      binom = binom * (hs.size() - std::min(i, hs.size())) / (i + 1);
    }
    EXPECT_LE(mine.size(), bound);
    check_stratified(fam, &rng);
  }
}

TEST(Clearance, Examples) {
  std::vector<Hyperplane> hs{kX0, kY0, kDiag};
  EXPECT_EQ(clearance(pt({1, 1}), pt({1, -1}), hs), Rat(1, 2));
  EXPECT_EQ(clearance(pt({1, 1}), pt({1, -1}), {}), Rat(1));
  EXPECT_EQ(clearance(pt({2, 1}), pt({0, 1}), {kDiag}), Rat(1, 2));
}

// The far end of the clearance step differs from x only on hyperplanes that
// already contain x.
TEST(Clearance, Soundness) {
  RandomRationals rng(41);
  for (const auto& [name, f] : all_fixtures()) {
    auto hs = arrangement_of(f);
    if (hs.empty()) continue;
    for (int trial = 0; trial < 100; ++trial) {
      std::size_t n = f.dimension();
      Vec x = rng.vec(n, -3, 3, 2);
      // Put x on a hyperplane half of the time.
      if (trial % 2 == 0) {
        const auto& h = hs[trial % hs.size()];
        std::size_t k = 0;
        while (h.normal()[k].is_zero()) ++k;
        x[k] = 0;
        x[k] = -h.value(x) / h.normal()[k];
        ASSERT_EQ(h.side(x), 0);
      }
      Vec v = rng.vec(n, -3, 3, 2);
      if (v.is_zero()) continue;
      Rat eps = clearance(x, v, hs);
      auto before = sign_vector(hs, x);
      for (Rat t : {eps, eps / Rat(3)}) {
        auto after = sign_vector(hs, x + v * t);
        for (std::size_t i = 0; i < hs.size(); ++i) {
          if (before[i] != 0) EXPECT_EQ(after[i], before[i]) << name;
        }
      }
    }
  }
}

TEST(Restrict, G1FamilyToDiagonal) {
  auto fam = enumerate_cells(arrangement_of(g1()), AffineSubspace::whole(2));
  auto r = restrict(fam, hyperplane_subspace(Vec{1, -1}, 0));
  EXPECT_EQ(r.cells_of_dim(1).size(), 2u);
  EXPECT_EQ(r.cells_of_dim(0).size(), 1u);
  std::set<int> sides;
  for (auto i : r.cells_of_dim(1)) sides.insert(r.cells()[i].sample[0].sign());
  EXPECT_EQ(sides, (std::set<int>{-1, 1}));
  check_stratified(r);
}

TEST(Restrict, AffineFamily) {
  auto fam = enumerate_cells(arrangement_of(affine2()), AffineSubspace::whole(2));
  auto h = hyperplane_subspace(Vec{1, 2}, 3);
  auto r = restrict(fam, h);
  ASSERT_EQ(r.cells().size(), 1u);
  EXPECT_EQ(r.cells()[0].subspace, h);
}

TEST(Restrict, TwiceAlongFlag) {
  auto fam = enumerate_cells(arrangement_of(g1()), AffineSubspace::whole(2));
  auto h1 = hyperplane_subspace(Vec{1, -1}, 0);
  auto r1 = restrict(fam, h1);
  auto r2 = restrict(r1, AffineSubspace::point(Vec{0, 0}));
  ASSERT_EQ(r2.cells().size(), 1u);
  EXPECT_EQ(r2.cells()[0].dim, 0u);
  check_stratified(r2);
}

TEST(Restrict, RejectsCodimMismatch) {
  auto fam = enumerate_cells(arrangement_of(g1()), AffineSubspace::whole(2));
  try {
    (void)restrict(fam, AffineSubspace::point(Vec{0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_argument);
  }
}

TEST(Cells, SamplesAreGenericForGradients) {
  for (const auto& [name, f] : all_fixtures()) {
    auto fam = enumerate_cells(arrangement_of(f), AffineSubspace::whole(f.dimension()));
    GradientField field(f);
    for (auto i : fam.full_dimensional()) {
      EXPECT_TRUE(field.try_at(fam.cells()[i].sample)) << name;
    }
    check_stratified(fam);
  }
}

}  // namespace
}  // namespace maxarity
