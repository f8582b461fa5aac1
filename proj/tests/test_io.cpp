#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "maxarity/json_io.hpp"
#include "maxarity/report.hpp"

namespace maxarity {
namespace {

using namespace testing;

TEST(Json, RoundTripsFixtures) {
  for (const auto& [name, f] : all_fixtures()) {
    auto text = json::expr(f).dump();
    EXPECT_EQ(json::parse_expr(text), f) << name;
  }
  RandomRationals rng(51);
  for (int t = 0; t < 40; ++t) {
    auto f = random_expr(rng, static_cast<std::size_t>(rng.integer(1, 4)));
    f = f.scaled(rng.rat(1, 5, 9));
    EXPECT_EQ(json::parse_expr(json::expr(f).dump()), f) << f.str();
  }
}

TEST(Json, RationalsAreStrings) {
  auto j = json::expr(CpwlExpr::affine(AffineFunc{Vec{Rat(1, 3), Rat(-2)}, Rat(5, 2)}));
  EXPECT_EQ(j["affine"]["a"][0], "1/3");
  EXPECT_EQ(j["affine"]["a"][1], "-2");
  EXPECT_EQ(j["affine"]["b"], "5/2");
}

TEST(Json, Errors) {
  auto code = [](const std::string& s) {
    try {
      json::parse_expr(s);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::internal_verification;
  };
  EXPECT_EQ(code("{"), ErrorCode::parse);
  EXPECT_EQ(code("[]"), ErrorCode::parse);
  EXPECT_EQ(code(R"({"affine": {"a": ["1"], "b": "0"}})"), ErrorCode::parse);
  EXPECT_EQ(code(R"({"dimension": 1, "terms": [{"arguments": []}]})"), ErrorCode::parse);
  EXPECT_EQ(code(R"({"dimension": 1, "affine": {"a": ["1/0"], "b": "0"}})"), ErrorCode::parse);
  EXPECT_EQ(code(R"({"dimension": 2, "affine": {"a": ["1"], "b": "0"}})"),
            ErrorCode::dimension_mismatch);
}

TEST(ParseEquation, Forms) {
  auto e = json::parse_equation("2x - 3*y + 1/2 = y", 2);
  EXPECT_EQ(e.a, (Vec{2, -4}));
  EXPECT_EQ(e.b, Rat(-1, 2));
  auto f = json::parse_equation("x2 = x1", 3);
  EXPECT_EQ(f.a, (Vec{-1, 1, 0}));
  EXPECT_EQ(json::parse_equation("w = 1", 4).a, (Vec{0, 0, 0, 1}));
  EXPECT_THROW(json::parse_equation("z = 0", 2), Error);
  EXPECT_THROW(json::parse_equation("x + = 0", 2), Error);
  EXPECT_THROW(json::parse_equation("x = y = 0", 2), Error);
  EXPECT_THROW(json::parse_equation("1 = 1", 2), Error);
}

TEST(ParseFlag, Chains) {
  auto f = json::parse_flag("x-y=0; x+y=0", 2);
  EXPECT_EQ(f, Flag(2, {hyperplane_subspace(Vec{1, -1}, 0), AffineSubspace::point(Vec{0, 0})}));
  EXPECT_EQ(json::parse_flag("x=1", 3).length(), 1u);
  EXPECT_THROW(json::parse_flag("x-y=0; 2x-2y=0", 2), Error);
  EXPECT_THROW(json::parse_flag("x=0; x=1", 2), Error);
  EXPECT_THROW(json::parse_flag("x=0;;y=0", 2), Error);
}

TEST(PieceStats, Examples) {
  auto s = piece_stats(g1());
  EXPECT_EQ(s.pieces, 3u);
  EXPECT_EQ(s.regions, 3u);
  auto a = piece_stats(affine2());
  EXPECT_EQ(a.pieces, 1u);
  EXPECT_EQ(a.regions, 1u);
  // |x| + |x - 1| - |x - 2|: the middle slopes repeat on disconnected pieces.
  auto absf = [](long c) { return CpwlExpr::max_of({af({1}, -c), af({-1}, c)}); };
  auto h = absf(0) + absf(1) - absf(2);
  auto hs = piece_stats(h);
  EXPECT_EQ(hs.regions, 4u);
  EXPECT_LE(hs.pieces, hs.regions);
}

TEST(PieceStats, PiecesNeverExceedRegions) {
  for (const auto& [name, f] : all_fixtures()) {
    auto s = piece_stats(f);
    EXPECT_LE(s.pieces, s.regions) << name;
    EXPECT_LE(s.regions, s.cells) << name;
  }
}

TEST(Report, G1) {
  auto r = make_report(g1());
  EXPECT_EQ(r.dimension, 2u);
  EXPECT_EQ(r.terms, 1u);
  EXPECT_EQ(r.arity, 3u);
  EXPECT_EQ(r.certificate.k_star, 3u);
}

}  // namespace
}  // namespace maxarity
