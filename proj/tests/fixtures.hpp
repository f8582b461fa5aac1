#pragma once

#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "maxarity/expr.hpp"

namespace maxarity::testing {

inline AffineFunc af(std::initializer_list<long> a, long b = 0) {
  Vec v(a.size());
  std::size_t i = 0;
  for (long x : a) v[i++] = Rat(x);
  return {v, Rat(b)};
}

inline Vec pt(std::initializer_list<Rat> xs) { return Vec(xs); }

// max(0, x, y)
inline CpwlExpr g1() { return CpwlExpr::max_of({af({0, 0}), af({1, 0}), af({0, 1})}); }
// max(0, -x, -y)
inline CpwlExpr g2() { return CpwlExpr::max_of({af({0, 0}), af({-1, 0}), af({0, -1})}); }
inline CpwlExpr g3() { return g1() + g2(); }
inline CpwlExpr g4() { return g1().scaled(6) + g2(); }

// max(0, x, y, -x, -y, x-y, y-x)
inline CpwlExpr seven_max() {
  return CpwlExpr::max_of({af({0, 0}), af({1, 0}), af({0, 1}), af({-1, 0}), af({0, -1}),
                           af({1, -1}), af({-1, 1})});
}
// max(x, y) + max(-y, x-y) + max(-x, y-x)
inline CpwlExpr pair_sum() {
  return CpwlExpr::max_of({af({1, 0}), af({0, 1})}) +
         CpwlExpr::max_of({af({0, -1}), af({1, -1})}) +
         CpwlExpr::max_of({af({-1, 0}), af({-1, 1})});
}
// max(-x, y-x) + max(0, x, 2x-y, x-y)
inline CpwlExpr mixed_sum() {
  return CpwlExpr::max_of({af({-1, 0}), af({-1, 1})}) +
         CpwlExpr::max_of({af({0, 0}), af({1, 0}), af({2, -1}), af({1, -1})});
}

// max(0, x_1, ..., x_n)
inline CpwlExpr relu_max(std::size_t n) {
  std::vector<AffineFunc> args{AffineFunc::zero(n)};
  for (std::size_t i = 0; i < n; ++i) args.push_back({Vec::unit(n, i), Rat()});
  return CpwlExpr::max_of(args);
}

inline CpwlExpr affine2() { return CpwlExpr::affine(af({2, -3}, 5)); }

// max(x, y): lineality along (1,1)
inline CpwlExpr max_xy() { return CpwlExpr::max_of({af({1, 0}), af({0, 1})}); }

// A non-conical fixture: max(0, x-1) + 2 max(y, 1 - x) - max(0, x+y-2, y)
inline CpwlExpr shifted2() {
  return CpwlExpr::max_of({af({0, 0}), af({1, 0}, -1)}) +
         CpwlExpr::max_of({af({0, 1}), af({-1, 0}, 1)}, 2) -
         CpwlExpr::max_of({af({0, 0}), af({1, 1}, -2), af({0, 1})});
}

struct Named {
  std::string name;
  CpwlExpr expr;
};

inline void PrintTo(const Named& n, std::ostream* os) { *os << n.name; }

inline std::vector<Named> all_fixtures() {
  return {{"G1", g1()},         {"G2", g2()},         {"G3", g3()},
          {"G4", g4()},         {"seven_max", seven_max()}, {"pair_sum", pair_sum()},
          {"affine", affine2()}, {"max_xy", max_xy()}, {"shifted", shifted2()},
          {"relu1", relu_max(1)}, {"relu3", relu_max(3)}};
}

class RandomRationals {
 public:
  explicit RandomRationals(std::uint64_t seed) : gen_(seed) {}

  Rat rat(long lo = -10, long hi = 10, long max_den = 7) {
    std::uniform_int_distribution<long> den(1, max_den);
    long q = den(gen_);
    std::uniform_int_distribution<long> num(lo * q, hi * q);
    return Rat(num(gen_), q);
  }
  Vec vec(std::size_t n, long lo = -10, long hi = 10, long max_den = 7) {
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rat(lo, hi, max_den);
    return v;
  }
  long integer(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(gen_);
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// Sum of a few max terms with small integer coefficients, so arrangements
// stay small.
inline CpwlExpr random_expr(RandomRationals& rng, std::size_t n, int max_terms = 3,
                            int max_arity = 4) {
  CpwlExpr f = CpwlExpr::affine({rng.vec(n, -2, 2, 1), Rat(rng.integer(-2, 2))});
  int terms = static_cast<int>(rng.integer(1, max_terms));
  for (int t = 0; t < terms; ++t) {
    std::vector<AffineFunc> args;
    int ar = static_cast<int>(rng.integer(2, max_arity));
    for (int j = 0; j < ar; ++j) args.push_back({rng.vec(n, -2, 2, 1), Rat(rng.integer(-2, 2))});
    f = f + CpwlExpr::max_of(args, Rat(rng.integer(-3, 3)));
  }
  return f;
}

}  // namespace maxarity::testing
