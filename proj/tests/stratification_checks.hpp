#pragma once

#include <gtest/gtest.h>

#include "checks.hpp"

namespace maxarity::testing {

inline void check_stratified(const StratifiedFamily& fam, RandomRationals* rng = nullptr) {
  auto r = stratified_properties(fam, rng ? rng->engine()() : 1);
  EXPECT_TRUE(r.ok) << r.detail;
}

}  // namespace maxarity::testing
