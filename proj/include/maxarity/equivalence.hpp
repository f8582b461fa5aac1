#pragma once

#include <optional>

#include "maxarity/arrangement.hpp"
#include "maxarity/expr.hpp"

namespace maxarity {

struct Equivalence {
  bool equal = true;
  std::optional<Vec> witness;  // eval differs here when !equal

  explicit operator bool() const { return equal; }
};

/// Exact equivalence over Q^n: on every full-dimensional cell of the merged
/// arrangement both expressions are affine, so comparing the two pieces at
/// one sample per cell decides the question.
inline Equivalence equivalent(const CpwlExpr& f, const CpwlExpr& g) {
  require_dimension(g.dimension(), f.dimension(), "equivalent");
  auto hs = merge_arrangements(arrangement_of(f), arrangement_of(g));
  auto fam = enumerate_cells(hs, AffineSubspace::whole(f.dimension()),
                             CellScope::full_dimensional);
  for (const auto& c : fam.cells()) {
    AffineFunc pf = f.affine_piece_at(c.sample);
    AffineFunc pg = g.affine_piece_at(c.sample);
    if (pf == pg) continue;
    if (pf(c.sample) != pg(c.sample)) return {false, c.sample};
    // Same value at the sample: step off along the gradient difference.
    Vec d = pf.a - pg.a;
    Vec x = c.sample + d * clearance(c.sample, d, hs);
    return {false, x};
  }
  return {};
}

}  // namespace maxarity
