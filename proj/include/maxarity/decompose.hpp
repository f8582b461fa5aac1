#pragma once

#include <algorithm>
#include <vector>

#include "maxarity/arity.hpp"
#include "maxarity/delta.hpp"
#include "maxarity/equivalence.hpp"

namespace maxarity {

/// The cone of F at x0: keep the arguments of each term that are active at
/// x0 and re-anchor everything so that the result vanishes at x0. Agrees with
/// F - F(x0) near x0 and is positively homogeneous about x0.
inline CpwlExpr homogenize(const CpwlExpr& f, const Vec& x0) {
  require_dimension(x0.size(), f.dimension(), "homogenize");
  auto anchor = [&](const AffineFunc& g) { return AffineFunc{g.a, -dot(g.a, x0)}; };
  std::vector<MaxTerm> terms;
  for (const auto& t : f.terms()) {
    Rat top = t.arguments.front()(x0);
    for (const auto& g : t.arguments) top = max(top, g(x0));
    MaxTerm nt{t.coefficient, {}};
    for (const auto& g : t.arguments) {
      if (g(x0) == top) nt.arguments.push_back(anchor(g));
    }
    terms.push_back(std::move(nt));
  }
  return CpwlExpr(f.dimension(), anchor(f.affine_part()), std::move(terms));
}

struct LinealitySplit {
  LinearSubspace lineality;
  LinearSubspace w;       // orthogonal complement of the lineality space
  AffineFunc g_ell;       // linear part along the lineality space
  CpwlExpr g_w;           // G o P_W on Q^n
  CpwlExpr reduced;       // G restricted to W, in the coordinates of w.basis()
  AffineMap to_w;         // x -> coordinates of P_W x
};

namespace detail {

// c with sum_j c_j b_j the orthogonal projection of v onto span(basis).
inline Vec coordinates_in(const Rows& basis, const Vec& v) {
  std::size_t k = basis.size();
  std::vector<LinearEquation> gram;
  for (std::size_t i = 0; i < k; ++i) {
    Vec row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = dot(basis[i], basis[j]);
    gram.push_back({std::move(row), dot(basis[i], v)});
  }
  auto s = solve_linear(k, gram);
  if (!s || s->dim() != 0) throw Error(ErrorCode::internal_verification, "singular Gram matrix");
  return s->anchor();
}

inline Vec generic_point(const CpwlExpr& f) {
  auto fam = enumerate_cells(arrangement_of(f), AffineSubspace::whole(f.dimension()),
                             CellScope::full_dimensional);
  return fam.cells().front().sample;
}

inline bool is_conical(const CpwlExpr& g) {
  if (!g.eval(Vec(g.dimension())).is_zero()) return false;
  auto hs = arrangement_of(g);
  return std::all_of(hs.begin(), hs.end(), [](const Hyperplane& h) { return h.offset().is_zero(); });
}

inline Rat cross(const Vec& u, const Vec& v) { return u[0] * v[1] - u[1] * v[0]; }
inline Vec rot90(const Vec& u) { return Vec{-u[1], u[0]}; }

// Primitive integer vector with the same direction (not just the same line).
inline Vec ray(const Vec& d) {
  Vec p = primitive_direction(d);
  return dot(p, d).sign() < 0 ? -p : p;
}

inline bool angle_less(const Vec& a, const Vec& b) {
  auto half = [](const Vec& d) { return d[1].sign() > 0 || (d[1].is_zero() && d[0].sign() > 0) ? 0 : 1; };
  if (half(a) != half(b)) return half(a) < half(b);
  return cross(a, b).sign() > 0;
}

// Conical T on Q^1: slope b for t < 0 and a for t > 0.
inline CpwlExpr conical_base_1d(const CpwlExpr& t) {
  Rat a = t.eval(Vec{1});
  Rat b = -t.eval(Vec{-1});
  return CpwlExpr::affine({Vec{b}, Rat()}) +
         CpwlExpr::max_of({AffineFunc::zero(1), {Vec{1}, Rat()}}, a - b);
}

// Conical T on Q^2 as a sum of hat functions over a refinement of its rays
// where every two adjacent sectors together span less than a half-turn.
inline CpwlExpr conical_base_2d(const CpwlExpr& t) {
  std::vector<Vec> rays;
  for (const auto& h : arrangement_of(t)) {
    Vec d = rot90(h.normal());
    rays.push_back(ray(d));
    rays.push_back(ray(-d));
  }
  if (rays.empty()) rays = {Vec{1, 0}, Vec{0, 1}, Vec{-1, 0}, Vec{0, -1}};
  std::sort(rays.begin(), rays.end(), angle_less);
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());

  // Split until every sector is strictly under a quarter-turn.
  for (int guard = 0;; ++guard) {
    if (guard > 10000) throw Error(ErrorCode::internal_verification, "ray refinement diverged");
    bool changed = false;
    std::vector<Vec> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const Vec& u = rays[i];
      const Vec& v = rays[(i + 1) % rays.size()];
      next.push_back(u);
      if (rays.size() > 1 && cross(u, v).sign() > 0 && dot(u, v).sign() > 0) continue;
      next.push_back(ray(cross(u, v).sign() > 0 ? u + v : rot90(u)));
      changed = true;
    }
    std::sort(next.begin(), next.end(), angle_less);
    next.erase(std::unique(next.begin(), next.end()), next.end());
    rays = std::move(next);
    if (!changed) break;
  }

  CpwlExpr out(2);
  std::size_t m = rays.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec& prev = rays[(i + m - 1) % m];
    const Vec& d = rays[i];
    const Vec& next = rays[(i + 1) % m];
    Rat value = t.eval(d);
    if (value.is_zero()) continue;
    AffineFunc la{Vec{-prev[1], prev[0]} * cross(prev, d).inverse(), Rat()};
    AffineFunc lb{Vec{next[1], -next[0]} * cross(d, next).inverse(), Rat()};
    AffineFunc zero = AffineFunc::zero(2);
    out = out + CpwlExpr::max_of({zero, la}, value) + CpwlExpr::max_of({zero, lb}, value) -
          CpwlExpr::max_of({zero, la, lb}, value);
  }
  return out;
}

// Any CPWL function on Q^1 from its breakpoints and slope jumps.
inline CpwlExpr breakpoint_1d(const CpwlExpr& t) {
  std::vector<Rat> ts;
  for (const auto& h : arrangement_of(t)) ts.push_back(h.offset() / h.normal()[0]);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  if (ts.empty()) return CpwlExpr::affine(t.affine_piece_at(Vec{0}));
  std::vector<Rat> slopes{t.affine_piece_at(Vec{ts.front() - Rat(1)}).a[0]};
  for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
    slopes.push_back(t.affine_piece_at(Vec{(ts[j] + ts[j + 1]) / Rat(2)}).a[0]);
  }
  slopes.push_back(t.affine_piece_at(Vec{ts.back() + Rat(1)}).a[0]);
  Rat b0 = t.eval(Vec{ts.front()}) - slopes[0] * ts.front();
  CpwlExpr out = CpwlExpr::affine({Vec{slopes[0]}, b0});
  for (std::size_t j = 0; j < ts.size(); ++j) {
    out = out + CpwlExpr::max_of({AffineFunc::zero(1), {Vec{1}, -ts[j]}}, slopes[j + 1] - slopes[j]);
  }
  return out;
}

inline CpwlExpr conical_base(const CpwlExpr& t) {
  switch (t.dimension()) {
    case 1: return conical_base_1d(t);
    case 2: return conical_base_2d(t);
    default:
      throw Error(ErrorCode::invalid_argument,
                  "no base case in dimension " + std::to_string(t.dimension()));
  }
}

}  // namespace detail

/// G = G_ell + G_w with G_ell linear along L = lineality(grad G) and
/// G_w = G o P_W for W the orthogonal complement of L. G must be conical
/// about the origin.
inline LinealitySplit split_lineality(const CpwlExpr& g) {
  if (!detail::is_conical(g)) {
    throw Error(ErrorCode::invalid_argument, "split_lineality: input is not conical about 0");
  }
  std::size_t n = g.dimension();
  LinealitySplit s;
  s.lineality = lineality(GradientField(g)).space;
  s.w = s.lineality.orthogonal_complement();
  const Rows& lb = s.lineality.basis();
  const Rows& wb = s.w.basis();

  Vec grad = g.affine_piece_at(detail::generic_point(g)).a;
  Vec along(n);
  if (!lb.empty()) {
    Vec c = detail::coordinates_in(lb, grad);
    for (std::size_t i = 0; i < lb.size(); ++i) along += lb[i] * c[i];
  }
  s.g_ell = {along, Rat()};

  std::size_t k = wb.size();
  s.to_w.rows.assign(k, Vec(n));
  s.to_w.offset = Vec(k);
  for (std::size_t j = 0; j < n; ++j) {
    Vec c = k ? detail::coordinates_in(wb, Vec::unit(n, j)) : Vec();
    for (std::size_t r = 0; r < k; ++r) s.to_w.rows[r][j] = c[r];
  }
  if (k == 0) {
    s.g_w = CpwlExpr(n);
    s.reduced = CpwlExpr(0);
  } else {
    AffineMap from_w{Rows(n, Vec(k)), Vec(n)};
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t r = 0; r < k; ++r) from_w.rows[i][r] = wb[r][i];
    }
    s.reduced = g.composed(from_w);
    AffineMap proj{Rows(n, Vec(n)), Vec(n)};
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t r = 0; r < k; ++r) proj.rows[i][j] += wb[r][i] * s.to_w.rows[r][j];
      }
    }
    s.g_w = g.composed(proj);
  }
  if (!equivalent(g, CpwlExpr::affine(s.g_ell) + s.g_w)) {
    throw Error(ErrorCode::internal_verification, "split_lineality: G != G_ell + G_w");
  }
  return s;
}

struct PeelStep {
  Flag flag;
  Vec x0;
  std::size_t lineality_dim = 0;
  std::size_t w_dim = 0;
  std::size_t flags_before = 0;
  std::size_t flags_after = 0;
  CpwlExpr piece;
};

struct Decomposition {
  CpwlExpr expr;
  std::size_t arity_bound = 1;
  bool synthesized = true;  // false: the canonical input was returned as is
  Equivalence check;
  std::vector<PeelStep> trace;
};

namespace detail {

inline std::vector<Flag> flag_family(const CpwlExpr& f) {
  DeltaEngine e{GradientField(f)};
  auto levels = e.nonzero_flags_by_length(f.dimension());
  std::vector<Flag> out;
  for (std::size_t k = 1; k < levels.size(); ++k) {
    out.insert(out.end(), levels[k].begin(), levels[k].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Peel one cone per iteration until the gradient is constant.
inline CpwlExpr peel(const CpwlExpr& f, std::vector<PeelStep>* trace) {
  std::size_t n = f.dimension();
  CpwlExpr cur = f;
  CpwlExpr acc(n);
  auto family = flag_family(cur);
  while (!family.empty()) {
    const Flag* pick = &family.front();
    for (const auto& fl : family) {
      if (fl.length() > pick->length()) pick = &fl;
    }
    Flag flag = *pick;
    DeltaEngine e{GradientField(cur)};
    const auto& d = e.delta(flag);
    if (!d.is_constant() || d.is_zero()) {
      throw Error(ErrorCode::internal_verification,
                  "longest nonzero flag " + flag.str() + " has non-constant delta");
    }
    Vec x0 = d.cells.cells().front().sample;

    CpwlExpr cone = homogenize(cur, x0);
    auto split = split_lineality(cone.composed(AffineMap::translation(x0)));
    if (split.w.dim() > 2) {
      throw Error(ErrorCode::internal_verification, "peel reached a cone of dimension > 2");
    }
    AffineMap back = split.to_w;
    back.offset = Vec(split.w.dim());
    for (std::size_t r = 0; r < split.w.dim(); ++r) back.offset[r] = -dot(back.rows[r], x0);
    CpwlExpr piece = CpwlExpr::affine({split.g_ell.a, -dot(split.g_ell.a, x0)});
    if (split.w.dim() > 0) piece = piece + conical_base(split.reduced).composed(back);
    if (!equivalent(piece, cone)) {
      throw Error(ErrorCode::internal_verification, "peeled piece differs from its cone");
    }

    cur = cur - piece;
    acc = acc + piece;
    auto shrunk = flag_family(cur);
    bool subset = std::includes(family.begin(), family.end(), shrunk.begin(), shrunk.end());
    if (!subset || shrunk.size() >= family.size()) {
      throw Error(ErrorCode::internal_verification,
                  "peeling " + flag.str() + " did not shrink the flag family");
    }
    if (trace) {
      trace->push_back({flag, x0, split.lineality.dim(), split.w.dim(), family.size(),
                        shrunk.size(), piece});
    }
    family = std::move(shrunk);
  }
  return acc + CpwlExpr::affine(cur.affine_piece_at(generic_point(cur)));
}

}  // namespace detail

/// Decomposition of a CPWL function on Q^k, k in {1, 2}, into terms of arity
/// at most k + 1. Inputs already within the bound come back unchanged.
inline Decomposition decompose_low_dim(const CpwlExpr& t, std::size_t k) {
  if (k < 1 || k > 2) throw Error(ErrorCode::invalid_argument, "decompose_low_dim: k must be 1 or 2");
  require_dimension(t.dimension(), k, "decompose_low_dim");
  Decomposition out;
  out.arity_bound = k + 1;
  if (t.arity() <= k + 1) {
    out.expr = t;
  } else if (k == 1) {
    out.expr = detail::breakpoint_1d(t);
  } else {
    out.expr = detail::peel(t, &out.trace);
  }
  out.check = equivalent(out.expr, t);
  if (!out.check || out.expr.arity() > out.arity_bound) {
    throw Error(ErrorCode::internal_verification, "decompose_low_dim failed verification");
  }
  return out;
}

/// Rewrites F with terms of minimal arity k* when k* <= 3. Above that the
/// canonical input is returned unsynthesized, with its own arity as bound.
inline Decomposition decompose(const CpwlExpr& f) {
  auto cert = minimal_arity(f);
  Decomposition out;
  if (cert.k_star > 3) {
    out.expr = f;
    out.arity_bound = f.arity();
    out.synthesized = false;
    out.check = equivalent(out.expr, f);
    return out;
  }
  out.arity_bound = cert.k_star;
  out.expr = detail::peel(f, &out.trace);
  out.check = equivalent(out.expr, f);
  if (!out.check) throw Error(ErrorCode::internal_verification, "decomposition is not equivalent to its input");
  if (out.expr.arity() > out.arity_bound) {
    throw Error(ErrorCode::internal_verification, "decomposition exceeds the arity bound");
  }
  return out;
}

}  // namespace maxarity
