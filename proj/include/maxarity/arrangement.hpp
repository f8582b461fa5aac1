#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxarity/error.hpp"
#include "maxarity/expr.hpp"
#include "maxarity/linalg.hpp"
#include "maxarity/rational.hpp"
#include "maxarity/simplex.hpp"

namespace maxarity {

/// {x : normal . x = offset}, in canonical form: integer coefficients with gcd
/// 1 and a positive first nonzero normal entry.
class Hyperplane {
 public:
  Hyperplane() = default;
  Hyperplane(const Vec& normal, const Rat& offset) {
    if (normal.is_zero()) throw Error(ErrorCode::invalid_argument, "hyperplane with zero normal");
    Vec aug(normal.size() + 1);
    for (std::size_t i = 0; i < normal.size(); ++i) aug[i] = normal[i];
    aug[normal.size()] = offset;
    // Orientation is fixed by the normal only, so normalize the joint vector
    // and then flip if the normal's leading entry came out negative.
    Vec p = primitive_direction(aug);
    for (std::size_t i = 0; i < normal.size(); ++i) {
      if (!normal[i].is_zero()) {
        if (p[i].sign() < 0) p = -p;
        break;
      }
    }
    normal_ = Vec(normal.size());
    for (std::size_t i = 0; i < normal.size(); ++i) normal_[i] = p[i];
    offset_ = p[normal.size()];
  }

  const Vec& normal() const { return normal_; }
  const Rat& offset() const { return offset_; }
  std::size_t dimension() const { return normal_.size(); }

  /// normal . x - offset
  Rat value(const Vec& x) const { return dot(normal_, x) - offset_; }
  int side(const Vec& x) const { return value(x).sign(); }

  AffineSubspace subspace() const { return hyperplane_subspace(normal_, offset_); }

  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
  friend std::strong_ordering operator<=>(const Hyperplane& a, const Hyperplane& b) {
    if (auto c = a.normal_ <=> b.normal_; c != 0) return c;
    return a.offset_ <=> b.offset_;
  }

  std::string str() const { return normal_.str() + ".x = " + offset_.str(); }

 private:
  Vec normal_;
  Rat offset_;
};

/// All hyperplanes on which two arguments of some term tie, deduplicated and
/// sorted. Differences that are constant are dropped (they never tie).
inline std::vector<Hyperplane> arrangement_of(const CpwlExpr& f) {
  std::vector<Hyperplane> hs;
  for (const auto& t : f.terms()) {
    for (std::size_t i = 0; i < t.arguments.size(); ++i) {
      for (std::size_t j = i + 1; j < t.arguments.size(); ++j) {
        AffineFunc d = t.arguments[i] - t.arguments[j];
        if (d.a.is_zero()) continue;
        hs.emplace_back(d.a, -d.b);
      }
    }
  }
  std::sort(hs.begin(), hs.end());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
  return hs;
}

inline std::vector<Hyperplane> merge_arrangements(std::vector<Hyperplane> a,
                                                  const std::vector<Hyperplane>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

using SignVector = std::vector<int>;

inline SignVector sign_vector(const std::vector<Hyperplane>& hs, const Vec& x) {
  SignVector s;
  s.reserve(hs.size());
  for (const auto& h : hs) s.push_back(h.side(x));
  return s;
}

/// A relatively open cell of an arrangement restricted to a support subspace.
struct Cell {
  SignVector signs;         // one entry per family hyperplane
  std::size_t dim = 0;
  Vec sample;               // relative-interior point
  AffineSubspace subspace;  // affine hull
};

/// Half of the first positive crossing time of x + t v with any function in
/// `fs` that is nonzero at x; 1 if there is no crossing.
inline Rat clearance_affine(const Vec& x, const Vec& v, const std::vector<AffineFunc>& fs) {
  std::optional<Rat> best;
  for (const auto& f : fs) {
    Rat fx = f(x);
    if (fx.is_zero()) continue;
    Rat rate = dot(f.a, v);
    if (rate.is_zero()) continue;
    Rat t = -fx / rate;
    if (t.sign() > 0 && (!best || t < *best)) best = t;
  }
  return best ? *best / Rat(2) : Rat(1);
}

/// The exact step length realizing epsilon-limits: for all 0 < eps <= result,
/// the segment (x, x + eps v] crosses no hyperplane that x is not already on.
inline Rat clearance(const Vec& x, const Vec& v, const std::vector<Hyperplane>& hs) {
  if (v.is_zero()) throw Error(ErrorCode::invalid_argument, "clearance along zero vector");
  std::vector<AffineFunc> fs;
  fs.reserve(hs.size());
  for (const auto& h : hs) fs.push_back({h.normal(), -h.offset()});
  return clearance_affine(x, v, fs);
}

enum class CellScope { all, full_dimensional };

/// The cells of an arrangement restricted to an affine support subspace.
class StratifiedFamily {
 public:
  StratifiedFamily(std::vector<Hyperplane> hs, AffineSubspace support,
                   std::vector<Cell> cells, CellScope scope)
      : hyperplanes_(std::move(hs)), support_(std::move(support)),
        cells_(std::move(cells)), scope_(scope) {
    for (std::size_t i = 0; i < cells_.size(); ++i) index_.emplace(cells_[i].signs, i);
  }

  const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
  const AffineSubspace& support_subspace() const { return support_; }
  const std::vector<Cell>& cells() const { return cells_; }
  CellScope scope() const { return scope_; }

  std::vector<std::size_t> cells_of_dim(std::size_t d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (cells_[i].dim == d) out.push_back(i);
    }
    return out;
  }
  std::vector<std::size_t> full_dimensional() const {
    return cells_of_dim(support_.dim());
  }

  /// Index of the cell containing x, which must lie in the support.
  std::optional<std::size_t> locate(const Vec& x) const {
    if (!support_.contains(x)) return std::nullopt;
    auto it = index_.find(sign_vector(hyperplanes_, x));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// True when x lies in a full-dimensional cell.
  bool is_generic(const Vec& x) const {
    auto c = locate(x);
    return c && cells_[*c].dim == support_.dim();
  }

  /// Hyperplanes that neither contain the support nor miss it entirely.
  std::vector<std::size_t> effective_hyperplanes() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < hyperplanes_.size(); ++i) {
      const auto& a = hyperplanes_[i].normal();
      bool moves = false;
      for (const auto& d : support_.directions().basis()) {
        if (!dot(a, d).is_zero()) { moves = true; break; }
      }
      if (moves) out.push_back(i);
    }
    return out;
  }

 private:
  std::vector<Hyperplane> hyperplanes_;
  AffineSubspace support_;
  std::vector<Cell> cells_;
  CellScope scope_;
  std::map<SignVector, std::size_t> index_;
};

namespace detail {

struct Face {
  SignVector signs;     // over the distinct restricted hyperplanes inserted so far
  AffineSubspace aff;   // in parameter coordinates
  Vec sample;           // in parameter coordinates
};

// f restricted to the parametrization t -> s.at(t) of subspace s.
inline AffineFunc restrict_to(const AffineFunc& f, const AffineSubspace& s) {
  const auto& basis = s.directions().basis();
  Vec a(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) a[j] = dot(f.a, basis[j]);
  return {std::move(a), f(s.anchor())};
}

inline std::vector<AffineFunc> strict_constraints(const Face& face,
                                                  const std::vector<AffineFunc>& rs) {
  std::vector<AffineFunc> out;
  for (std::size_t i = 0; i < face.signs.size(); ++i) {
    if (face.signs[i] != 0) out.push_back(rs[i] * Rat(face.signs[i]));
  }
  return out;
}

inline AffineSubspace zero_set(const AffineFunc& r) { return hyperplane_subspace(r.a, -r.b); }

}  // namespace detail

/// All nonempty cells of the arrangement `hs` inside `within`, each with an
/// exact relative-interior sample point. Hyperplanes containing `within` are
/// recorded with sign 0 and impose nothing; hyperplanes parallel to it carry
/// their constant sign.
///
/// Cells are built by inserting hyperplanes one at a time into the current
/// face list. A face is split only when the new hyperplane meets it, which is
/// decided by an exact strict-feasibility LP.
inline StratifiedFamily enumerate_cells(const std::vector<Hyperplane>& hs,
                                        const AffineSubspace& within,
                                        CellScope scope = CellScope::all) {
  std::size_t n = within.ambient();
  for (const auto& h : hs) require_dimension(h.dimension(), n, "enumerate_cells");
  std::size_t d = within.dim();

  // Restrict to parameter space and merge hyperplanes that coincide there.
  std::vector<AffineFunc> rs;
  std::map<AffineFunc, std::size_t> group_of;
  struct Origin { std::optional<std::size_t> group; int orientation; int fixed; };
  std::vector<Origin> origin;
  for (const auto& h : hs) {
    AffineFunc r = detail::restrict_to(AffineFunc{h.normal(), -h.offset()}, within);
    if (r.a.is_zero()) {
      origin.push_back({std::nullopt, 0, r.b.sign()});
      continue;
    }
    Rat lead;
    for (const auto& c : r.a) if (!c.is_zero()) { lead = c; break; }
    AffineFunc key = r * lead.inverse();
    auto [it, fresh] = group_of.emplace(key, rs.size());
    if (fresh) rs.push_back(key);
    origin.push_back({it->second, lead.sign(), 0});
  }

  std::vector<detail::Face> faces{{{}, AffineSubspace::whole(d), Vec(d)}};
  for (std::size_t j = 0; j < rs.size(); ++j) {
    const AffineFunc& r = rs[j];
    std::vector<detail::Face> next;
    next.reserve(faces.size() * 2);
    for (auto& face : faces) {
      auto with = [&](int s, Vec sample, AffineSubspace aff) {
        detail::Face f{face.signs, std::move(aff), std::move(sample)};
        f.signs.push_back(s);
        next.push_back(std::move(f));
      };
      Rat val = r(face.sample);
      AffineFunc on_face = detail::restrict_to(r, face.aff);
      if (on_face.a.is_zero()) {
        with(val.sign(), face.sample, face.aff);
        continue;
      }
      auto strict = detail::strict_constraints(face, rs);
      auto cut = intersect(face.aff, detail::zero_set(r));
      if (val.is_zero()) {
        Vec g(d);
        const auto& basis = face.aff.directions().basis();
        for (std::size_t k = 0; k < basis.size(); ++k) g += basis[k] * on_face.a[k];
        Rat up = clearance_affine(face.sample, g, strict);
        Rat down = clearance_affine(face.sample, -g, strict);
        with(1, face.sample + g * up, face.aff);
        with(-1, face.sample - g * down, face.aff);
        if (scope == CellScope::all) with(0, face.sample, *cut);
        continue;
      }
      std::vector<AffineFunc> on_cut;
      on_cut.reserve(strict.size());
      for (const auto& s : strict) on_cut.push_back(detail::restrict_to(s, *cut));
      auto w = find_strict_point(on_cut, cut->dim());
      if (!w) {
        with(val.sign(), face.sample, face.aff);
        continue;
      }
      Vec q = cut->at(*w);
      Vec away = q - face.sample;
      Rat step = clearance_affine(q, away, strict);
      Vec other = q + away * step;
      AffineSubspace aff = face.aff;
      with(val.sign(), face.sample, aff);
      with(-val.sign(), std::move(other), aff);
      if (scope == CellScope::all) with(0, std::move(q), *cut);
    }
    faces = std::move(next);
  }

  std::vector<Cell> cells;
  cells.reserve(faces.size());
  const auto& dirs = within.directions().basis();
  for (auto& face : faces) {
    Cell c;
    c.signs.resize(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) {
      c.signs[i] = origin[i].group ? origin[i].orientation * face.signs[*origin[i].group]
                                   : origin[i].fixed;
    }
    c.dim = face.aff.dim();
    c.sample = within.at(face.sample);
    Rows cell_dirs;
    for (const auto& b : face.aff.directions().basis()) {
      Vec v(n);
      for (std::size_t k = 0; k < d; ++k) {
        if (!b[k].is_zero()) v += dirs[k] * b[k];
      }
      cell_dirs.push_back(std::move(v));
    }
    c.subspace = AffineSubspace::from_parametric(within.at(face.aff.anchor()), cell_dirs);
    cells.push_back(std::move(c));
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.dim != b.dim) return a.dim > b.dim;
    return a.signs < b.signs;
  });
  return StratifiedFamily(hs, within, std::move(cells), scope);
}

/// The family restricted to H, which must sit inside the current support with
/// codimension exactly one more.
inline StratifiedFamily restrict(const StratifiedFamily& fam, const AffineSubspace& h) {
  const auto& support = fam.support_subspace();
  if (!support.contains(h) || h.dim() + 1 != support.dim()) {
    throw Error(ErrorCode::invalid_argument,
                "restrict: " + h.str() + " is not a hyperplane of " + support.str());
  }
  return enumerate_cells(fam.hyperplanes(), h, fam.scope());
}

}  // namespace maxarity
