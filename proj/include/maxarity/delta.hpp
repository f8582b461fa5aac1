#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "maxarity/arrangement.hpp"
#include "maxarity/expr.hpp"

namespace maxarity {

/// A chain H_1 > H_2 > ... > H_k of affine subspaces of Q^n with
/// dim(H_i) = n - i. Length 0 stands for the ambient space.
class Flag {
 public:
  Flag() = default;
  explicit Flag(std::size_t n, std::vector<AffineSubspace> chain = {})
      : n_(n), chain_(std::move(chain)) {
    for (std::size_t i = 0; i < chain_.size(); ++i) {
      require_dimension(chain_[i].ambient(), n_, "Flag");
      bool nested = i == 0 || chain_[i - 1].contains(chain_[i]);
      if (chain_[i].dim() + i + 1 != n_ || !nested) {
        throw Error(ErrorCode::invalid_argument, "not a flag: " + str());
      }
    }
  }

  std::size_t ambient() const { return n_; }
  std::size_t length() const { return chain_.size(); }
  const std::vector<AffineSubspace>& chain() const { return chain_; }
  const AffineSubspace& operator[](std::size_t i) const { return chain_[i]; }

  /// H_i for i in 0..k, where H_0 is the whole space.
  AffineSubspace level(std::size_t i) const {
    return i == 0 ? AffineSubspace::whole(n_) : chain_[i - 1];
  }
  AffineSubspace last() const { return level(length()); }

  Flag prefix(std::size_t k) const {
    return Flag(n_, {chain_.begin(), chain_.begin() + static_cast<std::ptrdiff_t>(k)});
  }
  Flag extended(const AffineSubspace& h) const {
    auto c = chain_;
    c.push_back(h);
    return Flag(n_, std::move(c));
  }

  friend bool operator==(const Flag& a, const Flag& b) {
    return a.n_ == b.n_ && a.chain_ == b.chain_;
  }
  friend std::strong_ordering operator<=>(const Flag& a, const Flag& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.chain_.begin(), a.chain_.end(),
                                                  b.chain_.begin(), b.chain_.end());
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < chain_.size(); ++i) {
      if (i) s += ", ";
      s += chain_[i].str();
    }
    return s + ")";
  }

 private:
  std::size_t n_ = 0;
  std::vector<AffineSubspace> chain_;
};

/// v_1..v_k with v_i in dir(H_{i-1}) but not in dir(H_i).
struct Directional {
  std::vector<Vec> vectors;

  bool valid_for(const Flag& flag) const {
    if (vectors.size() != flag.length()) return false;
    for (std::size_t i = 1; i <= flag.length(); ++i) {
      const Vec& v = vectors[i - 1];
      if (v.size() != flag.ambient()) return false;
      if (!flag.level(i - 1).directions().contains(v)) return false;
      if (flag.level(i).directions().contains(v)) return false;
    }
    return true;
  }
};

/// The canonical directional: v_i spans dir(H_{i-1}) intersected with the
/// orthogonal complement of dir(H_i), scaled to a primitive integer vector
/// whose first nonzero entry is positive.
inline Directional make_directional(const Flag& flag) {
  Directional d;
  for (std::size_t i = 1; i <= flag.length(); ++i) {
    auto step = intersect(flag.level(i - 1).directions(),
                          flag.level(i).directions().orthogonal_complement());
    d.vectors.push_back(primitive_direction(step.basis().front()));
  }
  if (!d.valid_for(flag)) {
    throw Error(ErrorCode::internal_verification, "make_directional produced an invalid directional");
  }
  return d;
}

struct DeltaFunction {
  Flag flag;
  StratifiedFamily cells;   // full-dimensional cells of the arrangement on H_k
  std::vector<Vec> values;  // one per cell

  bool is_zero() const {
    return std::all_of(values.begin(), values.end(), [](const Vec& v) { return v.is_zero(); });
  }
  bool is_constant() const {
    return std::all_of(values.begin(), values.end(),
                       [&](const Vec& v) { return v == values.front(); });
  }
  /// Indices of two cells with different values, if any.
  std::optional<std::pair<std::size_t, std::size_t>> jump() const {
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i] != values.front()) return std::pair{std::size_t{0}, i};
    }
    return std::nullopt;
  }
};

struct LinealityResult {
  LinearSubspace space;
  std::size_t lnum = 0;
};

/// Delta functions of one gradient field. Holds the arrangement and caches
/// results per flag.
class DeltaEngine {
 public:
  explicit DeltaEngine(GradientField f)
      : f_(std::move(f)), hs_(arrangement_of(f_.source())) {}

  const GradientField& field() const { return f_; }
  const std::vector<Hyperplane>& hyperplanes() const { return hs_; }
  std::size_t dimension() const { return f_.dimension(); }

  /// True when x lies in a full-dimensional cell of the arrangement on H.
  bool is_generic_in(const Vec& x, const AffineSubspace& h) const {
    if (!h.contains(x)) return false;
    for (const auto& hp : hs_) {
      if (hp.side(x) == 0 && !hp.subspace().contains(h)) return false;
    }
    return true;
  }

  /// Delta at a point generic in the last subspace of the flag. Each limit is
  /// taken at the exact clearance, where the inner value has stabilized.
  Vec value_at(const Flag& flag, const Directional& dir, const Vec& x) const {
    return value_at(flag.length(), dir, x);
  }
  Vec value_at(const Flag& flag, const Vec& x) const {
    return value_at(flag, directional(flag), x);
  }

  const DeltaFunction& delta(const Flag& flag) {
    auto it = cache_.find(flag);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(flag, compute(flag, directional(flag))).first->second;
  }
  DeltaFunction delta(const Flag& flag, const Directional& dir) const {
    if (!dir.valid_for(flag)) {
      throw Error(ErrorCode::invalid_argument, "directional does not fit flag " + flag.str());
    }
    return compute(flag, dir);
  }

  /// Proper one-step extensions of the flag by arrangement hyperplanes.
  std::vector<Flag> extensions(const Flag& flag) const {
    std::set<AffineSubspace> seen;
    std::vector<Flag> out;
    if (flag.length() >= dimension()) return out;
    AffineSubspace last = flag.last();
    for (const auto& h : hs_) {
      auto cut = intersect(last, h.subspace());
      if (!cut || cut->dim() + 1 != last.dim()) continue;
      if (seen.insert(*cut).second) out.push_back(flag.extended(*cut));
    }
    return out;
  }

  LinealityResult lineality_of_delta(const Flag& flag) {
    const DeltaFunction& d = delta(flag);
    LinearSubspace cand = flag.last().directions();
    for (const auto& ext : extensions(flag)) {
      if (cand.dim() == 0) break;
      if (!delta(ext).is_zero()) cand = intersect(cand, ext.last().directions());
    }
    verify_translations(flag, d, cand);
    return {cand, cand.dim()};
  }

  /// The nonzero-delta flags up to the given length, grouped by length.
  /// Extensions are only explored below flags with non-constant delta: a
  /// constant delta has no jumps, so every extension of it is zero.
  std::vector<std::vector<Flag>> nonzero_flags_by_length(std::size_t max_len) {
    std::vector<std::vector<Flag>> levels(1, {Flag(dimension())});
    std::vector<Flag> frontier;
    if (!delta(Flag(dimension())).is_constant()) frontier.push_back(Flag(dimension()));
    for (std::size_t k = 1; k <= max_len && k <= dimension(); ++k) {
      std::set<Flag> next;
      for (const auto& parent : frontier) {
        for (auto& ext : extensions(parent)) {
          if (!delta(ext).is_zero()) next.insert(std::move(ext));
        }
      }
      levels.emplace_back(next.begin(), next.end());
      frontier.clear();
      for (const auto& fl : levels.back()) {
        if (!delta(fl).is_constant()) frontier.push_back(fl);
      }
    }
    return levels;
  }

 private:
  Directional directional(const Flag& flag) const {
    auto it = dirs_.find(flag);
    if (it != dirs_.end()) return it->second;
    return dirs_.emplace(flag, make_directional(flag)).first->second;
  }

  Vec value_at(std::size_t j, const Directional& dir, const Vec& x) const {
    if (j == 0) return f_.at(x);
    const Vec& v = dir.vectors[j - 1];
    Rat eps = min(clearance(x, v, hs_), clearance(x, -v, hs_));
    return value_at(j - 1, dir, x + v * eps) - value_at(j - 1, dir, x - v * eps);
  }

  DeltaFunction compute(const Flag& flag, const Directional& dir) const {
    auto fam = enumerate_cells(hs_, flag.last(), CellScope::full_dimensional);
    std::vector<Vec> values;
    values.reserve(fam.cells().size());
    for (const auto& c : fam.cells()) values.push_back(value_at(flag.length(), dir, c.sample));
    return {flag, std::move(fam), std::move(values)};
  }

  void verify_translations(const Flag& flag, const DeltaFunction& d,
                           const LinearSubspace& cand) const {
    static const Rat kSteps[] = {Rat(1), Rat(-1), Rat(3, 2), Rat(-5, 3), Rat(7), Rat(-11, 2)};
    auto dir = directional(flag);
    for (const auto& b : cand.basis()) {
      for (std::size_t i = 0; i < d.cells.cells().size(); ++i) {
        const Vec& s = d.cells.cells()[i].sample;
        for (const auto& lambda : kSteps) {
          Vec y = s + b * lambda;
          if (!is_generic_in(y, flag.last())) continue;
          if (value_at(flag.length(), dir, y) != d.values[i]) {
            throw Error(ErrorCode::internal_verification,
                        "lineality candidate fails translation test on " + flag.str());
          }
        }
      }
    }
  }

  GradientField f_;
  std::vector<Hyperplane> hs_;
  std::map<Flag, DeltaFunction> cache_;
  mutable std::map<Flag, Directional> dirs_;
};

inline DeltaFunction delta(const GradientField& f, const Flag& flag) {
  DeltaEngine e(f);
  return e.delta(flag);
}

inline bool is_constant(const DeltaFunction& d) { return d.is_constant(); }
inline bool is_zero(const DeltaFunction& d) { return d.is_zero(); }

inline LinealityResult lineality_of_delta(const GradientField& f, const Flag& flag) {
  DeltaEngine e(f);
  return e.lineality_of_delta(flag);
}

/// Directions v with f(x + v) = f(x) at every generic x.
inline LinealityResult lineality(const GradientField& f) {
  return lineality_of_delta(f, Flag(f.dimension()));
}

/// All flags of length 1..max_len with nonzero delta, ordered by length then
/// structurally.
inline std::vector<Flag> nonzero_flags(const GradientField& f, std::size_t max_len) {
  if (max_len < 1 || max_len > f.dimension()) {
    throw Error(ErrorCode::invalid_argument, "nonzero_flags: max_len out of range");
  }
  DeltaEngine e(f);
  auto levels = e.nonzero_flags_by_length(max_len);
  std::vector<Flag> out;
  for (std::size_t k = 1; k < levels.size(); ++k) {
    out.insert(out.end(), levels[k].begin(), levels[k].end());
  }
  return out;
}

}  // namespace maxarity
