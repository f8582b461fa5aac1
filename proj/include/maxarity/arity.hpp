#pragma once

#include <optional>
#include <vector>

#include "maxarity/delta.hpp"

namespace maxarity {

/// Two generic points of a flag's last subspace where its delta differs.
struct NonConstancyWitness {
  Flag flag;
  Vec first, second;
  Vec first_value, second_value;
};

struct ConstancyEntry {
  Flag flag;
  Vec value;
};

struct ArityCertificate {
  std::size_t k_star = 1;
  std::size_t depth_bound = 1;
  std::vector<ConstancyEntry> constancy;  // every nonzero flag of length k_star - 1
  std::optional<NonConstancyWitness> witness;
};

struct ArityCheck {
  bool holds = true;
  std::optional<NonConstancyWitness> violation;
  explicit operator bool() const { return holds; }
};

/// ceil(log2 k) + 1
inline std::size_t depth_bound_for(std::size_t k) {
  std::size_t c = 0;
  while ((std::size_t{1} << c) < k) ++c;
  return c + 1;
}

namespace detail {

inline std::optional<NonConstancyWitness> first_non_constant(DeltaEngine& e,
                                                             const std::vector<Flag>& flags) {
  for (const auto& fl : flags) {
    const auto& d = e.delta(fl);
    if (auto j = d.jump()) {
      const auto& cells = d.cells.cells();
      return NonConstancyWitness{fl, cells[j->first].sample, cells[j->second].sample,
                                 d.values[j->first], d.values[j->second]};
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Smallest k such that every flag of length k - 1 has constant delta of the
/// gradient. Flags outside the nonzero family have zero delta, so only the
/// family needs checking.
inline ArityCertificate minimal_arity(const CpwlExpr& f) {
  DeltaEngine e{GradientField(f)};
  std::size_t n = f.dimension();
  auto levels = e.nonzero_flags_by_length(n);
  ArityCertificate cert;
  std::optional<NonConstancyWitness> below;
  for (std::size_t len = 0; len <= n; ++len) {
    const auto& flags = len < levels.size() ? levels[len] : std::vector<Flag>{};
    auto bad = detail::first_non_constant(e, flags);
    if (!bad) {
      cert.k_star = len + 1;
      for (const auto& fl : flags) cert.constancy.push_back({fl, e.delta(fl).values.front()});
      cert.witness = below;
      cert.depth_bound = depth_bound_for(cert.k_star);
      return cert;
    }
    below = bad;
  }
  throw Error(ErrorCode::internal_verification, "delta on a point was not constant");
}

inline ArityCheck check_arity(const CpwlExpr& f, std::size_t k) {
  std::size_t n = f.dimension();
  if (k < 1 || k > n + 1) throw Error(ErrorCode::invalid_argument, "check_arity: k out of range");
  DeltaEngine e{GradientField(f)};
  auto levels = e.nonzero_flags_by_length(k - 1);
  const auto& flags = k - 1 < levels.size() ? levels[k - 1] : std::vector<Flag>{};
  auto bad = detail::first_non_constant(e, flags);
  return {!bad, bad};
}

}  // namespace maxarity
