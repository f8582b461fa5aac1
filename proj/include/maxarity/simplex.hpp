#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "maxarity/linalg.hpp"
#include "maxarity/rational.hpp"

namespace maxarity {

namespace detail {

// Dense tableau for: maximize c.x subject to A x <= b, x >= 0, with b >= 0 so
// the all-slack basis is feasible from the start. Bland's rule.
class Tableau {
 public:
  Tableau(const Rows& a, const std::vector<Rat>& b, const Vec& c)
      : m_(a.size()), nv_(c.size()) {
    cols_ = nv_ + m_ + 1;
    t_.assign(m_ + 1, Vec(cols_));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < nv_; ++j) t_[i][j] = a[i][j];
      t_[i][nv_ + i] = 1;
      t_[i][cols_ - 1] = b[i];
    }
    for (std::size_t j = 0; j < nv_; ++j) t_[m_][j] = -c[j];
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = nv_ + i;
  }

  // Returns false if unbounded.
  bool solve() {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j + 1 < cols_; ++j) {
        if (t_[m_][j].sign() < 0) { enter = j; break; }
      }
      if (enter == cols_) return true;
      std::size_t leave = m_;
      Rat best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][enter].sign() <= 0) continue;
        Rat ratio = t_[i][cols_ - 1] / t_[i][enter];
        if (leave == m_ || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  Vec solution() const {
    Vec x(nv_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < nv_) x[basis_[i]] = t_[i][cols_ - 1];
    }
    return x;
  }
  Rat objective() const { return t_[m_][cols_ - 1]; }

 private:
  void pivot(std::size_t r, std::size_t c) {
    Rat inv = t_[r][c].inverse();
    t_[r] *= inv;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || t_[i][c].is_zero()) continue;
      Rat f = t_[i][c];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!t_[r][j].is_zero()) t_[i][j] -= f * t_[r][j];
      }
    }
    basis_[r] = c;
  }

  std::size_t m_, nv_, cols_;
  std::vector<Vec> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Finds u in Q^dim with h(u) > 0 for every h in `strict`, or nullopt if the
/// open polyhedron is empty. The point maximizes min(min_i h_i(u), 1), so it
/// sits well inside the region rather than near its boundary.
inline std::optional<Vec> find_strict_point(const std::vector<AffineFunc>& strict,
                                            std::size_t dim) {
  for (const auto& h : strict) require_dimension(h.dimension(), dim, "find_strict_point");
  if (strict.empty()) return Vec(dim);
  // max s  s.t.  h_i(u) >= s,  s <= 1.  Substitute u = p - q and s = s' + s0
  // with s0 = min(0, min_i h_i(0)) so that p = q = s' = 0 is feasible.
  Rat s0 = 0;
  for (const auto& h : strict) s0 = min(s0, h.b);
  std::size_t nv = 2 * dim + 1;
  Rows a;
  std::vector<Rat> b;
  for (const auto& h : strict) {
    Vec row(nv);
    for (std::size_t j = 0; j < dim; ++j) {
      row[j] = -h.a[j];
      row[dim + j] = h.a[j];
    }
    row[2 * dim] = 1;
    a.push_back(std::move(row));
    b.push_back(h.b - s0);
  }
  Vec cap(nv);
  cap[2 * dim] = 1;
  a.push_back(std::move(cap));
  b.push_back(Rat(1) - s0);
  Vec c(nv);
  c[2 * dim] = 1;
  detail::Tableau t(a, b, c);
  t.solve();  // bounded: s' <= 1 - s0
  if ((t.objective() + s0).sign() <= 0) return std::nullopt;
  Vec x = t.solution();
  Vec u(dim);
  for (std::size_t j = 0; j < dim; ++j) u[j] = x[j] - x[dim + j];
  return u;
}

}  // namespace maxarity
