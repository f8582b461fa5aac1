#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "maxarity/error.hpp"
#include "maxarity/rational.hpp"

namespace maxarity {

/// A point or direction in Q^n. The length is fixed at construction.
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t n) : e_(n) {}
  Vec(std::initializer_list<Rat> xs) : e_(xs) {}
  explicit Vec(std::vector<Rat> xs) : e_(std::move(xs)) {}

  static Vec unit(std::size_t n, std::size_t i) {
    Vec v(n);
    v[i] = 1;
    return v;
  }

  std::size_t size() const { return e_.size(); }
  Rat& operator[](std::size_t i) { return e_[i]; }
  const Rat& operator[](std::size_t i) const { return e_[i]; }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }
  const std::vector<Rat>& entries() const { return e_; }

  bool is_zero() const {
    return std::all_of(e_.begin(), e_.end(),
                       [](const Rat& r) { return r.is_zero(); });
  }

  Vec& operator+=(const Vec& o) {
    require_dimension(o.size(), size(), "Vec +=");
    for (std::size_t i = 0; i < size(); ++i) e_[i] += o[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    require_dimension(o.size(), size(), "Vec -=");
    for (std::size_t i = 0; i < size(); ++i) e_[i] -= o[i];
    return *this;
  }
  Vec& operator*=(const Rat& c) {
    for (auto& x : e_) x *= c;
    return *this;
  }
  Vec operator-() const {
    Vec r(*this);
    for (auto& x : r.e_) x = -x;
    return r;
  }
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, const Rat& c) { return a *= c; }
  friend Vec operator*(const Rat& c, Vec a) { return a *= c; }

  friend bool operator==(const Vec&, const Vec&) = default;
  friend std::strong_ordering operator<=>(const Vec& a, const Vec& b) {
    return std::lexicographical_compare_three_way(a.e_.begin(), a.e_.end(),
                                                  b.e_.begin(), b.e_.end());
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < size(); ++i) {
      if (i) s += ", ";
      s += e_[i].str();
    }
    return s + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const Vec& v) {
    return os << v.str();
  }

 private:
  std::vector<Rat> e_;
};

inline Rat dot(const Vec& a, const Vec& b) {
  require_dimension(b.size(), a.size(), "dot");
  Rat s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Scales v to a primitive integer vector whose first nonzero entry is
/// positive. The zero vector is returned unchanged.
inline Vec primitive_direction(const Vec& v) {
  mpz_class l = 1;
  for (const auto& x : v) {
    mpz_class d = x.den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  mpz_class g = 0;
  for (const auto& x : v) {
    mpz_class n = x.num() * (l / x.den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (g == 0) return v;
  Rat scale(l, g);
  for (const auto& x : v) {
    if (!x.is_zero()) {
      if (x.sign() < 0) scale = -scale;
      break;
    }
  }
  return v * scale;
}

/// x -> a.x + b
struct AffineFunc {
  Vec a;
  Rat b;

  AffineFunc() = default;
  AffineFunc(Vec a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {}
  static AffineFunc zero(std::size_t n) { return {Vec(n), Rat()}; }
  static AffineFunc constant(std::size_t n, Rat c) { return {Vec(n), std::move(c)}; }

  std::size_t dimension() const { return a.size(); }
  Rat operator()(const Vec& x) const {
    require_dimension(x.size(), a.size(), "AffineFunc eval");
    return dot(a, x) + b;
  }
  bool is_constant() const { return a.is_zero(); }

  AffineFunc& operator+=(const AffineFunc& o) { a += o.a; b += o.b; return *this; }
  AffineFunc& operator-=(const AffineFunc& o) { a -= o.a; b -= o.b; return *this; }
  AffineFunc& operator*=(const Rat& c) { a *= c; b *= c; return *this; }
  friend AffineFunc operator+(AffineFunc x, const AffineFunc& y) { return x += y; }
  friend AffineFunc operator-(AffineFunc x, const AffineFunc& y) { return x -= y; }
  friend AffineFunc operator*(AffineFunc x, const Rat& c) { return x *= c; }
  friend AffineFunc operator*(const Rat& c, AffineFunc x) { return x *= c; }

  friend bool operator==(const AffineFunc&, const AffineFunc&) = default;
  friend std::strong_ordering operator<=>(const AffineFunc& x,
                                          const AffineFunc& y) {
    if (auto c = x.a <=> y.a; c != 0) return c;
    return x.b <=> y.b;
  }

  std::string str() const { return "<" + a.str() + ", " + b.str() + ">"; }
};

/// The equation a.x = b.
struct LinearEquation {
  Vec a;
  Rat b;

  friend bool operator==(const LinearEquation&, const LinearEquation&) = default;
  friend std::strong_ordering operator<=>(const LinearEquation& x,
                                          const LinearEquation& y) {
    if (auto c = x.a <=> y.a; c != 0) return c;
    return x.b <=> y.b;
  }
};

/// A row-major matrix as a list of rows.
using Rows = std::vector<Vec>;

struct Echelon {
  Rows rows;                         // nonzero rows, reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each row
};

/// Reduced row echelon form over the first `cols` columns of each row; the
/// remaining columns (if any) are carried along but never pivoted on.
inline Echelon rref(Rows m, std::size_t cols) {
  Echelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    Rat inv = m[r][c].inverse();
    m[r] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rat f = m[i][c];
      for (std::size_t j = 0; j < m[i].size(); ++j) {
        if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

inline std::size_t rank(const Rows& m, std::size_t cols) {
  return rref(m, cols).pivots.size();
}

/// Basis of {v : row . v = 0 for all rows}, one vector per free column.
inline Rows null_space(const Rows& m, std::size_t n) {
  Echelon e = rref(m, n);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  Rows basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec v(n);
    v[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
      v[e.pivots[i]] = -e.rows[i][f];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// A linear subspace of Q^n, stored by the reduced row echelon form of a
/// spanning set so that equal subspaces compare equal.
class LinearSubspace {
 public:
  LinearSubspace() = default;
  LinearSubspace(std::size_t n, const Rows& spanning) : n_(n) {
    for (const auto& v : spanning) require_dimension(v.size(), n, "LinearSubspace");
    basis_ = rref(spanning, n).rows;
  }
  static LinearSubspace zero(std::size_t n) { return LinearSubspace(n, {}); }
  static LinearSubspace full(std::size_t n) {
    Rows id;
    for (std::size_t i = 0; i < n; ++i) id.push_back(Vec::unit(n, i));
    return LinearSubspace(n, id);
  }

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t codim() const { return n_ - basis_.size(); }
  const Rows& basis() const& { return basis_; }
  Rows basis() && { return std::move(basis_); }

  bool contains(const Vec& v) const {
    require_dimension(v.size(), n_, "LinearSubspace::contains");
    Rows m = basis_;
    m.push_back(v);
    return rank(m, n_) == basis_.size();
  }
  bool contains(const LinearSubspace& o) const {
    return std::all_of(o.basis_.begin(), o.basis_.end(),
                       [&](const Vec& v) { return contains(v); });
  }

  /// Orthogonal complement under the standard inner product.
  LinearSubspace orthogonal_complement() const {
    return LinearSubspace(n_, null_space(basis_, n_));
  }

  friend bool operator==(const LinearSubspace&, const LinearSubspace&) = default;

 private:
  std::size_t n_ = 0;
  Rows basis_;
};

inline LinearSubspace intersect(const LinearSubspace& a, const LinearSubspace& b) {
  require_dimension(b.ambient(), a.ambient(), "intersect");
  std::size_t n = a.ambient();
  Rows normals = null_space(a.basis(), n);
  Rows nb = null_space(b.basis(), n);
  normals.insert(normals.end(), nb.begin(), nb.end());
  return LinearSubspace(n, null_space(normals, n));
}

/// W with L (+) W = Q^n. The orthogonal complement is returned, which is a
/// valid complement over Q.
inline LinearSubspace complement_basis(const LinearSubspace& l) {
  return l.orthogonal_complement();
}

/// Affine subspace of Q^n kept as the reduced row echelon form of its defining
/// equations, so set-equal subspaces compare equal structurally. Construct via
/// solve_linear or from_points.
class AffineSubspace {
 public:
  AffineSubspace() = default;

  static AffineSubspace whole(std::size_t n) {
    AffineSubspace s;
    s.n_ = n;
    s.anchor_ = Vec(n);
    s.directions_ = LinearSubspace::full(n);
    return s;
  }
  static AffineSubspace point(const Vec& p) {
    std::size_t n = p.size();
    Rows eq;
    for (std::size_t i = 0; i < n; ++i) {
      Vec row(n + 1);
      row[i] = 1;
      row[n] = p[i];
      eq.push_back(std::move(row));
    }
    return *from_augmented(n, std::move(eq));
  }
  /// anchor + span(directions)
  static AffineSubspace from_parametric(const Vec& anchor, const Rows& directions) {
    std::size_t n = anchor.size();
    Rows normals = null_space(directions, n);
    Rows eq;
    for (auto& a : normals) {
      Vec row(n + 1);
      for (std::size_t i = 0; i < n; ++i) row[i] = a[i];
      row[n] = dot(a, anchor);
      eq.push_back(std::move(row));
    }
    return *from_augmented(n, std::move(eq));
  }

  /// Rows are [a_1 .. a_n | b] meaning a.x = b. Empty when inconsistent.
  static std::optional<AffineSubspace> from_augmented(std::size_t n, Rows rows) {
    for (const auto& r : rows) require_dimension(r.size(), n + 1, "equation system");
    Echelon e = rref(std::move(rows), n + 1);
    if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
    AffineSubspace s;
    s.n_ = n;
    s.eq_ = std::move(e.rows);
    s.anchor_ = Vec(n);
    for (std::size_t i = 0; i < s.eq_.size(); ++i) {
      s.anchor_[e.pivots[i]] = s.eq_[i][n];
    }
    Rows lin;
    for (const auto& r : s.eq_) {
      Vec a(n);
      for (std::size_t i = 0; i < n; ++i) a[i] = r[i];
      lin.push_back(std::move(a));
    }
    s.directions_ = LinearSubspace(n, null_space(lin, n));
    return s;
  }

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return directions_.dim(); }
  std::size_t codim() const { return n_ - dim(); }
  const Vec& anchor() const { return anchor_; }
  const LinearSubspace& directions() const& { return directions_; }
  LinearSubspace directions() && { return std::move(directions_); }

  std::vector<LinearEquation> equations() const {
    std::vector<LinearEquation> out;
    for (const auto& r : eq_) {
      Vec a(n_);
      for (std::size_t i = 0; i < n_; ++i) a[i] = r[i];
      out.push_back({std::move(a), r[n_]});
    }
    return out;
  }
  const Rows& augmented() const { return eq_; }

  bool contains(const Vec& x) const {
    require_dimension(x.size(), n_, "AffineSubspace::contains");
    for (const auto& r : eq_) {
      Rat s;
      for (std::size_t i = 0; i < n_; ++i) s += r[i] * x[i];
      if (s != r[n_]) return false;
    }
    return true;
  }
  /// Set inclusion: o is a subset of *this.
  bool contains(const AffineSubspace& o) const {
    return contains(o.anchor_) && directions_.contains(o.directions_);
  }

  /// Map from parameter coordinates t in Q^dim to anchor + D t.
  Vec at(const Vec& t) const {
    require_dimension(t.size(), dim(), "AffineSubspace::at");
    Vec x = anchor_;
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (!t[j].is_zero()) x += directions_.basis()[j] * t[j];
    }
    return x;
  }

  friend bool operator==(const AffineSubspace& a, const AffineSubspace& b) {
    return a.n_ == b.n_ && a.eq_ == b.eq_;
  }
  friend std::strong_ordering operator<=>(const AffineSubspace& a,
                                          const AffineSubspace& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.eq_.size() <=> b.eq_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.eq_.begin(), a.eq_.end(),
                                                  b.eq_.begin(), b.eq_.end());
  }

  std::string str() const {
    if (eq_.empty()) return "Q^" + std::to_string(n_);
    std::string s = "{";
    for (std::size_t k = 0; k < eq_.size(); ++k) {
      if (k) s += "; ";
      bool any = false;
      for (std::size_t i = 0; i < n_; ++i) {
        const Rat& c = eq_[k][i];
        if (c.is_zero()) continue;
        if (any) s += c.sign() > 0 ? " + " : " - ";
        else if (c.sign() < 0) s += "-";
        Rat m = c.abs();
        if (m != Rat(1)) s += m.str() + "*";
        s += "x" + std::to_string(i + 1);
        any = true;
      }
      s += " = " + eq_[k][n_].str();
    }
    return s + "}";
  }

 private:
  std::size_t n_ = 0;
  Rows eq_;
  Vec anchor_;
  LinearSubspace directions_;
};

/// Solution set of the simultaneous equations a.x = b in Q^n, or nullopt when
/// the system is inconsistent.
inline std::optional<AffineSubspace> solve_linear(
    std::size_t n, std::span<const LinearEquation> system) {
  Rows rows;
  for (const auto& e : system) {
    require_dimension(e.a.size(), n, "solve_linear");
    Vec r(n + 1);
    for (std::size_t i = 0; i < n; ++i) r[i] = e.a[i];
    r[n] = e.b;
    rows.push_back(std::move(r));
  }
  return AffineSubspace::from_augmented(n, std::move(rows));
}

inline std::optional<AffineSubspace> solve_linear(
    std::size_t n, std::initializer_list<LinearEquation> system) {
  return solve_linear(n, std::span<const LinearEquation>(system.begin(), system.size()));
}

inline std::optional<AffineSubspace> intersect(const AffineSubspace& a,
                                               const AffineSubspace& b) {
  require_dimension(b.ambient(), a.ambient(), "intersect");
  Rows rows = a.augmented();
  rows.insert(rows.end(), b.augmented().begin(), b.augmented().end());
  return AffineSubspace::from_augmented(a.ambient(), std::move(rows));
}

/// a.x = b as a one-equation subspace of Q^n.
inline AffineSubspace hyperplane_subspace(const Vec& a, const Rat& b) {
  if (a.is_zero()) throw Error(ErrorCode::invalid_argument, "zero normal");
  Vec row(a.size() + 1);
  for (std::size_t i = 0; i < a.size(); ++i) row[i] = a[i];
  row[a.size()] = b;
  return *AffineSubspace::from_augmented(a.size(), {row});
}

}  // namespace maxarity
