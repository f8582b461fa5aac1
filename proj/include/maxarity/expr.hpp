#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxarity/error.hpp"
#include "maxarity/linalg.hpp"
#include "maxarity/rational.hpp"

namespace maxarity {

/// coefficient * max(arguments...). Arguments are kept sorted and distinct.
struct MaxTerm {
  Rat coefficient;
  std::vector<AffineFunc> arguments;

  std::size_t arity() const { return arguments.size(); }

  Rat eval(const Vec& x) const {
    Rat best = arguments.front()(x);
    for (std::size_t j = 1; j < arguments.size(); ++j) best = max(best, arguments[j](x));
    return coefficient * best;
  }

  /// Index of the unique maximizing argument, or nullopt on a tie.
  std::optional<std::size_t> strict_argmax(const Vec& x) const {
    std::size_t arg = 0;
    Rat best = arguments[0](x);
    bool tie = false;
    for (std::size_t j = 1; j < arguments.size(); ++j) {
      Rat v = arguments[j](x);
      if (v > best) {
        best = v;
        arg = j;
        tie = false;
      } else if (v == best) {
        tie = true;
      }
    }
    if (tie) return std::nullopt;
    return arg;
  }

  friend bool operator==(const MaxTerm&, const MaxTerm&) = default;
};

/// An affine map x -> M x + c from Q^m to Q^n; `rows` has n rows of length m.
struct AffineMap {
  Rows rows;
  Vec offset;

  std::size_t source_dim() const { return rows.empty() ? 0 : rows.front().size(); }
  std::size_t target_dim() const { return rows.size(); }

  Vec operator()(const Vec& x) const {
    Vec y = offset;
    for (std::size_t i = 0; i < rows.size(); ++i) y[i] += dot(rows[i], x);
    return y;
  }

  /// g o this, for g an affine function on the target space.
  AffineFunc pull_back(const AffineFunc& g, std::size_t m) const {
    require_dimension(g.dimension(), target_dim(), "AffineMap::pull_back");
    Vec a(m);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (g.a[i].is_zero()) continue;
      a += rows[i] * g.a[i];
    }
    return {std::move(a), dot(g.a, offset) + g.b};
  }

  static AffineMap linear(const Rows& rows) {
    return {rows, Vec(rows.size())};
  }
  static AffineMap translation(const Vec& c) {
    Rows id;
    for (std::size_t i = 0; i < c.size(); ++i) id.push_back(Vec::unit(c.size(), i));
    return {std::move(id), c};
  }
};

/// A continuous piecewise-linear function Q^n -> Q written as
///   affine(x) + sum_i c_i * max_j g_ij(x).
///
/// The representation is canonical: arguments inside a term are sorted and
/// distinct, arity-1 terms are folded into the affine part, terms with the same
/// argument list are merged, and zero coefficients are dropped.
class CpwlExpr {
 public:
  CpwlExpr() = default;
  explicit CpwlExpr(std::size_t n) : n_(n), affine_(AffineFunc::zero(n)) {}
  CpwlExpr(std::size_t n, AffineFunc affine, std::vector<MaxTerm> terms)
      : n_(n), affine_(std::move(affine)) {
    require_dimension(affine_.dimension(), n, "CpwlExpr affine part");
    for (auto& t : terms) add_term(std::move(t.coefficient), std::move(t.arguments));
    canonicalize();
  }

  static CpwlExpr affine(AffineFunc f) {
    std::size_t n = f.dimension();
    return CpwlExpr(n, std::move(f), {});
  }
  static CpwlExpr max_of(std::vector<AffineFunc> args, Rat coefficient = 1) {
    if (args.empty()) throw Error(ErrorCode::invalid_argument, "max of no arguments");
    std::size_t n = args.front().dimension();
    return CpwlExpr(n, AffineFunc::zero(n), {MaxTerm{std::move(coefficient), std::move(args)}});
  }

  std::size_t dimension() const { return n_; }
  const AffineFunc& affine_part() const { return affine_; }
  const std::vector<MaxTerm>& terms() const { return terms_; }
  bool is_affine() const { return terms_.empty(); }

  /// Largest term arity; 1 when there are no terms.
  std::size_t arity() const {
    std::size_t k = 1;
    for (const auto& t : terms_) k = std::max(k, t.arity());
    return k;
  }

  Rat operator()(const Vec& x) const { return eval(x); }
  Rat eval(const Vec& x) const {
    require_dimension(x.size(), n_, "eval");
    Rat v = affine_(x);
    for (const auto& t : terms_) v += t.eval(x);
    return v;
  }

  /// The affine function F agrees with near x, assuming every term has a
  /// unique maximizing argument at x. Throws ErrorCode::non_generic otherwise.
  AffineFunc affine_piece_at(const Vec& x) const {
    auto piece = try_affine_piece_at(x);
    if (!piece) {
      throw Error(ErrorCode::non_generic, "point " + x.str() + " is not generic");
    }
    return *piece;
  }
  std::optional<AffineFunc> try_affine_piece_at(const Vec& x) const {
    require_dimension(x.size(), n_, "affine_piece_at");
    AffineFunc f = affine_;
    for (const auto& t : terms_) {
      auto j = t.strict_argmax(x);
      if (!j) return std::nullopt;
      f += t.arguments[*j] * t.coefficient;
    }
    return f;
  }

  friend CpwlExpr operator+(const CpwlExpr& f, const CpwlExpr& g) {
    require_dimension(g.n_, f.n_, "add");
    CpwlExpr r = f;
    r.affine_ += g.affine_;
    for (const auto& t : g.terms_) r.add_term(t.coefficient, t.arguments);
    r.canonicalize();
    return r;
  }
  friend CpwlExpr operator-(const CpwlExpr& f, const CpwlExpr& g) {
    return f + g.scaled(-1);
  }
  CpwlExpr operator-() const { return scaled(-1); }

  /// c * F. A zero factor yields the zero expression with no terms; a negative
  /// factor flips coefficients and never turns a max into a min.
  CpwlExpr scaled(const Rat& c) const {
    if (c.is_zero()) return CpwlExpr(n_);
    CpwlExpr r = *this;
    r.affine_ *= c;
    for (auto& t : r.terms_) t.coefficient *= c;
    return r;
  }

  /// F o M for an affine map M : Q^m -> Q^n.
  CpwlExpr composed(const AffineMap& m) const {
    require_dimension(m.target_dim(), n_, "compose_affine");
    std::size_t src = m.source_dim();
    if (m.rows.empty()) {
      throw Error(ErrorCode::invalid_argument, "compose with an empty map");
    }
    std::vector<MaxTerm> terms;
    for (const auto& t : terms_) {
      MaxTerm nt{t.coefficient, {}};
      for (const auto& g : t.arguments) nt.arguments.push_back(m.pull_back(g, src));
      terms.push_back(std::move(nt));
    }
    return CpwlExpr(src, m.pull_back(affine_, src), std::move(terms));
  }

  friend bool operator==(const CpwlExpr&, const CpwlExpr&) = default;

  std::string str() const {
    std::string s = affine_.str();
    for (const auto& t : terms_) {
      s += " + " + t.coefficient.str() + "*max(";
      for (std::size_t j = 0; j < t.arguments.size(); ++j) {
        if (j) s += ", ";
        s += t.arguments[j].str();
      }
      s += ")";
    }
    return s;
  }

 private:
  void add_term(Rat c, std::vector<AffineFunc> args) {
    if (args.empty()) throw Error(ErrorCode::invalid_argument, "max term without arguments");
    for (const auto& g : args) require_dimension(g.dimension(), n_, "max term argument");
    terms_.push_back(MaxTerm{std::move(c), std::move(args)});
  }

  void canonicalize() {
    std::map<std::vector<AffineFunc>, Rat> merged;
    for (auto& t : terms_) {
      std::sort(t.arguments.begin(), t.arguments.end());
      t.arguments.erase(std::unique(t.arguments.begin(), t.arguments.end()),
                        t.arguments.end());
      if (t.coefficient.is_zero()) continue;
      if (t.arguments.size() == 1) {
        affine_ += t.arguments.front() * t.coefficient;
        continue;
      }
      merged[t.arguments] += t.coefficient;
    }
    terms_.clear();
    for (auto& [args, c] : merged) {
      if (!c.is_zero()) terms_.push_back(MaxTerm{c, args});
    }
  }

  std::size_t n_ = 0;
  AffineFunc affine_;
  std::vector<MaxTerm> terms_;
};

inline CpwlExpr add(const CpwlExpr& f, const CpwlExpr& g) { return f + g; }
inline CpwlExpr scale(const CpwlExpr& f, const Rat& c) { return f.scaled(c); }
inline CpwlExpr compose_affine(const CpwlExpr& f, const AffineMap& m) {
  return f.composed(m);
}
inline Rat eval(const CpwlExpr& f, const Vec& x) { return f.eval(x); }

/// The gradient field of a CPWL expression, defined on generic points.
class GradientField {
 public:
  explicit GradientField(CpwlExpr source) : source_(std::move(source)) {}

  const CpwlExpr& source() const { return source_; }
  std::size_t dimension() const { return source_.dimension(); }

  Vec at(const Vec& x) const { return source_.affine_piece_at(x).a; }
  std::optional<Vec> try_at(const Vec& x) const {
    auto p = source_.try_affine_piece_at(x);
    if (!p) return std::nullopt;
    return p->a;
  }

 private:
  CpwlExpr source_;
};

/// Gradient at a generic point: strict argmax in every term, checked exactly.
inline Vec gradient_at(const GradientField& f, const Vec& x) { return f.at(x); }

}  // namespace maxarity
