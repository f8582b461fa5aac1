#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "maxarity/arity.hpp"
#include "maxarity/delta.hpp"
#include "maxarity/expr.hpp"

namespace maxarity::json {

using nlohmann::json;

inline json rat(const Rat& r) { return r.str(); }

inline Rat rat_from(const json& j, const std::string& what) {
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  throw Error(ErrorCode::parse, what + ": expected a rational string");
}

inline json vec(const Vec& v) {
  json out = json::array();
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rat(v[i]));
  return out;
}

inline Vec vec_from(const json& j, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorCode::parse, what + ": expected an array");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = rat_from(j[i], what);
  return v;
}

inline json affine(const AffineFunc& f) { return {{"a", vec(f.a)}, {"b", rat(f.b)}}; }

inline AffineFunc affine_from(const json& j, std::size_t n, const std::string& what) {
  if (!j.is_object() || !j.contains("a")) throw Error(ErrorCode::parse, what + ": expected {a, b}");
  Vec a = vec_from(j.at("a"), what);
  require_dimension(a.size(), n, what.c_str());
  Rat b = j.contains("b") ? rat_from(j.at("b"), what) : Rat();
  return {std::move(a), std::move(b)};
}

inline json expr(const CpwlExpr& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) {
    json args = json::array();
    for (const auto& g : t.arguments) args.push_back(affine(g));
    terms.push_back({{"coefficient", rat(t.coefficient)}, {"arguments", args}});
  }
  return {{"dimension", f.dimension()}, {"affine", affine(f.affine_part())}, {"terms", terms}};
}

inline CpwlExpr expr_from(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::parse, "expression: expected an object");
  if (!j.contains("dimension") || !j.at("dimension").is_number_unsigned()) {
    throw Error(ErrorCode::parse, "expression: missing dimension");
  }
  auto n = j.at("dimension").get<std::size_t>();
  if (n == 0) throw Error(ErrorCode::parse, "expression: dimension must be positive");
  AffineFunc base = j.contains("affine") ? affine_from(j.at("affine"), n, "affine")
                                         : AffineFunc::zero(n);
  std::vector<MaxTerm> terms;
  if (j.contains("terms")) {
    if (!j.at("terms").is_array()) throw Error(ErrorCode::parse, "terms: expected an array");
    for (const auto& t : j.at("terms")) {
      if (!t.is_object() || !t.contains("arguments") || !t.at("arguments").is_array() ||
          t.at("arguments").empty()) {
        throw Error(ErrorCode::parse, "term: expected a nonempty arguments array");
      }
      MaxTerm m{t.contains("coefficient") ? rat_from(t.at("coefficient"), "coefficient") : Rat(1),
                {}};
      for (const auto& g : t.at("arguments")) m.arguments.push_back(affine_from(g, n, "argument"));
      terms.push_back(std::move(m));
    }
  }
  return CpwlExpr(n, std::move(base), std::move(terms));
}

inline CpwlExpr parse_expr(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("invalid JSON: ") + e.what());
  }
  return expr_from(j);
}

// One affine subspace as its reduced equation system.
inline json subspace(const AffineSubspace& s) {
  json out = json::array();
  for (const auto& e : s.equations()) out.push_back({{"a", vec(e.a)}, {"b", rat(e.b)}});
  return out;
}

inline json flag(const Flag& f) {
  json out = json::array();
  for (const auto& h : f.chain()) out.push_back(subspace(h));
  return out;
}

inline json certificate(const ArityCertificate& c) {
  json out = {{"k_star", c.k_star}, {"depth_bound", c.depth_bound}, {"witness", nullptr}};
  if (c.witness) {
    const auto& w = *c.witness;
    out["witness"] = {{"flag", flag(w.flag)},
                      {"first", vec(w.first)},
                      {"second", vec(w.second)},
                      {"first_value", vec(w.first_value)},
                      {"second_value", vec(w.second_value)}};
  }
  json cons = json::array();
  for (const auto& e : c.constancy) cons.push_back({{"flag", flag(e.flag)}, {"value", vec(e.value)}});
  out["constancy"] = cons;
  return out;
}

namespace detail {

// Index of a variable name: x, y, z, w for n <= 4, and x1..xn always.
inline std::size_t variable_index(const std::string& name, std::size_t n) {
  static const std::string short_names = "xyzw";
  if (name.size() == 1 && n <= 4) {
    auto i = short_names.find(name[0]);
    if (i != std::string::npos && i < n) return i;
  }
  if (name.size() > 1 && name[0] == 'x') {
    bool digits = std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(c); });
    if (digits) {
      auto i = std::stoul(name.substr(1));
      if (i >= 1 && i <= n) return i - 1;
    }
  }
  throw Error(ErrorCode::parse, "unknown variable '" + name + "'");
}

// Adds sign * (linear form in text) into a and b, where b collects constants
// moved to the right-hand side.
inline void accumulate_side(std::string_view text, int sign, std::size_t n, Vec& a, Rat& b) {
  std::size_t i = 0;
  auto skip = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  bool first = true;
  skip();
  if (i == text.size()) throw Error(ErrorCode::parse, "empty side in equation");
  while (i < text.size()) {
    int s = 1;
    skip();
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      s = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw Error(ErrorCode::parse, "expected + or - in '" + std::string(text) + "'");
    }
    first = false;
    std::size_t start = i;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/' ||
                               text[i] == '.')) {
      ++i;
    }
    std::string num(text.substr(start, i - start));
    skip();
    if (i < text.size() && text[i] == '*') {
      if (num.empty()) throw Error(ErrorCode::parse, "dangling '*'");
      ++i;
      skip();
    }
    std::size_t vstart = i;
    while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
    std::string var(text.substr(vstart, i - vstart));
    if (num.empty() && var.empty()) throw Error(ErrorCode::parse, "malformed term in '" + std::string(text) + "'");
    Rat c = num.empty() ? Rat(1) : Rat::parse(num);
    c *= Rat(s * sign);
    if (var.empty()) {
      b -= c;
    } else {
      a[variable_index(var, n)] += c;
    }
    skip();
  }
}

}  // namespace detail

/// Parses "lhs = rhs" into a.x = b over Q^n.
inline LinearEquation parse_equation(std::string_view text, std::size_t n) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos || text.find('=', eq + 1) != std::string_view::npos) {
    throw Error(ErrorCode::parse, "equation needs exactly one '=': '" + std::string(text) + "'");
  }
  Vec a(n);
  Rat b;
  detail::accumulate_side(text.substr(0, eq), 1, n, a, b);
  detail::accumulate_side(text.substr(eq + 1), -1, n, a, b);
  if (a.is_zero()) throw Error(ErrorCode::parse, "equation has no variables: '" + std::string(text) + "'");
  return {std::move(a), std::move(b)};
}

/// "x-y=0; x+y=0": each equation cuts the previous level by one dimension.
inline Flag parse_flag(std::string_view text, std::size_t n) {
  std::vector<AffineSubspace> chain;
  Rows rows;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find(';', pos);
    if (end == std::string_view::npos) end = text.size();
    auto piece = text.substr(pos, end - pos);
    pos = end + 1;
    if (piece.find_first_not_of(" \t") == std::string_view::npos) {
      if (end == text.size()) break;
      throw Error(ErrorCode::parse, "empty equation in flag");
    }
    auto e = parse_equation(piece, n);
    Vec row(n + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = e.a[i];
    row[n] = e.b;
    rows.push_back(std::move(row));
    auto s = AffineSubspace::from_augmented(n, rows);
    if (!s || s->codim() != chain.size() + 1) {
      throw Error(ErrorCode::invalid_argument,
                  "equation '" + std::string(piece) + "' does not cut the flag by one dimension");
    }
    chain.push_back(std::move(*s));
  }
  return Flag(n, std::move(chain));
}

}  // namespace maxarity::json
