#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "maxarity/error.hpp"

namespace maxarity {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
class Rat {
 public:
  Rat() = default;
  Rat(int v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(long num, long den) {
    if (den == 0) throw Error(ErrorCode::invalid_argument, "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  Rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw Error(ErrorCode::invalid_argument, "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  /// Accepts "p", "p/q" and plain decimals such as "-1.25".
  static Rat parse(std::string_view text) {
    std::string s(text);
    auto first = s.find_first_not_of(" \t");
    auto last = s.find_last_not_of(" \t");
    if (first == std::string::npos) {
      throw Error(ErrorCode::parse, "empty rational literal");
    }
    s = s.substr(first, last - first + 1);
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    auto bad = [&] {
      return Error(ErrorCode::parse, "malformed rational literal '" +
                                         std::string(text) + "'");
    };
    auto digits_ok = [](std::string_view d, bool allow_sign) {
      std::size_t i = 0;
      if (allow_sign && !d.empty() && d[0] == '-') i = 1;
      if (i >= d.size()) return false;
      for (; i < d.size(); ++i) {
        if (d[i] < '0' || d[i] > '9') return false;
      }
      return true;
    };
    if (auto slash = s.find('/'); slash != std::string::npos) {
      std::string num = s.substr(0, slash);
      std::string den = s.substr(slash + 1);
      if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
      mpz_class n(num), d(den);
      if (d == 0) throw Error(ErrorCode::parse, "zero denominator in '" + s + "'");
      return Rat(n, d);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string ip = s.substr(0, dot);
      std::string fp = s.substr(dot + 1);
      bool neg = !ip.empty() && ip[0] == '-';
      if (neg) ip.erase(0, 1);
      if (ip.empty()) ip = "0";
      if (!digits_ok(ip, false) || (!fp.empty() && !digits_ok(fp, false))) {
        throw bad();
      }
      mpz_class scale = 1;
      for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
      mpz_class num(ip + fp);
      if (neg) num = -num;
      return Rat(num, scale);
    }
    if (!digits_ok(s, true)) throw bad();
    return Rat(mpz_class(s), mpz_class(1));
  }

  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  double to_double() const { return v_.get_d(); }

  Rat abs() const { return Rat(mpq_class(::abs(v_))); }
  Rat inverse() const {
    if (is_zero()) throw Error(ErrorCode::invalid_argument, "inverse of zero");
    return Rat(mpq_class(1 / v_));
  }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw Error(ErrorCode::invalid_argument, "division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.v_, b.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
  }

 private:
  mpq_class v_;
};

inline Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace maxarity

template <>
struct std::hash<maxarity::Rat> {
  std::size_t operator()(const maxarity::Rat& r) const noexcept {
    std::size_t h1 = std::hash<std::string>{}(r.num().get_str(16));
    std::size_t h2 = std::hash<std::string>{}(r.den().get_str(16));
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
  }
};
