#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "eigconf/errors.hpp"

namespace eigconf {

using BigInt = mpz_class;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : q_(v) {}            // NOLINT(google-explicit-constructor)
  Rational(long v) : q_(v) {}           // NOLINT(google-explicit-constructor)
  Rational(long long v) : q_(BigInt(std::to_string(v))) {}  // NOLINT
  Rational(const BigInt& v) : q_(v) {}  // NOLINT(google-explicit-constructor)

  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Accepts "7", "-3/4" and finite decimals such as "2.5" or "-0.125".
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto fail = [&] { throw ParseError("not a rational number: '" + s + "'"); };
    if (s.empty()) fail();
    auto digits_only = [](std::string_view d, bool allow_sign) {
      std::size_t i = 0;
      if (allow_sign && !d.empty() && (d[0] == '-' || d[0] == '+')) ++i;
      if (i == d.size()) return false;
      for (; i < d.size(); ++i)
        if (d[i] < '0' || d[i] > '9') return false;
      return true;
    };
    auto to_int = [](std::string d) {
      if (!d.empty() && d[0] == '+') d.erase(0, 1);
      return BigInt(d);
    };
    if (auto slash = s.find('/'); slash != std::string::npos) {
      std::string num = s.substr(0, slash), den = s.substr(slash + 1);
      if (!digits_only(num, true) || !digits_only(den, false)) fail();
      return Rational(to_int(num), to_int(den));
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
      bool negative = !whole.empty() && whole[0] == '-';
      if (whole == "-" || whole == "+" || whole.empty()) whole += "0";
      if (!digits_only(whole, true) || (!frac.empty() && !digits_only(frac, false))) fail();
      BigInt scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      BigInt w = to_int(whole);
      if (w < 0) w = -w;
      BigInt num = w * scale + (frac.empty() ? BigInt(0) : BigInt(frac));
      if (negative) num = -num;
      return Rational(num, scale);
    }
    if (!digits_only(s, true)) fail();
    return Rational(to_int(s));
  }

  const mpq_class& value() const noexcept { return q_; }
  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-q_), Canonical{}); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Rational abs() const { return Rational(mpq_class(::abs(q_)), Canonical{}); }

  std::string to_string() const { return q_.get_str(); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  struct Canonical {};
  Rational(mpq_class q, Canonical) : q_(std::move(q)) {}

  mpq_class q_;
};

// Coefficient-ring hooks shared by MultiPoly and UniPoly.
inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline bool is_zero(const BigInt& z) { return sgn(z) == 0; }
inline int sign_of(const Rational& r) { return r.sign(); }
inline int sign_of(const BigInt& z) { return sgn(z); }
inline std::string to_text(const Rational& r) { return r.to_string(); }
inline std::string to_text(const BigInt& z) { return z.get_str(); }
inline Rational zero_like(const Rational&) { return Rational(); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline BigInt zero_like(const BigInt&) { return BigInt(0); }
inline BigInt one_like(const BigInt&) { return BigInt(1); }

/// n choose k as an exact integer; zero when k < 0 or k > n.
inline BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace eigconf

template <>
struct std::hash<eigconf::Rational> {
  std::size_t operator()(const eigconf::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.to_string());
  }
};
