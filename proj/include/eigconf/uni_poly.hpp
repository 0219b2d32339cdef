#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eigconf/errors.hpp"
#include "eigconf/multi_poly.hpp"
#include "eigconf/rational.hpp"

namespace eigconf {

/// Dense univariate polynomial; coefficient i multiplies x^i. The leading
/// coefficient is nonzero unless the polynomial is zero (empty list).
template <class C>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UniPoly monomial(std::size_t degree, C lead) {
    std::vector<C> c(degree + 1, zero_like(lead));
    c[degree] = std::move(lead);
    return UniPoly(std::move(c));
  }

  /// Degree of the zero polynomial is -1.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  std::span<const C> coeffs() const noexcept { return c_; }
  const C& coeff(std::size_t i) const { return c_.at(i); }
  const C& leading() const {
    if (c_.empty()) throw DomainError("leading coefficient of zero polynomial");
    return c_.back();
  }

  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) { return combine(a, b, false); }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return combine(a, b, true); }

  UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<C> r(a.c_.size() + b.c_.size() - 1, zero_like(a.c_[0]));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (eigconf::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(r));
  }

  UniPoly scaled(const C& s) const {
    std::vector<C> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(x * s);
    return UniPoly(std::move(r));
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "x") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (eigconf::is_zero(c_[k])) continue;
      std::string coeff = to_text(c_[k]);
      bool compound = coeff.find_first_of("+ ", 1) != std::string::npos;
      bool negative = !compound && coeff[0] == '-';
      if (negative) coeff.erase(0, 1);
      if (!first) os << (negative ? " - " : " + ");
      else if (negative) os << "-";
      first = false;
      if (compound && k > 0) coeff = "(" + coeff + ")";
      if (k == 0) {
        os << coeff;
      } else {
        if (coeff != "1") os << coeff << "*";
        os << var;
        if (k > 1) os << "^" << k;
      }
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && eigconf::is_zero(c_.back())) c_.pop_back();
  }

  static UniPoly combine(const UniPoly& a, const UniPoly& b, bool subtract) {
    std::vector<C> r;
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    r.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i < a.c_.size() && i < b.c_.size()) {
        r.push_back(subtract ? C(a.c_[i] - b.c_[i]) : C(a.c_[i] + b.c_[i]));
      } else if (i < a.c_.size()) {
        r.push_back(a.c_[i]);
      } else {
        r.push_back(subtract ? C(-b.c_[i]) : b.c_[i]);
      }
    }
    return UniPoly(std::move(r));
  }

  std::vector<C> c_;
};

using RatUniPoly = UniPoly<Rational>;

template <class C>
UniPoly<C> zero_like(const UniPoly<C>&) {
  return UniPoly<C>();
}

/// Builds a rational polynomial from integer coefficients, lowest degree first.
inline RatUniPoly make_uni(std::initializer_list<long> coeffs) {
  std::vector<Rational> c;
  for (long v : coeffs) c.emplace_back(v);
  return RatUniPoly(std::move(c));
}

/// Product of (x - r) over the given roots.
inline RatUniPoly from_roots(std::span<const Rational> roots) {
  RatUniPoly p(std::vector<Rational>{Rational(1)});
  for (const auto& r : roots) p = p * RatUniPoly(std::vector<Rational>{-r, Rational(1)});
  return p;
}

inline Rational evaluate(const RatUniPoly& p, const Rational& x) {
  mpq_class acc;
  const auto c = p.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    acc *= x.value();
    acc += c[k].value();
  }
  return Rational(acc);
}

inline int sign_at(const RatUniPoly& p, const Rational& x) { return evaluate(p, x).sign(); }

inline RatUniPoly derivative(const RatUniPoly& p) {
  const auto c = p.coeffs();
  if (c.size() <= 1) return RatUniPoly();
  std::vector<Rational> r;
  r.reserve(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) r.push_back(c[i] * Rational(long(i)));
  return RatUniPoly(std::move(r));
}

struct DivMod {
  RatUniPoly quotient;
  RatUniPoly remainder;
};

inline DivMod divmod(const RatUniPoly& a, const RatUniPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> r(a.coeffs().begin(), a.coeffs().end());
  const int db = b.degree();
  const Rational& lead = b.leading();
  std::vector<Rational> q(std::max(0, a.degree() - db + 1));
  for (int k = a.degree() - db; k >= 0; --k) {
    Rational factor = r[k + db] / lead;
    if (factor.is_zero()) continue;
    q[k] = factor;
    for (int j = 0; j <= db; ++j) r[k + j] -= factor * b.coeff(j);
  }
  return {RatUniPoly(std::move(q)), RatUniPoly(std::move(r))};
}

inline RatUniPoly monic(const RatUniPoly& p) {
  if (p.is_zero()) return p;
  return p.scaled(Rational(1) / p.leading());
}

/// Monic gcd by the Euclidean remainder sequence.
inline RatUniPoly gcd(RatUniPoly a, RatUniPoly b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd of two zero polynomials");
  while (!b.is_zero()) {
    RatUniPoly r = divmod(a, b).remainder;
    a = std::move(b);
    b = monic(r);
  }
  return monic(a);
}

/// a / b, requiring a zero remainder.
inline RatUniPoly exact_quotient(const RatUniPoly& a, const RatUniPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw DomainError("inexact polynomial division");
  return q;
}

/// Yun's square-free decomposition: monic factors s_k, pairwise coprime and
/// square-free, with p = lc(p) * prod s_k^k. Only factors of positive degree
/// are returned, paired with their multiplicity k.
inline std::vector<std::pair<RatUniPoly, int>> squarefree_decomposition(const RatUniPoly& p) {
  std::vector<std::pair<RatUniPoly, int>> out;
  if (p.degree() <= 0) return out;
  RatUniPoly f = monic(p);
  RatUniPoly df = derivative(f);
  RatUniPoly a = gcd(f, df);
  RatUniPoly b = exact_quotient(f, a);
  RatUniPoly c = exact_quotient(df, a);
  RatUniPoly d = c - derivative(b);
  for (int k = 1; b.degree() > 0; ++k) {
    RatUniPoly s = gcd(b, d);
    if (s.degree() > 0) out.emplace_back(s, k);
    b = exact_quotient(b, s);
    c = exact_quotient(d, s);
    d = c - derivative(b);
  }
  return out;
}

/// Square-free part of p, monic.
inline RatUniPoly squarefree_part(const RatUniPoly& p) {
  if (p.degree() <= 0) return monic(p);
  RatUniPoly f = monic(p);
  return monic(exact_quotient(f, gcd(f, derivative(f))));
}

}  // namespace eigconf
