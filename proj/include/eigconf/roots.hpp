#pragma once

// Sign variations (Descartes), Sturm chains and exact real-root isolation.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eigconf/errors.hpp"
#include "eigconf/rational.hpp"
#include "eigconf/uni_poly.hpp"

namespace eigconf {

inline int sign_of(int v) { return (v > 0) - (v < 0); }

/// Number of sign changes between consecutive nonzero entries.
template <class C>
int sign_variations(std::span<const C> coeffs) {
  int count = 0, last = 0;
  for (const auto& c : coeffs) {
    int s = sign_of(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

inline int sign_variations(const RatUniPoly& p) { return sign_variations(p.coeffs()); }

inline int sign_variations(const std::vector<Rational>& coeffs) {
  return sign_variations(std::span<const Rational>(coeffs));
}

/// Sign of p at -inf (`at_plus` false) or +inf.
inline int sign_at_infinity(const RatUniPoly& p, bool at_plus) {
  if (p.is_zero()) return 0;
  int s = p.leading().sign();
  return (at_plus || p.degree() % 2 == 0) ? s : -s;
}

/// Sturm chain of the square-free part of f:
///   s_0 = sqf(f), s_1 = s_0', s_{k+1} = -rem(s_{k-1}, s_k).
class SturmChain {
 public:
  explicit SturmChain(const RatUniPoly& f) {
    if (f.is_zero()) throw DomainError("Sturm chain of the zero polynomial");
    chain_.push_back(squarefree_part(f));
    if (chain_[0].degree() == 0) return;
    chain_.push_back(derivative(chain_[0]));
    while (true) {
      RatUniPoly r = divmod(chain_[chain_.size() - 2], chain_.back()).remainder;
      if (r.is_zero()) break;
      chain_.push_back(-r);
    }
  }

  const std::vector<RatUniPoly>& polys() const noexcept { return chain_; }

  int variations_at(const Rational& x) const {
    std::vector<int> s;
    for (const auto& p : chain_) s.push_back(sign_at(p, x));
    return sign_variations(std::span<const int>(s));
  }

  int variations_at_infinity(bool at_plus) const {
    std::vector<int> s;
    for (const auto& p : chain_) s.push_back(sign_at_infinity(p, at_plus));
    return sign_variations(std::span<const int>(s));
  }

  /// Distinct real roots in (lo, hi]; an empty bound means -inf or +inf.
  int count(const std::optional<Rational>& lo, const std::optional<Rational>& hi) const {
    int vlo = lo ? variations_at(*lo) : variations_at_infinity(false);
    int vhi = hi ? variations_at(*hi) : variations_at_infinity(true);
    return vlo - vhi;
  }

 private:
  std::vector<RatUniPoly> chain_;
};

inline int sturm_count(const RatUniPoly& f, const std::optional<Rational>& lo = std::nullopt,
                       const std::optional<Rational>& hi = std::nullopt) {
  if (lo && hi && !(*lo < *hi)) return 0;
  return SturmChain(f).count(lo, hi);
}

/// One distinct real root: either exactly `lo == hi`, or the unique root in
/// the open interval (lo, hi).
struct RealRoot {
  Rational lo;
  Rational hi;
  bool exact = false;
  int multiplicity = 1;

  std::string to_string() const {
    std::string body = exact ? lo.to_string() : "(" + lo.to_string() + ", " + hi.to_string() + ")";
    return multiplicity > 1 ? body + " x" + std::to_string(multiplicity) : body;
  }
};

/// 1 + max |c_i / c_d|: every root has smaller absolute value.
inline Rational cauchy_bound(const RatUniPoly& p) {
  Rational best(0);
  const Rational& lead = p.leading();
  for (int i = 0; i < p.degree(); ++i) best = std::max(best, (p.coeff(std::size_t(i)) / lead).abs());
  return best + Rational(1);
}

namespace detail {

inline void bisect(const SturmChain& chain, const Rational& lo, const Rational& hi, int count,
                   std::vector<RealRoot>& out) {
  if (count == 0) return;
  const RatUniPoly& s = chain.polys()[0];
  Rational mid = (lo + hi) / Rational(2);
  if (count == 1) {
    if (s.degree() == 1) {
      Rational r = -s.coeff(0) / s.coeff(1);
      out.push_back({r, r, true, 1});
    } else if (sign_at(s, hi) == 0) {
      out.push_back({hi, hi, true, 1});
    } else if (sign_at(s, mid) == 0) {
      out.push_back({mid, mid, true, 1});
    } else {
      out.push_back({lo, hi, false, 1});
    }
    return;
  }
  int left = chain.count(lo, mid);
  bisect(chain, lo, mid, left, out);
  bisect(chain, mid, hi, count - left, out);
}

}  // namespace detail

/// Distinct real roots in ascending order with multiplicities from the
/// square-free decomposition; total multiplicity equals deg f when f is
/// real-rooted.
inline std::vector<RealRoot> isolate_real_roots(const RatUniPoly& f) {
  if (f.is_zero()) throw DomainError("cannot isolate the roots of the zero polynomial");
  std::vector<RealRoot> roots;
  if (f.degree() == 0) return roots;
  SturmChain chain(f);
  Rational bound = cauchy_bound(chain.polys()[0]);
  Rational lo = -bound;
  detail::bisect(chain, lo, bound, chain.count(lo, bound), roots);

  auto parts = squarefree_decomposition(f);
  for (auto& root : roots) {
    for (const auto& [factor, k] : parts) {
      bool here = root.exact ? sign_at(factor, root.lo) == 0 : sturm_count(factor, root.lo, root.hi) > 0;
      if (here) {
        root.multiplicity = k;
        break;
      }
    }
  }
  return roots;
}

/// Shrinks a non-exact isolating interval of a root of square-free `s`
/// until its width is at most `width`; becomes exact if a midpoint hits the
/// root.
inline void refine(RealRoot& root, const RatUniPoly& s, const Rational& width) {
  while (!root.exact && root.hi - root.lo > width) {
    Rational mid = (root.lo + root.hi) / Rational(2);
    int sm = sign_at(s, mid);
    if (sm == 0) {
      root.lo = root.hi = mid;
      root.exact = true;
    } else if (sm == sign_at(s, root.hi)) {
      root.hi = mid;
    } else {
      root.lo = mid;
    }
  }
}

/// Monic gcd of f and g; positive degree means a shared root.
inline RatUniPoly common_factor(const RatUniPoly& f, const RatUniPoly& g) { return gcd(f, g); }

/// True iff f and g share no root. Both are assumed real-rooted, as
/// characteristic polynomials of symmetric matrices are.
inline bool genericity_check(const RatUniPoly& f, const RatUniPoly& g) {
  if (f.is_zero() || g.is_zero()) throw DomainError("genericity check needs nonzero polynomials");
  return common_factor(f, g).degree() == 0;
}

}  // namespace eigconf
