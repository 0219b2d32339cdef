#pragma once

// d_r from numeric characteristic coefficients without the symbolic
// reduction: with p_t(z) = f(z + t), the r-th compound of the companion
// matrix of p_t has eigenvalues prod_{i in I}(alpha_i - t), so
//   H_r(t) = det(xI + compound_r(companion(p_t))),
// computed over K = Q[t]/(g). The norm of H_r from K[x] down to Q[x] is
// prod_j H_r(beta_j) = d_r. Only f, g and exact ring arithmetic are used.

#include <cstddef>
#include <memory>
#include <vector>

#include "eigconf/charpoly.hpp"
#include "eigconf/errors.hpp"
#include "eigconf/rational.hpp"
#include "eigconf/uni_poly.hpp"

namespace eigconf {

/// Element of Q[t]/(g) for a monic g of positive degree.
class Residue {
 public:
  Residue() = default;
  Residue(std::shared_ptr<const RatUniPoly> g, RatUniPoly p) : g_(std::move(g)), p_(reduce(std::move(p))) {}

  const RatUniPoly& value() const noexcept { return p_; }

  friend Residue operator+(const Residue& a, const Residue& b) { return {a.mod(b), a.p_ + b.p_}; }
  friend Residue operator-(const Residue& a, const Residue& b) { return {a.mod(b), a.p_ - b.p_}; }
  friend Residue operator*(const Residue& a, const Residue& b) { return {a.mod(b), a.p_ * b.p_}; }
  Residue operator-() const { return {g_, -p_}; }
  Residue& operator+=(const Residue& o) { return *this = *this + o; }

 private:
  std::shared_ptr<const RatUniPoly> mod(const Residue& o) const { return g_ ? g_ : o.g_; }

  RatUniPoly reduce(RatUniPoly p) const {
    if (!g_ || p.degree() < g_->degree()) return p;
    return divmod(p, *g_).remainder;
  }

  std::shared_ptr<const RatUniPoly> g_;
  RatUniPoly p_;
};

inline Residue zero_like(const Residue&) { return Residue(); }

namespace detail {

template <class C>
C berkowitz_det(const std::vector<std::vector<C>>& A, const C& one) {
  auto desc = berkowitz(A, one);
  return A.size() % 2 ? C(zero_like(one) - desc.back()) : desc.back();
}

inline std::vector<std::vector<int>> index_subsets(int m, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (int(cur.size()) == r) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < m; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace detail

/// r-th compound (matrix of r x r minors, subsets in lexicographic order).
template <class C>
std::vector<std::vector<C>> compound_matrix(const std::vector<std::vector<C>>& A, int r, const C& one) {
  auto sets = detail::index_subsets(int(A.size()), r);
  std::vector<std::vector<C>> out(sets.size(), std::vector<C>(sets.size(), zero_like(one)));
  for (std::size_t I = 0; I < sets.size(); ++I)
    for (std::size_t J = 0; J < sets.size(); ++J) {
      const auto rr = std::size_t(r);
      std::vector<std::vector<C>> minor(rr, std::vector<C>(rr));
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          minor[std::size_t(i)][std::size_t(j)] =
              A[std::size_t(sets[I][std::size_t(i)])][std::size_t(sets[J][std::size_t(j)])];
      out[I][J] = detail::berkowitz_det(minor, one);
    }
  return out;
}

/// d_r(x) = prod_{|I| = r, j} (x + prod_{i in I}(alpha_i - beta_j)) where the
/// alpha are the roots of monic f and the beta the roots of monic g.
inline RatUniPoly level_poly_compound(int r, const RatUniPoly& f, const RatUniPoly& g) {
  const int m = f.degree(), n = g.degree();
  if (m < 1 || n < 1 || !(f.leading() == Rational(1)) || !(g.leading() == Rational(1)))
    throw DomainError("compound construction needs monic polynomials of positive degree");
  if (r < 1 || r > m) throw DomainError("level r out of range");
  auto mod = std::make_shared<const RatUniPoly>(g);
  auto K = [&](RatUniPoly p) { return Residue(mod, std::move(p)); };
  const Residue one = K(make_uni({1}));

  // Coefficients of p_t(z) = f(z + t): [z^j] = sum_k f_k C(k, j) t^{k-j}.
  std::vector<Residue> pc;
  for (int j = 0; j < m; ++j) {
    std::vector<Rational> c(std::size_t(m - j + 1));
    for (int k = j; k <= m; ++k) c[std::size_t(k - j)] = f.coeff(std::size_t(k)) * Rational(binomial(k, j));
    pc.push_back(K(RatUniPoly(std::move(c))));
  }
  const auto mm = std::size_t(m), nn = std::size_t(n);
  std::vector<std::vector<Residue>> comp(mm, std::vector<Residue>(mm, zero_like(one)));
  for (int i = 1; i < m; ++i) comp[std::size_t(i)][std::size_t(i - 1)] = one;
  for (int i = 0; i < m; ++i) comp[std::size_t(i)][std::size_t(m - 1)] = -pc[std::size_t(i)];

  auto A = compound_matrix(comp, r, one);
  for (auto& row : A)
    for (auto& e : row) e = -e;
  auto desc = berkowitz(A, one);  // det(xI + compound), highest power of x first

  // Multiplication by H_r on K as an n x n matrix over Q[x].
  const std::size_t N = desc.size();
  std::vector<std::vector<RatUniPoly>> M(nn, std::vector<RatUniPoly>(nn));
  for (int j = 0; j < n; ++j) {
    Residue tj = K(RatUniPoly::monomial(std::size_t(j), Rational(1)));
    std::vector<std::vector<Rational>> col(nn, std::vector<Rational>(N));
    for (std::size_t k = 0; k < N; ++k) {
      const RatUniPoly v = (tj * desc[k]).value();
      for (int i = 0; i <= v.degree(); ++i) col[std::size_t(i)][N - 1 - k] = v.coeff(std::size_t(i));
    }
    for (int i = 0; i < n; ++i) M[std::size_t(i)][std::size_t(j)] = RatUniPoly(std::move(col[std::size_t(i)]));
  }
  return detail::berkowitz_det(M, make_uni({1}));
}

}  // namespace eigconf
