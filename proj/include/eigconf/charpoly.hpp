#pragma once

// Characteristic polynomials of (possibly parametric) symmetric matrices.
//
// Convention: char_poly(M) returns det(zI + M). Its coefficient of z^{m-k}
// is a_k, which equals e_k(eigenvalues of M). The usual det(zI - M) has
// the same coefficients with alternating signs:
//
//   det(zI - M) = z^m - a_1 z^{m-1} + a_2 z^{m-2} - ... + (-1)^m a_m
//   det(zI + M) = z^m + a_1 z^{m-1} + a_2 z^{m-2} + ... +        a_m
//
// CharCoeffs stores a_1..a_m in this "reverse" order (a_1 = trace).

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "eigconf/errors.hpp"
#include "eigconf/multi_poly.hpp"
#include "eigconf/rational.hpp"
#include "eigconf/uni_poly.hpp"
#include "eigconf/var_table.hpp"

namespace eigconf {

/// Symmetric matrix whose entries are polynomials over a parameter table.
/// Numeric matrices use an empty parameter table.
class SymMatrix {
 public:
  SymMatrix() = default;

  SymMatrix(VarTablePtr params, std::vector<std::vector<RatPoly>> rows)
      : params_(std::move(params)), rows_(std::move(rows)) {
    const std::size_t n = rows_.size();
    if (n == 0) throw ValidationError("matrix must have at least one row");
    for (std::size_t i = 0; i < n; ++i) {
      if (rows_[i].size() != n)
        throw ValidationError("matrix is not square: row " + std::to_string(i + 1) + " has " +
                              std::to_string(rows_[i].size()) + " entries, expected " + std::to_string(n));
      for (auto& e : rows_[i]) e = rebind(e, params_);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!(rows_[i][j] == rows_[j][i]))
          throw ValidationError("matrix is not symmetric: entry (" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + ") = " + rows_[i][j].to_string() + " but (" +
                                std::to_string(j + 1) + "," + std::to_string(i + 1) +
                                ") = " + rows_[j][i].to_string());
  }

  static VarTablePtr no_params() {
    static const VarTablePtr empty = make_table({{"params", {}}});
    return empty;
  }

  static SymMatrix numeric(const std::vector<std::vector<Rational>>& rows) {
    std::vector<std::vector<RatPoly>> p;
    for (const auto& row : rows) {
      p.emplace_back();
      for (const auto& x : row) p.back().push_back(RatPoly::constant(no_params(), x));
    }
    return SymMatrix(no_params(), std::move(p));
  }

  static SymMatrix diagonal(const std::vector<Rational>& d) {
    std::vector<std::vector<Rational>> rows(d.size(), std::vector<Rational>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) rows[i][i] = d[i];
    return numeric(rows);
  }

  std::size_t size() const noexcept { return rows_.size(); }
  const VarTablePtr& params() const noexcept { return params_; }
  const RatPoly& entry(std::size_t i, std::size_t j) const { return rows_.at(i).at(j); }

  bool is_numeric() const {
    for (const auto& row : rows_)
      for (const auto& e : row)
        if (!e.is_constant()) return false;
    return true;
  }

  /// Entry values; throws if any entry still depends on a parameter.
  std::vector<std::vector<Rational>> values() const {
    std::vector<std::vector<Rational>> out;
    for (const auto& row : rows_) {
      out.emplace_back();
      for (const auto& e : row) out.back().push_back(e.constant_value());
    }
    return out;
  }

  /// Numeric matrix obtained by evaluating every entry at `point`
  /// (coordinates indexed like `params()`).
  SymMatrix specialize(std::span<const Rational> point) const {
    std::vector<std::vector<Rational>> out;
    for (const auto& row : rows_) {
      out.emplace_back();
      for (const auto& e : row) out.back().push_back(evaluate(e, point));
    }
    return numeric(out);
  }

  SymMatrix negated() const {
    auto rows = rows_;
    for (auto& row : rows)
      for (auto& e : row) e = -e;
    return SymMatrix(params_, std::move(rows));
  }

 private:
  VarTablePtr params_ = no_params();
  std::vector<std::vector<RatPoly>> rows_;
};

/// Berkowitz's division-free algorithm: coefficients of det(zI - A), highest
/// degree first (the first entry is 1). Works over any commutative ring; `one`
/// supplies the ring's unit.
template <class C>
std::vector<C> berkowitz(const std::vector<std::vector<C>>& A, const C& one) {
  const std::size_t n = A.size();
  const C zero = zero_like(one);
  std::vector<C> vect{one, C(zero - A[0][0])};
  for (std::size_t r = 1; r < n; ++r) {
    // Toeplitz column t: t0 = 1, t1 = -a_rr, t_{k+2} = -R M^k S
    std::vector<C> t;
    t.reserve(r + 2);
    t.push_back(one);
    t.push_back(C(zero - A[r][r]));
    std::vector<C> v(r);  // v = M^k S
    for (std::size_t i = 0; i < r; ++i) v[i] = A[i][r];
    for (std::size_t k = 0; k < r; ++k) {
      C rv = zero;
      for (std::size_t i = 0; i < r; ++i) rv += A[r][i] * v[i];
      t.push_back(C(zero - rv));
      if (k + 1 < r) {
        std::vector<C> next(r, zero);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) next[i] += A[i][j] * v[j];
        v = std::move(next);
      }
    }
    std::vector<C> next(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) next[i] += t[i - j] * vect[j];
    vect = std::move(next);
  }
  return vect;
}

/// det(zI + M), with coefficients in the parameter ring.
inline UniPoly<RatPoly> char_poly(const SymMatrix& M) {
  const std::size_t n = M.size();
  std::vector<std::vector<RatPoly>> A(n, std::vector<RatPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A[i][j] = -M.entry(i, j);
  auto desc = berkowitz(A, RatPoly::constant(M.params(), Rational(1)));
  return UniPoly<RatPoly>(std::vector<RatPoly>(desc.rbegin(), desc.rend()));
}

/// det(zI + M) for a numeric matrix.
inline RatUniPoly char_poly_numeric(const SymMatrix& M) {
  auto vals = M.values();
  for (auto& row : vals)
    for (auto& x : row) x = -x;
  auto desc = berkowitz(vals, Rational(1));
  return RatUniPoly(std::vector<Rational>(desc.rbegin(), desc.rend()));
}

/// det(zI - M) for a numeric matrix: its roots are the eigenvalues of M.
inline RatUniPoly eigen_poly_numeric(const SymMatrix& M) {
  auto desc = berkowitz(M.values(), Rational(1));
  return RatUniPoly(std::vector<Rational>(desc.rbegin(), desc.rend()));
}

/// a_1..a_m read off det(zI + M) (a_k = coefficient of z^{m-k}).
struct CharCoeffs {
  int degree = 0;
  std::vector<RatPoly> coeffs;

  /// Coefficient values when every a_k is constant.
  std::vector<Rational> values() const {
    std::vector<Rational> out;
    for (const auto& c : coeffs) out.push_back(c.constant_value());
    return out;
  }

  /// The generic symbols sym1..symN over `table` (used to keep conditions
  /// in terms of the characteristic coefficients).
  static CharCoeffs symbolic(const VarTablePtr& table, const std::string& block) {
    const auto& b = table->block(block);
    CharCoeffs c;
    c.degree = int(b.size);
    for (std::size_t k = 0; k < b.size; ++k) c.coeffs.push_back(RatPoly::variable(table, b.offset + k));
    return c;
  }

  static CharCoeffs numeric(const std::vector<Rational>& values) {
    CharCoeffs c;
    c.degree = int(values.size());
    for (const auto& v : values) c.coeffs.push_back(RatPoly::constant(SymMatrix::no_params(), v));
    return c;
  }
};

inline CharCoeffs extract_coeffs(const UniPoly<RatPoly>& f) {
  if (f.degree() < 1) throw ValidationError("characteristic polynomial must have positive degree");
  const RatPoly& lead = f.leading();
  if (!lead.is_constant() || !(lead.constant_value() == Rational(1)))
    throw ValidationError("characteristic polynomial is not monic: leading coefficient " + lead.to_string());
  const int m = f.degree();
  CharCoeffs out;
  out.degree = m;
  for (int k = 1; k <= m; ++k) out.coeffs.push_back(f.coeff(std::size_t(m - k)));
  return out;
}

inline std::vector<Rational> extract_coeffs(const RatUniPoly& f) {
  if (f.degree() < 1) throw ValidationError("characteristic polynomial must have positive degree");
  if (!(f.leading() == Rational(1)))
    throw ValidationError("characteristic polynomial is not monic: leading coefficient " + f.leading().to_string());
  const int m = f.degree();
  std::vector<Rational> out;
  for (int k = 1; k <= m; ++k) out.push_back(f.coeff(std::size_t(m - k)));
  return out;
}

}  // namespace eigconf
