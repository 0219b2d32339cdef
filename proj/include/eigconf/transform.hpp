#pragma once

// The combinatorial transform T_m relating eigenvalue configurations to
// positive-root counts, its LU factors and its exact inverse.
//
// (T_m)_{rs} counts the r-subsets I of {1..m} with an odd number of
// elements <= s. Three constructions are provided and must agree:
//   - enumeration of all subsets (capped, 2^m work),
//   - the boundary-row/column rules plus the Pascal-type recurrence
//       (T_m)_{rs} = (T_{m-1})_{r-1,s} + (T_{m-1})_{r,s},
//   - the closed form  sum_t C(m-t, r-t) (-2)^{t-1} C(s, t),  i.e. L_m * U_m.
// Row 1 of T_m is (1, 2, ..., m).

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "eigconf/errors.hpp"
#include "eigconf/rational.hpp"

namespace eigconf {

inline constexpr int kEnumerationCap = 12;

/// Exact square rational matrix, 1-based accessors to match the usual
/// (r, s) indexing of the transform.
class TransformMatrix {
 public:
  TransformMatrix() = default;
  explicit TransformMatrix(int m) : m_(m), e_(std::size_t(m) * std::size_t(m)) {
    if (m < 1) throw DomainError("matrix size must be positive");
  }

  static TransformMatrix identity(int m) {
    TransformMatrix I(m);
    for (int i = 1; i <= m; ++i) I(i, i) = 1;
    return I;
  }

  int size() const noexcept { return m_; }
  Rational& operator()(int r, int s) { return e_[index(r, s)]; }
  const Rational& operator()(int r, int s) const { return e_[index(r, s)]; }

  friend bool operator==(const TransformMatrix& a, const TransformMatrix& b) {
    return a.m_ == b.m_ && a.e_ == b.e_;
  }

  friend TransformMatrix operator*(const TransformMatrix& a, const TransformMatrix& b) {
    if (a.m_ != b.m_) throw StructuralError("matrix size mismatch");
    TransformMatrix p(a.m_);
    for (int r = 1; r <= a.m_; ++r)
      for (int s = 1; s <= a.m_; ++s) {
        Rational acc;
        for (int t = 1; t <= a.m_; ++t) acc += a(r, t) * b(t, s);
        p(r, s) = acc;
      }
    return p;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    if (int(v.size()) != m_) throw StructuralError("vector length does not match matrix size");
    std::vector<Rational> out(m_);
    for (int r = 1; r <= m_; ++r)
      for (int s = 1; s <= m_; ++s) out[r - 1] += (*this)(r, s) * v[s - 1];
    return out;
  }

  bool is_lower_triangular() const {
    for (int r = 1; r <= m_; ++r)
      for (int s = r + 1; s <= m_; ++s)
        if (!(*this)(r, s).is_zero()) return false;
    return true;
  }

  bool is_upper_triangular() const {
    for (int r = 1; r <= m_; ++r)
      for (int s = 1; s < r; ++s)
        if (!(*this)(r, s).is_zero()) return false;
    return true;
  }

  /// Rows on separate lines, entries right-aligned.
  std::string to_string() const {
    std::size_t width = 1;
    for (const auto& x : e_) width = std::max(width, x.to_string().size());
    std::ostringstream os;
    for (int r = 1; r <= m_; ++r) {
      os << "[";
      for (int s = 1; s <= m_; ++s) {
        std::string t = (*this)(r, s).to_string();
        os << (s > 1 ? " " : "") << std::string(width - t.size(), ' ') << t;
      }
      os << "]\n";
    }
    return os.str();
  }

 private:
  std::size_t index(int r, int s) const {
    if (r < 1 || r > m_ || s < 1 || s > m_) throw StructuralError("matrix index out of range");
    return std::size_t(r - 1) * std::size_t(m_) + std::size_t(s - 1);
  }

  int m_ = 0;
  std::vector<Rational> e_;
};

inline TransformMatrix build_T_enum(int m) {
  if (m < 1) throw DomainError("m must be positive");
  if (m > kEnumerationCap)
    throw ResourceError("subset enumeration capped at m = " + std::to_string(kEnumerationCap) + ", got " +
                        std::to_string(m));
  std::vector<std::vector<long>> count(m + 1, std::vector<long>(m + 1, 0));
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    int r = __builtin_popcount(mask);
    int below = 0;
    for (int s = 1; s <= m; ++s) {
      if (mask & (1u << (s - 1))) ++below;
      if (below % 2 == 1) ++count[r][s];
    }
  }
  TransformMatrix T(m);
  for (int r = 1; r <= m; ++r)
    for (int s = 1; s <= m; ++s) T(r, s) = count[r][s];
  return T;
}

/// Boundary rules for row 1, row m and column m, recurrence elsewhere.
inline TransformMatrix build_T_recurrence(int m) {
  if (m < 1) throw DomainError("m must be positive");
  TransformMatrix prev(1);
  prev(1, 1) = 1;
  for (int k = 2; k <= m; ++k) {
    TransformMatrix T(k);
    for (int s = 1; s <= k; ++s) {
      T(1, s) = s;
      T(k, s) = s % 2;
    }
    for (int r = 2; r <= k - 1; ++r) {
      T(r, k) = r % 2 == 1 ? Rational(binomial(k, r)) : Rational(0);
      for (int s = 1; s <= k - 1; ++s) T(r, s) = prev(r - 1, s) + prev(r, s);
    }
    prev = std::move(T);
  }
  return prev;
}

/// (L_m)_{rt} = C(m - t, r - t); unit lower triangular.
inline TransformMatrix build_L(int m) {
  TransformMatrix L(m);
  for (int r = 1; r <= m; ++r)
    for (int t = 1; t <= m; ++t) L(r, t) = binomial(m - t, r - t);
  return L;
}

/// (U_m)_{ts} = (-2)^{t-1} C(s, t); upper triangular.
inline TransformMatrix build_U(int m) {
  TransformMatrix U(m);
  BigInt power = 1;
  for (int t = 1; t <= m; ++t) {
    for (int s = 1; s <= m; ++s) U(t, s) = BigInt(power * binomial(s, t));
    power *= -2;
  }
  return U;
}

/// Production construction of T_m.
inline TransformMatrix build_T_closed(int m) {
  if (m < 1) throw DomainError("m must be positive");
  TransformMatrix T(m);
  for (int r = 1; r <= m; ++r)
    for (int s = 1; s <= m; ++s) {
      BigInt acc = 0;
      BigInt power = 1;
      for (int t = 1; t <= m; ++t) {
        acc += binomial(m - t, r - t) * power * binomial(s, t);
        power *= -2;
      }
      T(r, s) = acc;
    }
  return T;
}

/// Bareiss fraction-free elimination with row pivoting. Entries are
/// integers in every use here, but any rationals are handled exactly.
inline Rational determinant(const TransformMatrix& A) {
  const int m = A.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m));
  for (int r = 0; r < m; ++r)
    for (int s = 0; s < m; ++s) a[r][s] = A(r + 1, s + 1);
  Rational prev_pivot = 1;
  int sign = 1;
  for (int k = 0; k < m - 1; ++k) {
    if (a[k][k].is_zero()) {
      int swap_row = -1;
      for (int i = k + 1; i < m; ++i)
        if (!a[i][k].is_zero()) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return Rational(0);
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < m; ++i) {
      for (int j = k + 1; j < m; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev_pivot;
      a[i][k] = 0;
    }
    prev_pivot = a[k][k];
  }
  Rational d = a[m - 1][m - 1];
  return sign > 0 ? d : -d;
}

/// Exact inverse by Gauss-Jordan elimination over the rationals.
inline TransformMatrix inverse(const TransformMatrix& A) {
  const int m = A.size();
  TransformMatrix work = A;
  TransformMatrix inv = TransformMatrix::identity(m);
  for (int col = 1; col <= m; ++col) {
    int pivot = col;
    while (pivot <= m && work(pivot, col).is_zero()) ++pivot;
    if (pivot > m) throw DomainError("matrix is singular");
    if (pivot != col)
      for (int s = 1; s <= m; ++s) {
        std::swap(work(pivot, s), work(col, s));
        std::swap(inv(pivot, s), inv(col, s));
      }
    Rational scale = Rational(1) / work(col, col);
    for (int s = 1; s <= m; ++s) {
      work(col, s) *= scale;
      inv(col, s) *= scale;
    }
    for (int r = 1; r <= m; ++r) {
      if (r == col || work(r, col).is_zero()) continue;
      Rational f = work(r, col);
      for (int s = 1; s <= m; ++s) {
        work(r, s) -= f * work(col, s);
        inv(r, s) -= f * inv(col, s);
      }
    }
  }
  return inv;
}

/// C = T_m^{-1}.
inline TransformMatrix invert_T(int m) { return inverse(build_T_closed(m)); }

inline Rational det_T(int m) { return determinant(build_T_closed(m)); }

/// (-2)^{m(m-1)/2}
inline Rational expected_det_T(int m) {
  BigInt v;
  mpz_pow_ui(v.get_mpz_t(), BigInt(2).get_mpz_t(), static_cast<unsigned long>(m) * (m - 1) / 2);
  long e = long(m) * (m - 1) / 2;
  return Rational(e % 2 ? BigInt(-v) : v);
}

/// y = T_m c over the integers.
inline std::vector<long> transform_counts(const TransformMatrix& T, const std::vector<long>& c) {
  std::vector<Rational> v(c.begin(), c.end());
  std::vector<long> out;
  for (const auto& x : T.apply(v)) {
    if (!x.is_integer() || !x.value().get_num().fits_slong_p())
      throw DomainError("transformed vector is not a machine integer");
    out.push_back(x.value().get_num().get_si());
  }
  return out;
}

}  // namespace eigconf
