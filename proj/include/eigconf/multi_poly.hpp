#pragma once

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "eigconf/errors.hpp"
#include "eigconf/rational.hpp"
#include "eigconf/var_table.hpp"

namespace eigconf {

using Exponent = std::uint16_t;
using Monomial = boost::container::small_vector<Exponent, 14>;

/// Lexicographic comparison in variable order: positive when `a` dominates.
inline int compare_lex(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  }
  return 0;
}

inline Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    unsigned e = unsigned(a[i]) + unsigned(b[i]);
    if (e > 0xFFFFu) throw ResourceError("exponent overflow in monomial product");
    r[i] = static_cast<Exponent>(e);
  }
  return r;
}

inline unsigned monomial_degree(const Monomial& a) {
  unsigned d = 0;
  for (auto e : a) d += e;
  return d;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto e : m) h = (h ^ e) * 1099511628211ull;
    return h;
  }
};

/// Sparse multivariate polynomial over the coefficient ring `C`, stored as
/// a term list sorted by descending lex order with no zero coefficients.
/// Two equal polynomials always have identical term lists.
template <class C>
class MultiPoly {
 public:
  struct Term {
    Monomial exponents;
    C coeff;
    friend bool operator==(const Term& a, const Term& b) {
      return a.exponents == b.exponents && a.coeff == b.coeff;
    }
  };

  MultiPoly() = default;
  explicit MultiPoly(VarTablePtr vars) : vars_(std::move(vars)) {}

  static MultiPoly from_terms(VarTablePtr vars, std::vector<Term> terms) {
    MultiPoly p(std::move(vars));
    for (const auto& t : terms)
      if (t.exponents.size() != p.nvars())
        throw StructuralError("exponent vector length does not match variable table");
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
      return compare_lex(a.exponents, b.exponents) > 0;
    });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().exponents == t.exponents) {
        p.terms_.back().coeff += t.coeff;
      } else {
        if (!p.terms_.empty() && eigconf::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && eigconf::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
    return p;
  }

  static MultiPoly constant(VarTablePtr vars, C c) {
    MultiPoly p(std::move(vars));
    if (!eigconf::is_zero(c)) p.terms_.push_back({Monomial(p.nvars(), 0), std::move(c)});
    return p;
  }

  static MultiPoly monomial(VarTablePtr vars, Monomial exps, C c) {
    MultiPoly p(std::move(vars));
    if (exps.size() != p.nvars()) throw StructuralError("exponent vector length mismatch");
    if (!eigconf::is_zero(c)) p.terms_.push_back({std::move(exps), std::move(c)});
    return p;
  }

  static MultiPoly variable(VarTablePtr vars, std::size_t index) {
    Monomial m(vars->size(), 0);
    if (index >= m.size()) throw StructuralError("variable index out of range");
    m[index] = 1;
    return monomial(std::move(vars), std::move(m), one_like(C{}));
  }

  static MultiPoly variable(VarTablePtr vars, std::string_view name) {
    auto idx = vars->index_of(name);
    return variable(std::move(vars), idx);
  }

  const VarTablePtr& vars() const noexcept { return vars_; }
  std::size_t nvars() const noexcept { return vars_ ? vars_->size() : 0; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && monomial_degree(terms_[0].exponents) == 0);
  }

  C constant_value() const {
    if (!is_constant()) throw DomainError("polynomial is not constant: " + to_string());
    return terms_.empty() ? zero_like(C{}) : terms_[0].coeff;
  }

  const Term& leading_term() const {
    if (terms_.empty()) throw DomainError("leading term of zero polynomial");
    return terms_.front();
  }

  C coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& k) {
      return compare_lex(t.exponents, k) > 0;
    });
    if (it != terms_.end() && it->exponents == m) return it->coeff;
    return zero_like(C{});
  }

  unsigned degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.exponents[var]);
    return d;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, monomial_degree(t.exponents));
    return d;
  }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }
  MultiPoly& operator+=(const MultiPoly& b) { return *this = merge(*this, b, false); }
  MultiPoly& operator-=(const MultiPoly& b) { return *this = merge(*this, b, true); }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return multiply(a, b); }
  MultiPoly& operator*=(const MultiPoly& b) { return *this = multiply(*this, b); }

  MultiPoly scaled(const C& c) const {
    if (eigconf::is_zero(c)) return MultiPoly(vars_);
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  /// Product with the monomial `m` times `c`; order is preserved because lex
  /// is a monomial order.
  MultiPoly shifted(const Monomial& m, const C& c) const {
    MultiPoly r(vars_);
    if (eigconf::is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({monomial_product(t.exponents, m), t.coeff * c});
    return r;
  }

  MultiPoly pow(unsigned k) const {
    MultiPoly result = constant(vars_, one_like(C{}));
    MultiPoly base = *this;
    while (k) {
      if (k & 1u) result = result * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return result;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return same_table(a.vars_, b.vars_) && a.terms_ == b.terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
      std::string coeff = to_text(t.coeff);
      bool negative = !coeff.empty() && coeff[0] == '-';
      if (negative) coeff.erase(0, 1);
      if (first) {
        if (negative) os << "-";
      } else {
        os << (negative ? " - " : " + ");
      }
      first = false;
      bool has_vars = monomial_degree(t.exponents) > 0;
      bool unit = coeff == "1";
      if (!unit || !has_vars) os << coeff;
      bool need_star = !unit || !has_vars;
      for (std::size_t i = 0; i < t.exponents.size(); ++i) {
        if (t.exponents[i] == 0) continue;
        if (need_star) os << "*";
        os << vars_->name(i);
        if (t.exponents[i] > 1) os << "^" << t.exponents[i];
        need_star = true;
      }
    }
    return os.str();
  }

 private:
  static void check_tables(const MultiPoly& a, const MultiPoly& b) {
    if (!same_table(a.vars_, b.vars_))
      throw StructuralError("polynomials live over different variable tables");
  }

  static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
    check_tables(a, b);
    MultiPoly r(a.vars_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c = i == a.terms_.size()   ? -1
              : j == b.terms_.size() ? 1
                                     : compare_lex(a.terms_[i].exponents, b.terms_[j].exponents);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back(b.terms_[j++]);
        if (subtract) r.terms_.back().coeff = -r.terms_.back().coeff;
      } else {
        C s = subtract ? C(a.terms_[i].coeff - b.terms_[j].coeff) : C(a.terms_[i].coeff + b.terms_[j].coeff);
        if (!eigconf::is_zero(s)) r.terms_.push_back({a.terms_[i].exponents, std::move(s)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  // Heap merge of the |small| sorted streams small_i * big (Johnson).
  static MultiPoly multiply(const MultiPoly& a, const MultiPoly& b) {
    check_tables(a, b);
    MultiPoly r(a.vars_);
    if (a.is_zero() || b.is_zero()) return r;
    const MultiPoly& small = a.size() <= b.size() ? a : b;
    const MultiPoly& big = a.size() <= b.size() ? b : a;
    if (small.size() == 1) return big.shifted(small.terms_[0].exponents, small.terms_[0].coeff);

    struct Node {
      Monomial m;
      std::size_t i, j;
    };
    auto less = [](const Node& x, const Node& y) { return compare_lex(x.m, y.m) < 0; };
    std::priority_queue<Node, std::vector<Node>, decltype(less)> heap(less);
    for (std::size_t i = 0; i < small.size(); ++i)
      heap.push({monomial_product(small.terms_[i].exponents, big.terms_[0].exponents), i, 0});

    r.terms_.reserve(big.size() + small.size());
    while (!heap.empty()) {
      Node top = heap.top();
      heap.pop();
      const C& ca = small.terms_[top.i].coeff;
      const C& cb = big.terms_[top.j].coeff;
      if (!r.terms_.empty() && r.terms_.back().exponents == top.m) {
        r.terms_.back().coeff += ca * cb;
      } else {
        if (!r.terms_.empty() && eigconf::is_zero(r.terms_.back().coeff)) r.terms_.pop_back();
        r.terms_.push_back({top.m, C(ca * cb)});
      }
      if (top.j + 1 < big.size()) {
        heap.push({monomial_product(small.terms_[top.i].exponents, big.terms_[top.j + 1].exponents), top.i,
                   top.j + 1});
      }
    }
    if (!r.terms_.empty() && eigconf::is_zero(r.terms_.back().coeff)) r.terms_.pop_back();
    return r;
  }

  VarTablePtr vars_;
  std::vector<Term> terms_;
};

using RatPoly = MultiPoly<Rational>;
using IntPoly = MultiPoly<BigInt>;

template <class C>
bool is_zero(const MultiPoly<C>& p) {
  return p.is_zero();
}
template <class C>
std::string to_text(const MultiPoly<C>& p) {
  return p.to_string();
}
template <class C>
MultiPoly<C> zero_like(const MultiPoly<C>& p) {
  return MultiPoly<C>(p.vars());
}
template <class C>
MultiPoly<C> one_like(const MultiPoly<C>& p) {
  return MultiPoly<C>::constant(p.vars(), one_like(C{}));
}

/// Hash-map accumulator for building a polynomial from many unsorted terms.
template <class C>
class TermAccumulator {
 public:
  explicit TermAccumulator(VarTablePtr vars) : vars_(std::move(vars)) {}

  void add(const Monomial& m, const C& c) {
    if (is_zero(c)) return;
    auto [it, inserted] = acc_.try_emplace(m, c);
    if (!inserted) it->second += c;
  }

  std::size_t size() const noexcept { return acc_.size(); }

  void add(const MultiPoly<C>& p) {
    for (const auto& t : p.terms()) add(t.exponents, t.coeff);
  }

  MultiPoly<C> finish() {
    std::vector<typename MultiPoly<C>::Term> terms;
    terms.reserve(acc_.size());
    for (auto& [m, c] : acc_)
      if (!is_zero(c)) terms.push_back({m, std::move(c)});
    acc_.clear();
    return MultiPoly<C>::from_terms(vars_, std::move(terms));
  }

 private:
  VarTablePtr vars_;
  std::unordered_map<Monomial, C, MonomialHash> acc_;
};

template <class To, class From>
MultiPoly<To> convert_coefficients(const MultiPoly<From>& p) {
  std::vector<typename MultiPoly<To>::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({t.exponents, To(t.coeff)});
  return MultiPoly<To>::from_terms(p.vars(), std::move(terms));
}

/// Re-express `p` over `target`, matching variables by name. Variables of
/// `p` that actually occur must exist in `target`.
template <class C>
MultiPoly<C> rebind(const MultiPoly<C>& p, const VarTablePtr& target) {
  if (same_table(p.vars(), target))
    return MultiPoly<C>::from_terms(target, std::vector<typename MultiPoly<C>::Term>(p.terms().begin(), p.terms().end()));
  std::vector<std::optional<std::size_t>> where(p.nvars());
  for (std::size_t i = 0; i < p.nvars(); ++i) where[i] = target->find(p.vars()->name(i));
  std::vector<typename MultiPoly<C>::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m(target->size(), 0);
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      if (!where[i]) throw StructuralError("variable '" + p.vars()->name(i) + "' is missing from the target table");
      m[*where[i]] = t.exponents[i];
    }
    terms.push_back({std::move(m), t.coeff});
  }
  return MultiPoly<C>::from_terms(target, std::move(terms));
}

/// Image of `p` under the ring homomorphism sending each bound variable to
/// its binding and every other variable to the same-named variable of
/// `target`. Bindings must all live over `target`.
template <class C, class D>
MultiPoly<D> substitute(const MultiPoly<C>& p, const std::map<std::string, MultiPoly<D>>& bindings,
                        const VarTablePtr& target) {
  for (const auto& [name, img] : bindings) {
    if (!p.vars()->find(name)) throw StructuralError("cannot bind unknown variable '" + name + "'");
    if (!same_table(img.vars(), target))
      throw StructuralError("binding for '" + name + "' is not over the target variable table");
  }
  const std::size_t nv = p.nvars();
  std::vector<MultiPoly<D>> image(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    const std::string& name = p.vars()->name(i);
    if (auto it = bindings.find(name); it != bindings.end()) {
      image[i] = it->second;
    } else if (p.degree_in(i) > 0) {
      auto idx = target->find(name);
      if (!idx) throw StructuralError("unbound variable '" + name + "' does not exist in the target table");
      image[i] = MultiPoly<D>::variable(target, *idx);
    }
  }
  // powers[i][k] = image[i]^k, filled lazily
  std::vector<std::vector<MultiPoly<D>>> powers(nv);
  auto power = [&](std::size_t i, unsigned k) -> const MultiPoly<D>& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MultiPoly<D>::constant(target, one_like(D{})));
    while (cache.size() <= k) cache.push_back(cache.back() * image[i]);
    return cache[k];
  };
  TermAccumulator<D> acc(target);
  for (const auto& t : p.terms()) {
    MultiPoly<D> prod = MultiPoly<D>::constant(target, D(t.coeff));
    for (std::size_t i = 0; i < nv && !prod.is_zero(); ++i)
      if (t.exponents[i]) prod = prod * power(i, t.exponents[i]);
    acc.add(prod);
  }
  return acc.finish();
}

/// Value of `p` with every variable replaced by the matching entry of
/// `point` (indexed like `p.vars()`).
template <class C>
Rational evaluate(const MultiPoly<C>& p, std::span<const Rational> point) {
  if (point.size() != p.nvars()) throw StructuralError("evaluation point has the wrong number of coordinates");
  std::vector<std::vector<Rational>> powers(p.nvars());
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    unsigned d = p.degree_in(i);
    powers[i].reserve(d + 1);
    powers[i].push_back(Rational(1));
    for (unsigned k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * point[i]);
  }
  mpq_class sum;
  mpq_class term;
  for (const auto& t : p.terms()) {
    term = Rational(t.coeff).value();
    for (std::size_t i = 0; i < t.exponents.size(); ++i)
      if (t.exponents[i]) term *= powers[i][t.exponents[i]].value();
    sum += term;
  }
  return Rational(sum);
}

}  // namespace eigconf
