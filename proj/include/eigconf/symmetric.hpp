#pragma once

// The level polynomials h_r and their rewriting in elementary symmetric
// polynomials.
//
//   h_r(alpha, beta, x) = prod_{|I| = r} prod_j ( x + prod_{i in I} (alpha_i - beta_j) )
//
// is symmetric in the alpha block and in the beta block, so it equals
// u_r(e(alpha), e(beta), x) for a unique integer polynomial u_r(gamma, delta, x).
// Substituting the characteristic coefficients a, b for gamma, delta gives d_r.
//
// Variable tables used here (block order is lex precedence):
//   h_table : alpha_1..alpha_m | beta_1..beta_n | x
//   e_table : gamma_1..gamma_m | delta_1..delta_n | x
//   d_table : a_1..a_m | b_1..b_n | x        (u_r read over the char coefficients)

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eigconf/charpoly.hpp"
#include "eigconf/errors.hpp"
#include "eigconf/multi_poly.hpp"
#include "eigconf/rational.hpp"
#include "eigconf/uni_poly.hpp"
#include "eigconf/var_table.hpp"

namespace eigconf {

inline constexpr long kDegreeCap = 64;
inline constexpr std::size_t kDefaultTermBudget = 4'000'000;

using Partition = std::vector<Exponent>;

inline VarTablePtr h_table(int m, int n) {
  return make_table({{"alpha", indexed_names("alpha_", m)}, {"beta", indexed_names("beta_", n)}, {"x", {"x"}}});
}

inline VarTablePtr e_table(int m, int n) {
  return make_table({{"gamma", indexed_names("gamma_", m)}, {"delta", indexed_names("delta_", n)}, {"x", {"x"}}});
}

inline VarTablePtr d_table(int m, int n) {
  return make_table({{"a", indexed_names("a_", m)}, {"b", indexed_names("b_", n)}, {"x", {"x"}}});
}

/// h_r with the eigenvalue variables as coefficients of a polynomial in x.
struct HPoly {
  int m = 0, n = 0, r = 0;
  IntPoly poly;  // over h_table(m, n)
};

/// u_r with gamma_k standing for e_k(alpha) and delta_k for e_k(beta).
struct EPoly {
  int m = 0, n = 0, r = 0;
  IntPoly poly;  // over e_table(m, n)
};

/// d_r: a polynomial in x with coefficients in the parameter ring.
struct DPoly {
  int r = 0;
  UniPoly<RatPoly> poly;
};

template <class C>
MultiPoly<C> elementary_symmetric(const VarTablePtr& table, const std::string& block, int k) {
  const auto& b = table->block(block);
  if (k < 0 || std::size_t(k) > b.size) return MultiPoly<C>(table);
  std::vector<typename MultiPoly<C>::Term> terms;
  for (unsigned mask = 0; mask < (1u << b.size); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    Monomial mono(table->size(), 0);
    for (std::size_t i = 0; i < b.size; ++i)
      if (mask & (1u << i)) mono[b.offset + i] = 1;
    terms.push_back({std::move(mono), one_like(C{})});
  }
  return MultiPoly<C>::from_terms(table, std::move(terms));
}

template <class C>
MultiPoly<C> product_tree(std::vector<MultiPoly<C>> factors, const VarTablePtr& table) {
  if (factors.empty()) return MultiPoly<C>::constant(table, one_like(C{}));
  while (factors.size() > 1) {
    std::vector<MultiPoly<C>> next;
    for (std::size_t i = 0; i + 1 < factors.size(); i += 2) next.push_back(factors[i] * factors[i + 1]);
    if (factors.size() % 2) next.push_back(std::move(factors.back()));
    factors = std::move(next);
  }
  return std::move(factors[0]);
}

namespace detail {

/// Dominant part (monomials with nonincreasing exponents) of
/// prod_k e_k^{lambda_k - lambda_{k+1}} in lambda.size() variables, i.e. its
/// coefficients in the monomial symmetric basis. Sorted descending; the
/// first entry is (lambda, 1).
using DominantExpansion = std::vector<std::pair<Partition, BigInt>>;

inline std::vector<unsigned> masks_of_size(std::size_t len, std::size_t k) {
  std::vector<unsigned> out;
  for (unsigned mask = 0; mask < (1u << len); ++mask)
    if (std::size_t(__builtin_popcount(mask)) == k) out.push_back(mask);
  return out;
}

inline Partition sorted_desc(Partition p) {
  std::sort(p.begin(), p.end(), std::greater<>());
  return p;
}

inline std::shared_ptr<const DominantExpansion> dominant_e_product(const Partition& lambda) {
  static std::mutex mu;
  static std::map<Partition, std::shared_ptr<const DominantExpansion>> memo;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(lambda); it != memo.end()) return it->second;
  }
  const std::size_t len = lambda.size();
  std::size_t k = 0;
  while (k < len && lambda[k] > 0) ++k;
  auto result = std::make_shared<DominantExpansion>();
  if (k == 0) {
    result->push_back({lambda, BigInt(1)});
  } else {
    // e-product of lambda = (e-product of lambda minus its last column) * e_k
    Partition prev = lambda;
    for (std::size_t i = 0; i < k; ++i) --prev[i];
    auto base = dominant_e_product(prev);
    std::map<Partition, BigInt> lookup(base->begin(), base->end());
    const auto masks = masks_of_size(len, k);
    std::set<Partition, std::greater<>> candidates;
    for (const auto& [nu, coeff] : *base)
      for (unsigned mask : masks) {
        Partition rho = nu;
        for (std::size_t i = 0; i < len; ++i)
          if (mask & (1u << i)) ++rho[i];
        candidates.insert(sorted_desc(std::move(rho)));
      }
    // [x^rho](S * e_k) = sum over k-subsets K of [x^(rho - 1_K)] S, and S is
    // symmetric so any monomial's coefficient is that of its sorted form.
    for (const auto& rho : candidates) {
      BigInt sum = 0;
      for (unsigned mask : masks) {
        Partition sigma = rho;
        bool ok = true;
        for (std::size_t i = 0; i < len && ok; ++i)
          if (mask & (1u << i)) {
            if (sigma[i] == 0) ok = false;
            else --sigma[i];
          }
        if (!ok) continue;
        if (auto it = lookup.find(sorted_desc(std::move(sigma))); it != lookup.end()) sum += it->second;
      }
      if (sum != 0) result->push_back({rho, sum});
    }
  }
  std::lock_guard lock(mu);
  return memo.emplace(lambda, std::move(result)).first->second;
}

inline bool nonincreasing(const Monomial& m, std::size_t off, std::size_t size) {
  for (std::size_t i = 1; i < size; ++i)
    if (m[off + i] > m[off + i - 1]) return false;
  return true;
}

}  // namespace detail

/// A block of the source table that is reduced to the elementary symmetric
/// variables of a target block of the same size.
struct SymmetricBlock {
  std::string source;
  std::string target;
};

/// Throws DomainError naming the first adjacent transposition of `block`
/// that does not fix `p`.
template <class C>
void check_block_symmetry(const MultiPoly<C>& p, const std::string& block) {
  const auto& b = p.vars()->block(block);
  for (std::size_t i = 0; i + 1 < b.size; ++i) {
    std::vector<typename MultiPoly<C>::Term> swapped(p.terms().begin(), p.terms().end());
    for (auto& t : swapped) std::swap(t.exponents[b.offset + i], t.exponents[b.offset + i + 1]);
    if (!(MultiPoly<C>::from_terms(p.vars(), std::move(swapped)) == p))
      throw DomainError("polynomial is not symmetric under the transposition " + p.vars()->name(b.offset + i) +
                        " <-> " + p.vars()->name(b.offset + i + 1));
  }
}

/// Called once per elimination step with the leading monomial removed.
using ReductionObserver = std::function<void(std::size_t step, const Monomial& leading)>;

/// Rewrites `p`, symmetric in each listed block, as a polynomial in the
/// elementary symmetric polynomials of those blocks. Variables outside the
/// blocks are passive and map to the same-named variables of `target`.
///
/// Only the dominant monomials of the remainder are tracked: a symmetric
/// polynomial is determined by them, and subtracting
///   c * prod_blocks prod_k e_k^{lambda_k - lambda_{k+1}} * passive
/// only needs the dominant part of the elementary product.
template <class C>
MultiPoly<C> reduce_symmetric(const MultiPoly<C>& p, const std::vector<SymmetricBlock>& blocks,
                              const VarTablePtr& target, const ReductionObserver& observer = {}) {
  const VarTable& src = *p.vars();
  struct Resolved {
    std::size_t off, size, target_off;
  };
  std::vector<Resolved> resolved;
  std::vector<bool> in_block(src.size(), false);
  for (const auto& b : blocks) {
    const auto& sb = src.block(b.source);
    const auto& tb = target->block(b.target);
    if (sb.size != tb.size)
      throw StructuralError("block '" + b.source + "' and target block '" + b.target + "' differ in size");
    resolved.push_back({sb.offset, sb.size, tb.offset});
    for (std::size_t i = 0; i < sb.size; ++i) in_block[sb.offset + i] = true;
  }
  std::vector<std::optional<std::size_t>> passive(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (in_block[i]) continue;
    passive[i] = target->find(src.name(i));
    if (!passive[i] && p.degree_in(i) > 0)
      throw StructuralError("passive variable '" + src.name(i) + "' is missing from the target table");
  }
  for (const auto& b : blocks) check_block_symmetry(p, b.source);

  auto greater = [](const Monomial& a, const Monomial& b) { return compare_lex(a, b) > 0; };
  std::map<Monomial, C, decltype(greater)> rem(greater);
  for (const auto& t : p.terms()) {
    bool dominant = true;
    for (const auto& r : resolved) dominant = dominant && detail::nonincreasing(t.exponents, r.off, r.size);
    if (dominant) rem.emplace(t.exponents, t.coeff);
  }

  std::vector<typename MultiPoly<C>::Term> out;
  std::vector<std::shared_ptr<const detail::DominantExpansion>> expansions(resolved.size());
  std::size_t step = 0;
  while (!rem.empty()) {
    auto it = rem.begin();
    const Monomial key = it->first;
    const C c = it->second;
    rem.erase(it);
    if (observer) observer(step, key);
    ++step;

    Monomial image(target->size(), 0);
    for (std::size_t i = 0; i < src.size(); ++i)
      if (passive[i] && key[i]) image[*passive[i]] = key[i];
    for (std::size_t b = 0; b < resolved.size(); ++b) {
      const auto& r = resolved[b];
      Partition lambda(key.begin() + long(r.off), key.begin() + long(r.off + r.size));
      for (std::size_t k = 0; k < r.size; ++k)
        image[r.target_off + k] = Exponent(lambda[k] - (k + 1 < r.size ? lambda[k + 1] : 0));
      expansions[b] = detail::dominant_e_product(lambda);
      if (expansions[b]->front().first != lambda) throw std::logic_error("elementary product lost its leading term");
    }
    out.push_back({std::move(image), c});

    // every combination except the all-leading one, which cancels the key
    std::vector<std::size_t> idx(resolved.size(), 0);
    while (true) {
      std::size_t b = 0;
      for (; b < resolved.size(); ++b) {
        if (++idx[b] < expansions[b]->size()) break;
        idx[b] = 0;
      }
      if (b == resolved.size()) break;
      Monomial mono = key;
      C coeff = c;
      for (std::size_t bb = 0; bb < resolved.size(); ++bb) {
        const auto& [rho, cf] = (*expansions[bb])[idx[bb]];
        std::copy(rho.begin(), rho.end(), mono.begin() + long(resolved[bb].off));
        coeff *= C(cf);
      }
      if (compare_lex(mono, key) >= 0) throw std::logic_error("symmetric reduction failed to descend");
      auto [jt, inserted] = rem.try_emplace(std::move(mono), zero_like(c));
      jt->second -= coeff;
      if (eigconf::is_zero(jt->second)) rem.erase(jt);
    }
  }
  return MultiPoly<C>::from_terms(target, std::move(out));
}

/// The classical algorithm on full polynomials: subtract the complete
/// elementary product for the leading term until nothing is left.
/// `observer` sees every intermediate remainder. Used as a test oracle.
template <class C>
MultiPoly<C> reduce_symmetric_textbook(const MultiPoly<C>& p, const std::vector<SymmetricBlock>& blocks,
                                       const VarTablePtr& target,
                                       const std::function<void(const MultiPoly<C>&)>& observer = {}) {
  const VarTablePtr& src = p.vars();
  for (const auto& b : blocks) check_block_symmetry(p, b.source);
  std::vector<std::vector<MultiPoly<C>>> e(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t k = 0; k <= src->block(blocks[b].source).size; ++k)
      e[b].push_back(elementary_symmetric<C>(src, blocks[b].source, int(k)));

  std::vector<typename MultiPoly<C>::Term> out;
  MultiPoly<C> rem = p;
  while (!rem.is_zero()) {
    const auto lead = rem.leading_term();
    Monomial image(target->size(), 0);
    Monomial passive = lead.exponents;
    MultiPoly<C> sub = MultiPoly<C>::constant(src, lead.coeff);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& sb = src->block(blocks[b].source);
      const auto& tb = target->block(blocks[b].target);
      for (std::size_t k = 0; k < sb.size; ++k) {
        unsigned next = k + 1 < sb.size ? lead.exponents[sb.offset + k + 1] : 0;
        unsigned power = lead.exponents[sb.offset + k] - next;
        image[tb.offset + k] = Exponent(power);
        sub *= e[b][k + 1].pow(power);
        passive[sb.offset + k] = 0;
      }
    }
    for (std::size_t i = 0; i < src->size(); ++i)
      if (passive[i]) image[target->index_of(src->name(i))] = passive[i];
    sub = sub.shifted(passive, one_like(C{}));
    rem -= sub;
    if (!rem.is_zero() && compare_lex(rem.leading_term().exponents, lead.exponents) >= 0)
      throw std::logic_error("symmetric reduction failed to descend");
    out.push_back({std::move(image), lead.coeff});
    if (observer) observer(rem);
  }
  return MultiPoly<C>::from_terms(target, std::move(out));
}

inline void check_level_args(int m, int n, int r, long cap) {
  if (m < 1 || n < 1) throw DomainError("matrix sizes must be positive");
  if (r < 1 || r > m) throw DomainError("level r must satisfy 1 <= r <= m");
  BigInt degree = binomial(m, r) * n;
  if (degree > cap)
    throw ResourceError("degree binom(" + std::to_string(m) + "," + std::to_string(r) + ")*" + std::to_string(n) +
                        " = " + degree.get_str() + " exceeds the cap " + std::to_string(cap));
}

namespace detail {

inline std::vector<unsigned> subsets(int m, int r) { return masks_of_size(std::size_t(m), std::size_t(r)); }

}  // namespace detail

/// Fully expanded h_r.
inline HPoly build_h(int m, int n, int r, long cap = kDegreeCap) {
  check_level_args(m, n, r, cap);
  auto t = h_table(m, n);
  auto x = IntPoly::variable(t, "x");
  std::vector<IntPoly> factors;
  for (unsigned mask : detail::subsets(m, r))
    for (int j = 0; j < n; ++j) {
      auto beta = IntPoly::variable(t, t->block("beta").offset + std::size_t(j));
      IntPoly prod = IntPoly::constant(t, BigInt(1));
      for (int i = 0; i < m; ++i)
        if (mask & (1u << i)) prod *= IntPoly::variable(t, std::size_t(i)) - beta;
      factors.push_back(x + prod);
    }
  return {m, n, r, product_tree(std::move(factors), t)};
}

/// Rewrites a polynomial over h_table(m, n) in gamma, delta.
template <class C>
MultiPoly<C> ftsp_reduce(const MultiPoly<C>& h, const ReductionObserver& observer = {}) {
  const auto& vt = *h.vars();
  int m = int(vt.block("alpha").size), n = int(vt.block("beta").size);
  return reduce_symmetric(h, {{"alpha", "gamma"}, {"beta", "delta"}}, e_table(m, n), observer);
}

inline EPoly ftsp_reduce(const HPoly& h, const ReductionObserver& observer = {}) {
  return {h.m, h.n, h.r, ftsp_reduce(h.poly, observer)};
}

/// gamma_k -> e_k(alpha), delta_k -> e_k(beta): the inverse of ftsp_reduce.
inline IntPoly back_substitute(const EPoly& u) {
  auto t = h_table(u.m, u.n);
  std::map<std::string, IntPoly> bind;
  for (int k = 1; k <= u.m; ++k) bind["gamma_" + std::to_string(k)] = elementary_symmetric<BigInt>(t, "alpha", k);
  for (int k = 1; k <= u.n; ++k) bind["delta_" + std::to_string(k)] = elementary_symmetric<BigInt>(t, "beta", k);
  return substitute(u.poly, bind, t);
}

/// u_r read over the characteristic-coefficient symbols a_k, b_k.
inline IntPoly in_char_symbols(const EPoly& u) {
  return IntPoly::from_terms(d_table(u.m, u.n),
                             std::vector<IntPoly::Term>(u.poly.terms().begin(), u.poly.terms().end()));
}

// Staged construction. With H_r(alpha, t, x) = prod_I (x + prod_{i in I}(alpha_i - t)),
// h_r = prod_j H_r(alpha, beta_j, x). Reducing the alpha block of H_r gives
// W_r(gamma, t, x) = sum_k w_k(gamma, x) t^k, and then
//   h_r = sum_{mu} ( prod_j w_{mu_j} ) m_mu(beta)
// over partitions mu with n parts, m_mu the monomial symmetric polynomial.

inline VarTablePtr level_table(int m) {
  return make_table({{"alpha", indexed_names("alpha_", m)}, {"t", {"t"}}, {"x", {"x"}}});
}
inline VarTablePtr level_e_table(int m) {
  return make_table({{"gamma", indexed_names("gamma_", m)}, {"t", {"t"}}, {"x", {"x"}}});
}
inline VarTablePtr gamma_x_table(int m) {
  return make_table({{"gamma", indexed_names("gamma_", m)}, {"x", {"x"}}});
}
inline VarTablePtr beta_table(int n) { return make_table({{"beta", indexed_names("beta_", n)}}); }
inline VarTablePtr delta_table(int n) { return make_table({{"delta", indexed_names("delta_", n)}}); }

/// Memoized W_r per (m, r) and monomial-to-elementary conversions per
/// (n, mu). Shared by every caller; safe for concurrent use.
class LevelCache {
 public:
  static LevelCache& global() {
    static LevelCache cache;
    return cache;
  }

  std::shared_ptr<const IntPoly> level_w(int m, int r) {
    {
      std::lock_guard lock(mu_);
      if (auto it = w_.find({m, r}); it != w_.end()) return it->second;
    }
    auto t = level_table(m);
    auto x = IntPoly::variable(t, "x"), tv = IntPoly::variable(t, "t");
    std::vector<IntPoly> factors;
    for (unsigned mask : detail::subsets(m, r)) {
      IntPoly prod = IntPoly::constant(t, BigInt(1));
      for (int i = 0; i < m; ++i)
        if (mask & (1u << i)) prod *= IntPoly::variable(t, std::size_t(i)) - tv;
      factors.push_back(x + prod);
    }
    auto H = product_tree(std::move(factors), t);
    auto W = std::make_shared<const IntPoly>(reduce_symmetric(H, {{"alpha", "gamma"}}, level_e_table(m)));
    std::lock_guard lock(mu_);
    return w_.emplace(std::make_pair(m, r), std::move(W)).first->second;
  }

  /// m_mu(beta_1..beta_n) written in delta_1..delta_n.
  std::shared_ptr<const IntPoly> monomial_in_e(const Partition& mu) {
    {
      std::lock_guard lock(mu_);
      if (auto it = m_.find(mu); it != m_.end()) return it->second;
    }
    const int n = int(mu.size());
    auto bt = beta_table(n);
    Partition perm = mu;
    std::sort(perm.begin(), perm.end());
    std::vector<IntPoly::Term> terms;
    do {
      terms.push_back({Monomial(perm.begin(), perm.end()), BigInt(1)});
    } while (std::next_permutation(perm.begin(), perm.end()));
    auto mpoly = IntPoly::from_terms(bt, std::move(terms));
    auto E = std::make_shared<const IntPoly>(reduce_symmetric(mpoly, {{"beta", "delta"}}, delta_table(n)));
    std::lock_guard lock(mu_);
    return m_.emplace(mu, std::move(E)).first->second;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<int, int>, std::shared_ptr<const IntPoly>> w_;
  std::map<Partition, std::shared_ptr<const IntPoly>> m_;
};

namespace detail {

/// Visits every partition mu with n parts in [0, max_part], nonincreasing,
/// carrying the prefix product of `w` over the parts chosen so far.
template <class P, class Leaf>
void visit_partitions(const std::vector<P>& w, Partition& mu, std::size_t j, std::size_t max_part, const P& prefix,
                      Leaf&& leaf) {
  if (j == mu.size()) {
    leaf(mu, prefix);
    return;
  }
  for (std::size_t k = 0; k <= max_part; ++k) {
    if (w[k].is_zero()) continue;
    mu[j] = Exponent(k);
    visit_partitions(w, mu, j + 1, k, P(prefix * w[k]), leaf);
  }
}

}  // namespace detail

/// Symbolic u_r by the staged construction; equal to ftsp_reduce(build_h).
inline EPoly reduce_level(int m, int n, int r, std::size_t term_budget = kDefaultTermBudget, long cap = kDegreeCap) {
  check_level_args(m, n, r, cap);
  auto& cache = LevelCache::global();
  auto W = cache.level_w(m, r);
  auto gx = gamma_x_table(m);
  const std::size_t t_index = std::size_t(m), x_index = std::size_t(m) + 1;
  const std::size_t max_part = W->degree_in(t_index);
  std::vector<std::vector<IntPoly::Term>> slice_terms(max_part + 1);
  for (const auto& t : W->terms()) {
    Monomial mono(gx->size(), 0);
    std::copy(t.exponents.begin(), t.exponents.begin() + m, mono.begin());
    mono[std::size_t(m)] = t.exponents[x_index];
    slice_terms[t.exponents[t_index]].push_back({std::move(mono), t.coeff});
  }
  std::vector<IntPoly> w;
  for (auto& terms : slice_terms) w.push_back(IntPoly::from_terms(gx, std::move(terms)));

  auto et = e_table(m, n);
  TermAccumulator<BigInt> acc(et);
  Partition mu(std::size_t(n), 0);
  detail::visit_partitions(w, mu, 0, max_part, IntPoly::constant(gx, BigInt(1)),
                           [&](const Partition& part, const IntPoly& coeff) {
                             auto M = cache.monomial_in_e(part);
                             Monomial e(et->size(), 0);
                             for (const auto& tc : coeff.terms()) {
                               std::copy(tc.exponents.begin(), tc.exponents.begin() + m, e.begin());
                               e[et->size() - 1] = tc.exponents[std::size_t(m)];
                               for (const auto& tm : M->terms()) {
                                 std::copy(tm.exponents.begin(), tm.exponents.end(), e.begin() + m);
                                 acc.add(e, tc.coeff * tm.coeff);
                               }
                             }
                             if (acc.size() > term_budget)
                               throw ResourceError("u_" + std::to_string(r) + " for m=" + std::to_string(m) +
                                                   ", n=" + std::to_string(n) + " exceeds the term budget of " +
                                                   std::to_string(term_budget));
                           });
  return {m, n, r, acc.finish()};
}

/// d_r = u_r(a, b, x) for numeric coefficient vectors, using the same staged
/// construction with gamma = a and delta = b substituted as early as possible.
inline RatUniPoly reduce_level_numeric(int r, std::span<const Rational> a, std::span<const Rational> b,
                                       long cap = kDegreeCap) {
  const int m = int(a.size()), n = int(b.size());
  check_level_args(m, n, r, cap);
  auto& cache = LevelCache::global();
  auto W = cache.level_w(m, r);
  const std::size_t t_index = std::size_t(m), x_index = std::size_t(m) + 1;
  const std::size_t max_part = W->degree_in(t_index);
  const std::size_t x_degree = W->degree_in(x_index);

  std::vector<std::vector<Rational>> apow{std::size_t(m)};
  for (int i = 0; i < m; ++i) {
    apow[std::size_t(i)].push_back(Rational(1));
    for (unsigned k = 1; k <= W->degree_in(std::size_t(i)); ++k)
      apow[std::size_t(i)].push_back(apow[std::size_t(i)].back() * a[std::size_t(i)]);
  }
  std::vector<std::vector<Rational>> dense(max_part + 1, std::vector<Rational>(x_degree + 1));
  for (const auto& t : W->terms()) {
    Rational v(t.coeff);
    for (int i = 0; i < m; ++i)
      if (t.exponents[std::size_t(i)]) v *= apow[std::size_t(i)][t.exponents[std::size_t(i)]];
    dense[t.exponents[t_index]][t.exponents[x_index]] += v;
  }
  std::vector<RatUniPoly> w;
  for (auto& d : dense) w.emplace_back(std::move(d));

  RatUniPoly sum;
  Partition mu(std::size_t(n), 0);
  detail::visit_partitions(w, mu, 0, max_part, make_uni({1}), [&](const Partition& part, const RatUniPoly& coeff) {
    Rational value = evaluate(*cache.monomial_in_e(part), b);
    if (!value.is_zero()) sum = sum + coeff.scaled(value);
  });
  return sum;
}

/// gamma_k -> a_k, delta_k -> b_k. All a_k and b_k must share one parameter
/// table. Throws ResourceError if a coefficient of x outgrows the budget.
inline DPoly build_d(const EPoly& u, const CharCoeffs& a, const CharCoeffs& b,
                     std::size_t term_budget = kDefaultTermBudget) {
  if (a.degree != u.m || b.degree != u.n)
    throw StructuralError("u_r expects " + std::to_string(u.m) + " and " + std::to_string(u.n) +
                          " coefficients, got " + std::to_string(a.degree) + " and " + std::to_string(b.degree));
  VarTablePtr params = a.coeffs.at(0).vars();
  for (const auto* list : {&a.coeffs, &b.coeffs})
    for (const auto& c : *list)
      if (!same_table(c.vars(), params))
        throw StructuralError("characteristic coefficients live over different parameter tables");

  std::vector<const RatPoly*> image;
  for (const auto& c : a.coeffs) image.push_back(&c);
  for (const auto& c : b.coeffs) image.push_back(&c);
  const std::size_t nsym = image.size();
  std::vector<std::vector<RatPoly>> powers(nsym);
  auto power = [&](std::size_t i, unsigned k) -> const RatPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(RatPoly::constant(params, Rational(1)));
    while (cache.size() <= k) cache.push_back(cache.back() * *image[i]);
    return cache[k];
  };

  const std::size_t x_index = nsym;
  std::vector<TermAccumulator<Rational>> slices;
  for (unsigned k = 0; k <= u.poly.degree_in(x_index); ++k) slices.emplace_back(params);
  for (const auto& t : u.poly.terms()) {
    RatPoly prod = RatPoly::constant(params, Rational(t.coeff));
    for (std::size_t i = 0; i < nsym && !prod.is_zero(); ++i)
      if (t.exponents[i]) prod *= power(i, t.exponents[i]);
    auto& acc = slices[t.exponents[x_index]];
    acc.add(prod);
    if (acc.size() > term_budget)
      throw ResourceError("expanded coefficient of d_" + std::to_string(u.r) + " exceeds the term budget of " +
                          std::to_string(term_budget));
  }
  std::vector<RatPoly> coeffs;
  for (auto& acc : slices) coeffs.push_back(acc.finish());
  return {u.r, UniPoly<RatPoly>(std::move(coeffs))};
}

}  // namespace eigconf
