#pragma once

// Eigenvalue configurations of symmetric pairs (F, G) and quantifier-free
// conditions for a prescribed configuration.
//
// With alpha_1 <= ... <= alpha_m the eigenvalues of F and alpha_{m+1} = +inf,
// c_t counts eigenvalues of G in the open interval (alpha_t, alpha_{t+1}).
// Eigenvalues of G left of alpha_1 are not counted anywhere.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eigconf/charpoly.hpp"
#include "eigconf/compound.hpp"
#include "eigconf/errors.hpp"
#include "eigconf/roots.hpp"
#include "eigconf/symmetric.hpp"
#include "eigconf/transform.hpp"

namespace eigconf {

struct ECVector {
  std::vector<long> c;

  long total() const {
    long s = 0;
    for (long v : c) s += v;
    return s;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i];
    os << ")";
    return os.str();
  }

  friend bool operator==(const ECVector&, const ECVector&) = default;
  friend std::ostream& operator<<(std::ostream& os, const ECVector& v) { return os << v.to_string(); }
};

/// Monic gcd of the two characteristic polynomials, or nullopt if generic.
inline std::optional<RatUniPoly> shared_factor(const RatUniPoly& f, const RatUniPoly& g) {
  if (genericity_check(f, g)) return std::nullopt;
  return common_factor(f, g);
}

inline void require_generic(const RatUniPoly& f, const RatUniPoly& g) {
  if (auto w = shared_factor(f, g)) throw GenericityError(w->to_string("z"), w->degree());
}

struct OracleReport {
  ECVector ec;
  long left_of_first = 0;          // eigenvalues of G below alpha_1
  std::vector<RealRoot> alpha;     // eigenvalues of F, ascending
  std::vector<RealRoot> beta;      // eigenvalues of G, ascending
};

/// EC read directly off isolated eigenvalues (independent of the theorem).
inline OracleReport ec_oracle_report(const SymMatrix& F, const SymMatrix& G) {
  const RatUniPoly f = eigen_poly_numeric(F), g = eigen_poly_numeric(G);
  require_generic(f, g);
  const long m = long(F.size()), n = long(G.size());
  OracleReport rep;
  rep.ec.c.assign(std::size_t(m), 0);
  long alphas_below = 0;
  for (const auto& root : isolate_real_roots(f * g)) {
    bool from_f = root.exact ? sign_at(f, root.lo) == 0 : sturm_count(f, root.lo, root.hi) > 0;
    if (from_f) {
      alphas_below += root.multiplicity;
      rep.alpha.push_back(root);
    } else {
      rep.beta.push_back(root);
      if (alphas_below == 0) rep.left_of_first += root.multiplicity;
      else rep.ec.c[std::size_t(alphas_below - 1)] += root.multiplicity;
    }
  }
  if (alphas_below != m || rep.ec.total() + rep.left_of_first != n)
    throw AssertionError("eigenvalue counts do not add up: found " + std::to_string(alphas_below) + " of " +
                         std::to_string(m) + " and " + std::to_string(rep.ec.total() + rep.left_of_first) +
                         " of " + std::to_string(n));
  return rep;
}

inline ECVector ec_oracle(const SymMatrix& F, const SymMatrix& G) { return ec_oracle_report(F, G).ec; }

/// EC from explicitly known eigenvalues; a shared value is a genericity error.
inline ECVector ec_from_eigenvalues(std::vector<Rational> alpha, std::vector<Rational> beta) {
  std::sort(alpha.begin(), alpha.end());
  for (const auto& b : beta)
    if (std::binary_search(alpha.begin(), alpha.end(), b))
      throw GenericityError("z - " + b.to_string(), 1);
  ECVector ec{std::vector<long>(alpha.size(), 0)};
  for (const auto& b : beta) {
    long below = long(std::lower_bound(alpha.begin(), alpha.end(), b) - alpha.begin());
    if (below > 0) ++ec.c[std::size_t(below - 1)];
  }
  return ec;
}

struct TheoremReport {
  std::vector<Rational> a, b;     // characteristic coefficients
  std::vector<RatUniPoly> d;      // d_1..d_m
  std::vector<long> y;            // sign variations of d_r
  ECVector ec;                    // C y
};

/// How d_r is obtained from the characteristic coefficients.
enum class LevelMethod {
  Auto,      // Staged for m <= kStagedMaxM, Compound above
  Staged,    // u_r from the symmetric reduction, then gamma = a, delta = b
  Compound,  // norm of the compound characteristic polynomial
};

inline constexpr int kStagedMaxM = 4;

/// Degree cap for d_r on the numeric path. The symbolic cap kDegreeCap bounds
/// expansion; numeric d_r of degree 80 (m = 6, n = 4) costs milliseconds.
inline constexpr long kNumericDegreeCap = 1024;

/// c = C y with y_r = v(d_r(a, b, x)).
inline TheoremReport ec_via_theorem_report(const SymMatrix& F, const SymMatrix& G, long cap = kNumericDegreeCap,
                                           LevelMethod method = LevelMethod::Auto) {
  require_generic(eigen_poly_numeric(F), eigen_poly_numeric(G));
  TheoremReport rep;
  rep.a = extract_coeffs(char_poly_numeric(F));
  rep.b = extract_coeffs(char_poly_numeric(G));
  const int m = int(F.size());
  const long n = long(G.size());
  if (method == LevelMethod::Auto) {
    long widest = 0;
    for (int r = 1; r <= m; ++r) widest = std::max(widest, binomial(m, r).get_si() * n);
    method = m <= kStagedMaxM && widest <= kDegreeCap ? LevelMethod::Staged : LevelMethod::Compound;
  }
  std::vector<Rational> yq;
  for (int r = 1; r <= m; ++r) {
    if (method == LevelMethod::Staged) {
      rep.d.push_back(reduce_level_numeric(r, rep.a, rep.b, cap));
    } else {
      check_level_args(m, int(n), r, cap);
      rep.d.push_back(level_poly_compound(r, eigen_poly_numeric(F), eigen_poly_numeric(G)));
    }
    rep.y.push_back(sign_variations(rep.d.back()));
    yq.emplace_back(rep.y.back());
  }
  for (const auto& v : invert_T(m).apply(yq)) {
    if (!v.is_integer() || v.sign() < 0)
      throw AssertionError("C*y is not a vector of non-negative integers: entry " + v.to_string());
    rep.ec.c.push_back(v.numerator().get_si());
  }
  if (rep.ec.total() > n)
    throw AssertionError("C*y counts " + std::to_string(rep.ec.total()) + " eigenvalues of G but G has " +
                         std::to_string(n));
  return rep;
}

inline ECVector ec_via_theorem(const SymMatrix& F, const SymMatrix& G, long cap = kNumericDegreeCap,
                               LevelMethod method = LevelMethod::Auto) {
  return ec_via_theorem_report(F, G, cap, method).ec;
}

// ---------------------------------------------------------------------------
// Conditions

/// Where the clause polynomials live.
enum class ConditionRing {
  CharCoeffs,  // d_r over a_1..a_m, b_1..b_n; the a_k, b_k are defined over the parameters
  Params,      // d_r fully expanded over the parameters
};

inline constexpr int kSignPatternMaxDegree = 8;

struct Clause {
  int r = 0;
  long target = 0;
  UniPoly<RatPoly> d;
  /// Coefficient sign vectors, highest power first, whose variation count
  /// equals the target. Present only when requested and deg d <= 8.
  std::optional<std::vector<std::string>> sign_patterns;
};

struct Condition {
  int m = 0, n = 0;
  VarTablePtr params;
  ECVector c;
  std::vector<long> y;
  bool unsatisfiable = false;
  ConditionRing ring = ConditionRing::CharCoeffs;
  VarTablePtr ring_vars;           // table the clause coefficients live over
  CharCoeffs a_defs, b_defs;       // a_k, b_k over params
  std::vector<Clause> clauses;

  /// "v(d_1) = 3 and v(d_2) = 7 and ..."
  std::string summary() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < clauses.size(); ++i)
      os << (i ? " and " : "") << "v(d_" << clauses[i].r << ") = " << clauses[i].target;
    return os.str();
  }
};

inline VarTablePtr char_coeff_table(int m, int n) {
  return make_table({{"a", indexed_names("a_", m)}, {"b", indexed_names("b_", n)}});
}

/// All sign strings over {+,0,-} of length deg+1 starting with '+' whose
/// variation count is `target`.
inline std::vector<std::string> sign_patterns(int degree, long target) {
  std::vector<std::string> out;
  if (degree > kSignPatternMaxDegree || degree < 0) return out;
  std::string s(std::size_t(degree) + 1, '+');
  std::vector<int> signs(std::size_t(degree) + 1, 1);
  long total = 1;
  for (int i = 0; i < degree; ++i) total *= 3;
  for (long code = 0; code < total; ++code) {
    long rest = code;
    for (int i = 1; i <= degree; ++i) {
      int digit = int(rest % 3);
      rest /= 3;
      signs[std::size_t(i)] = digit - 1;
      s[std::size_t(i)] = "-0+"[digit];
    }
    if (sign_variations(std::span<const int>(signs)) == target) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct ConditionOptions {
  bool expand = false;
  bool with_sign_patterns = false;
  long cap = kDegreeCap;
  std::size_t term_budget = kDefaultTermBudget;
};

/// Algorithm: y = T_m c, then one clause v(d_r) = y_r per level. A target
/// that no pair of matrices can realize is kept and flagged.
inline Condition condition_for_ec(const SymMatrix& F, const SymMatrix& G, const ECVector& c,
                                  const ConditionOptions& opt = {}) {
  const int m = int(F.size()), n = int(G.size());
  if (int(c.c.size()) != m)
    throw ValidationError("target configuration has " + std::to_string(c.c.size()) + " entries, expected m = " +
                          std::to_string(m));
  if (!same_table(F.params(), G.params())) throw StructuralError("F and G must share one parameter list");
  for (int r = 1; r <= m; ++r) check_level_args(m, n, r, opt.cap);

  Condition P;
  P.m = m;
  P.n = n;
  P.params = F.params();
  P.c = c;
  P.y = transform_counts(build_T_closed(m), c.c);
  for (long v : c.c) P.unsatisfiable = P.unsatisfiable || v < 0;
  P.unsatisfiable = P.unsatisfiable || c.total() > n;
  for (int r = 1; r <= m; ++r) {
    long y = P.y[std::size_t(r - 1)];
    P.unsatisfiable = P.unsatisfiable || y < 0 || y > binomial(m, r) * n;
  }
  P.a_defs = extract_coeffs(char_poly(F));
  P.b_defs = extract_coeffs(char_poly(G));
  P.ring = opt.expand ? ConditionRing::Params : ConditionRing::CharCoeffs;
  P.ring_vars = opt.expand ? P.params : char_coeff_table(m, n);
  CharCoeffs a = opt.expand ? P.a_defs : CharCoeffs::symbolic(P.ring_vars, "a");
  CharCoeffs b = opt.expand ? P.b_defs : CharCoeffs::symbolic(P.ring_vars, "b");
  for (int r = 1; r <= m; ++r) {
    Clause cl;
    cl.r = r;
    cl.target = P.y[std::size_t(r - 1)];
    cl.d = build_d(reduce_level(m, n, r, opt.term_budget, opt.cap), a, b, opt.term_budget).poly;
    if (opt.with_sign_patterns && cl.d.degree() <= kSignPatternMaxDegree)
      cl.sign_patterns = sign_patterns(cl.d.degree(), cl.target);
    P.clauses.push_back(std::move(cl));
  }
  return P;
}

enum class Outcome { True, False, NonGeneric };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::True: return "true";
    case Outcome::False: return "false";
    case Outcome::NonGeneric: return "non-generic";
  }
  return "?";
}

struct Evaluation {
  Outcome outcome = Outcome::False;
  std::vector<long> variations;     // v(d_r) at the point, per clause
  std::optional<RatUniPoly> witness;  // shared factor when non-generic
};

/// Coordinates of `point` in the order of `table`; every variable must be
/// bound and no unknown names are accepted.
inline std::vector<Rational> point_for(const VarTablePtr& table, const std::map<std::string, Rational>& point) {
  for (const auto& [name, value] : point)
    if (!table->find(name)) throw StructuralError("unknown parameter '" + name + "'");
  std::vector<Rational> out;
  for (const auto& name : table->names()) {
    auto it = point.find(name);
    if (it == point.end()) throw StructuralError("parameter '" + name + "' is not bound");
    out.push_back(it->second);
  }
  return out;
}

/// z^k - c_1 z^{k-1} + c_2 z^{k-2} - ...: the polynomial whose roots are the
/// eigenvalues, given the coefficients of det(zI + M).
inline RatUniPoly eigen_poly_from_coeffs(const std::vector<Rational>& c) {
  const std::size_t k = c.size();
  std::vector<Rational> coeffs(k + 1);
  coeffs[k] = 1;
  for (std::size_t i = 1; i <= k; ++i) coeffs[k - i] = i % 2 ? -c[i - 1] : c[i - 1];
  return RatUniPoly(std::move(coeffs));
}

inline Evaluation evaluate_condition(const Condition& P, const std::map<std::string, Rational>& point) {
  const auto p = point_for(P.params, point);
  std::vector<Rational> a, b;
  for (const auto& c : P.a_defs.coeffs) a.push_back(evaluate(c, p));
  for (const auto& c : P.b_defs.coeffs) b.push_back(evaluate(c, p));

  Evaluation ev;
  ev.witness = shared_factor(eigen_poly_from_coeffs(a), eigen_poly_from_coeffs(b));

  std::vector<Rational> ring_point;
  if (P.ring == ConditionRing::CharCoeffs) {
    ring_point = a;
    ring_point.insert(ring_point.end(), b.begin(), b.end());
  } else {
    ring_point = p;
  }
  bool all = true;
  for (const auto& cl : P.clauses) {
    std::vector<Rational> values;
    for (const auto& coeff : cl.d.coeffs()) values.push_back(evaluate(coeff, ring_point));
    long v = sign_variations(values);
    ev.variations.push_back(v);
    all = all && v == cl.target;
  }
  ev.outcome = ev.witness ? Outcome::NonGeneric : all ? Outcome::True : Outcome::False;
  return ev;
}

}  // namespace eigconf
