#include <gtest/gtest.h>

#include <random>

#include "eigconf/multi_poly.hpp"
#include "eigconf/rational.hpp"
#include "eigconf/uni_poly.hpp"

using namespace eigconf;

namespace {

VarTablePtr xab() { return make_table({{"alpha", {"a1", "a2"}}, {"beta", {"b1"}}, {"x", {"x"}}}); }

RatPoly var(const VarTablePtr& t, const char* n) { return RatPoly::variable(t, n); }
RatPoly cst(const VarTablePtr& t, long v) { return RatPoly::constant(t, Rational(v)); }

// Dense coefficient list of a polynomial in the single variable x, built by
// repeated distribution of explicit linear factors.
std::vector<long> expand_linear_factors(const std::vector<long>& roots) {
  std::vector<long> c{1};
  for (long r : roots) {
    std::vector<long> next(c.size() + 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  return c;
}

RatPoly random_poly(std::mt19937& rng, const VarTablePtr& t) {
  std::uniform_int_distribution<int> coef(-5, 5), exp(0, 2), count(0, 4);
  TermAccumulator<Rational> acc(t);
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Monomial m(t->size());
    for (auto& e : m) e = Exponent(exp(rng));
    acc.add(m, Rational(coef(rng), 1 + (i % 3)));
  }
  return acc.finish();
}

}  // namespace

TEST(Rational, LowestTermsAndSign) {
  Rational r(BigInt(6), BigInt(-8));
  EXPECT_EQ(r.numerator(), -3);
  EXPECT_EQ(r.denominator(), 4);
  EXPECT_EQ(r.to_string(), "-3/4");
  EXPECT_EQ(Rational::parse("-0.125"), Rational(BigInt(-1), BigInt(8)));
  EXPECT_EQ(Rational::parse("10/4"), Rational(BigInt(5), BigInt(2)));
  EXPECT_THROW(Rational(BigInt(1), BigInt(0)), DomainError);
  EXPECT_THROW(Rational(1) / Rational(0), DomainError);
  EXPECT_THROW(Rational::parse("1/x"), ParseError);
}

TEST(MultiPoly, AddCancels) {
  auto t = xab();
  auto x = var(t, "x");
  EXPECT_EQ((x + cst(t, 1)) + (x - cst(t, 1)), x.scaled(Rational(2)));
  auto ab = var(t, "a1") * var(t, "b1");
  EXPECT_EQ(ab + RatPoly(t), ab);
}

TEST(MultiPoly, SumOfPowersMatchesDistribution) {
  auto t = xab();
  auto x = var(t, "x");
  auto p = (x + cst(t, 2)).pow(4) + (x - cst(t, 4)).pow(2);
  auto a = expand_linear_factors({-2, -2, -2, -2});
  auto b = expand_linear_factors({4, 4});
  for (std::size_t k = 0; k < a.size(); ++k) {
    long expected = a[k] + (k < b.size() ? b[k] : 0);
    Monomial m(t->size(), 0);
    m[t->index_of("x")] = Exponent(k);
    EXPECT_EQ(p.coefficient(m), Rational(expected)) << "x^" << k;
  }
}

TEST(MultiPoly, Products) {
  auto t = xab();
  auto x = var(t, "x");
  EXPECT_EQ((x + cst(t, 2)) * (x - cst(t, 4)), x * x - x.scaled(Rational(2)) - cst(t, 8));
  auto p = x * x + var(t, "a1");
  EXPECT_EQ(p * cst(t, 1), p);

  auto a1 = var(t, "a1"), a2 = var(t, "a2"), b1 = var(t, "b1");
  auto lhs = (x + a1 - b1) * (x + a2 - b1);
  auto rhs = x * x + (a1 + a2 - b1.scaled(Rational(2))) * x + (a1 * a2 - a1 * b1 - a2 * b1 + b1 * b1);
  EXPECT_EQ(lhs, rhs);
  EXPECT_EQ(lhs.total_degree(), 2u);
}

TEST(MultiPoly, MismatchedTablesAreStructuralErrors) {
  auto t1 = xab();
  auto t2 = make_table({{"x", {"x"}}});
  EXPECT_THROW(var(t1, "x") + var(t2, "x"), StructuralError);
  EXPECT_THROW(var(t1, "x") * var(t2, "x"), StructuralError);
}

TEST(MultiPoly, Substitute) {
  auto src = make_table({{"gamma", {"g1"}}});
  auto dst = make_table({{"alpha", {"a1", "a2"}}});
  auto g1 = RatPoly::variable(src, "g1");
  auto s = RatPoly::variable(dst, "a1") + RatPoly::variable(dst, "a2");
  EXPECT_EQ(substitute(g1 * g1, std::map<std::string, RatPoly>{{"g1", s}}, dst), s * s);

  auto t = make_table({{"a", {"a_1"}}, {"b", {"b_1"}}, {"x", {"x"}}});
  auto lin = RatPoly::variable(t, "x") + RatPoly::variable(t, "a_1") - RatPoly::variable(t, "b_1");
  auto empty = make_table({{"none", {}}});
  std::map<std::string, RatPoly> bind{{"a_1", RatPoly::constant(empty, Rational(8))},
                                      {"b_1", RatPoly::constant(empty, Rational(2))},
                                      {"x", RatPoly::constant(empty, Rational(1))}};
  EXPECT_EQ(substitute(lin, bind, empty), RatPoly::constant(empty, Rational(7)));

  std::map<std::string, RatPoly> bad{{"nope", RatPoly::constant(empty, Rational(1))}};
  EXPECT_THROW(substitute(lin, bad, empty), StructuralError);
}

TEST(MultiPoly, RingAxiomsOnRandomPolynomials) {
  std::mt19937 rng(7);
  auto t = xab();
  for (int i = 0; i < 200; ++i) {
    auto p = random_poly(rng, t), q = random_poly(rng, t), r = random_poly(rng, t);
    EXPECT_EQ(p + q, q + p);
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ((p + q) + r, p + (q + r));
    EXPECT_EQ((p * q) * r, p * (q * r));
    EXPECT_EQ(p * (q + r), p * q + p * r);
    EXPECT_TRUE((p - p).terms().empty());
  }
}

TEST(MultiPoly, SubstitutionComposes) {
  std::mt19937 rng(11);
  auto t = xab();
  for (int i = 0; i < 50; ++i) {
    auto p = random_poly(rng, t);
    std::map<std::string, RatPoly> sigma{{"a1", random_poly(rng, t)}, {"x", random_poly(rng, t)}};
    std::map<std::string, RatPoly> tau{{"a2", random_poly(rng, t)}, {"b1", random_poly(rng, t)}};
    std::map<std::string, RatPoly> composed = tau;
    for (const auto& [name, img] : sigma) composed[name] = substitute(img, tau, t);
    EXPECT_EQ(substitute(substitute(p, sigma, t), tau, t), substitute(p, composed, t));
  }
}

TEST(MultiPoly, EvaluateAgreesWithSubstitution) {
  std::mt19937 rng(3);
  auto t = xab();
  auto empty = make_table({{"none", {}}});
  for (int i = 0; i < 30; ++i) {
    auto p = random_poly(rng, t);
    std::vector<Rational> pt{Rational(1, 2), Rational(-3), Rational(2, 3), Rational(5)};
    std::map<std::string, RatPoly> bind;
    for (std::size_t k = 0; k < pt.size(); ++k) bind[t->name(k)] = RatPoly::constant(empty, pt[k]);
    EXPECT_EQ(RatPoly::constant(empty, evaluate(p, pt)), substitute(p, bind, empty));
  }
}

TEST(UniGcd, Examples) {
  auto f = make_uni({16, -8, 1});
  auto g = from_roots(std::vector<Rational>{2, 2, 8});
  EXPECT_EQ(gcd(f, g), make_uni({1}));
  EXPECT_EQ(gcd(make_uni({-1, 1}), make_uni({-1, 1})), make_uni({-1, 1}));
  auto p = from_roots(std::vector<Rational>{1, 2}), q = from_roots(std::vector<Rational>{2, 3});
  EXPECT_EQ(gcd(p, q), make_uni({-2, 1}));
  EXPECT_THROW(gcd(RatUniPoly(), RatUniPoly()), DomainError);
}

TEST(UniGcd, DividesBothInputs) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> root(-4, 4), deg(1, 5);
  for (int i = 0; i < 100; ++i) {
    std::vector<Rational> ra, rb;
    for (int k = deg(rng); k > 0; --k) ra.emplace_back(root(rng));
    for (int k = deg(rng); k > 0; --k) rb.emplace_back(root(rng));
    auto a = from_roots(ra).scaled(Rational(3, 7)), b = from_roots(rb);
    auto d = gcd(a, b);
    EXPECT_TRUE(divmod(a, d).remainder.is_zero());
    EXPECT_TRUE(divmod(b, d).remainder.is_zero());
  }
}

TEST(UniPoly, SquarefreeDecomposition) {
  auto p = from_roots(std::vector<Rational>{2, 2, 8, 8, 8, -1});
  auto parts = squarefree_decomposition(p.scaled(Rational(5)));
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0], std::make_pair(make_uni({1, 1}), 1));
  EXPECT_EQ(parts[1], std::make_pair(make_uni({-2, 1}), 2));
  EXPECT_EQ(parts[2], std::make_pair(make_uni({-8, 1}), 3));
  EXPECT_EQ(squarefree_part(p), from_roots(std::vector<Rational>{2, 8, -1}));
}
