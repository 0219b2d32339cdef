#include <gtest/gtest.h>

#include <random>

#include "eigconf/symmetric.hpp"

using namespace eigconf;

namespace {

// h evaluated at numeric alpha, beta, leaving x free.
RatUniPoly specialize_x(const IntPoly& p, const std::vector<Rational>& alpha, const std::vector<Rational>& beta) {
  const std::size_t x = alpha.size() + beta.size();
  std::vector<Rational> point(alpha);
  point.insert(point.end(), beta.begin(), beta.end());
  point.emplace_back(0);
  std::vector<Rational> coeffs(p.degree_in(x) + 1);
  for (const auto& t : p.terms()) {
    Monomial strip = t.exponents;
    strip[x] = 0;
    coeffs[t.exponents[x]] += evaluate(IntPoly::from_terms(p.vars(), {{strip, t.coeff}}), point);
  }
  return RatUniPoly(coeffs);
}

// prod_I prod_j (x + prod_{i in I}(alpha_i - beta_j)) over explicit numbers.
RatUniPoly direct_h(const std::vector<Rational>& alpha, const std::vector<Rational>& beta, int r) {
  RatUniPoly acc = make_uni({1});
  const int m = int(alpha.size());
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) != r) continue;
    for (const auto& b : beta) {
      Rational prod(1);
      for (int i = 0; i < m; ++i)
        if (mask & (1u << i)) prod *= alpha[std::size_t(i)] - b;
      acc = acc * RatUniPoly(std::vector<Rational>{prod, Rational(1)});
    }
  }
  return acc;
}

std::vector<Rational> elementary_values(const std::vector<Rational>& v) {
  std::vector<Rational> e(v.size() + 1);
  e[0] = 1;
  for (const auto& x : v)
    for (std::size_t k = v.size(); k >= 1; --k) e[k] += e[k - 1] * x;
  return {e.begin() + 1, e.end()};
}

IntPoly sym(const VarTablePtr& t, const char* name) { return IntPoly::variable(t, name); }
IntPoly num(const VarTablePtr& t, long v) { return IntPoly::constant(t, BigInt(v)); }

}  // namespace

TEST(BuildH, RunningExampleSpecializations) {
  std::vector<Rational> alpha{4, 4}, beta{2, 2, 8};
  auto h1 = build_h(2, 3, 1);
  auto h2 = build_h(2, 3, 2);
  EXPECT_EQ(specialize_x(h1.poly, alpha, beta), from_roots(std::vector<Rational>{-2, -2, -2, -2, 4, 4}));
  EXPECT_EQ(specialize_x(h2.poly, alpha, beta), from_roots(std::vector<Rational>{-4, -4, -16}));
}

TEST(BuildH, SingleFactor) {
  auto h = build_h(1, 1, 1);
  auto t = h.poly.vars();
  EXPECT_EQ(h.poly, sym(t, "x") + sym(t, "alpha_1") - sym(t, "beta_1"));
}

TEST(BuildH, DegreeCapAndArguments) {
  EXPECT_THROW(build_h(8, 4, 4), ResourceError);
  EXPECT_THROW(build_h(2, 1, 3), DomainError);
  EXPECT_THROW(build_h(2, 0, 1), DomainError);
  try {
    build_h(8, 4, 4);
  } catch (const ResourceError& e) {
    EXPECT_NE(std::string(e.what()).find("280"), std::string::npos);
  }
}

TEST(BuildH, DegreeInXAndMonic) {
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n)
      for (int r = 1; r <= m; ++r) {
        auto h = build_h(m, n, r);
        const std::size_t x = std::size_t(m + n);
        unsigned deg = unsigned(binomial(m, r).get_ui()) * unsigned(n);
        EXPECT_EQ(h.poly.degree_in(x), deg);
        Monomial lead(h.poly.nvars(), 0);
        lead[x] = Exponent(deg);
        EXPECT_EQ(h.poly.coefficient(lead), 1);
      }
}

TEST(Ftsp, FirstElementary) {
  auto t = h_table(2, 1);
  auto u = ftsp_reduce(convert_coefficients<Rational>(sym(t, "alpha_1") + sym(t, "alpha_2")));
  EXPECT_EQ(u, RatPoly::variable(e_table(2, 1), "gamma_1"));
}

TEST(Ftsp, TwoByOneLevelOne) {
  auto u = ftsp_reduce(build_h(2, 1, 1));
  auto e = e_table(2, 1);
  auto x = sym(e, "x"), g1 = sym(e, "gamma_1"), g2 = sym(e, "gamma_2"), d1 = sym(e, "delta_1");
  EXPECT_EQ(u.poly, x * x + (g1 - d1.scaled(BigInt(2))) * x + (g2 - g1 * d1 + d1 * d1));
}

TEST(Ftsp, TwoByTwoLevelTwoExplicit) {
  auto u = in_char_symbols(ftsp_reduce(build_h(2, 2, 2)));
  auto t = d_table(2, 2);
  auto x = sym(t, "x"), a1 = sym(t, "a_1"), a2 = sym(t, "a_2"), b1 = sym(t, "b_1"), b2 = sym(t, "b_2");
  auto expected = x * x + (num(t, -1) * a1 * b1 + b1 * b1 + a2.scaled(BigInt(2)) - b2.scaled(BigInt(2))) * x +
                  a1 * a1 * b2 - a1 * a2 * b1 - a1 * b1 * b2 + a2 * b1 * b1 + a2 * a2 - a2 * b2.scaled(BigInt(2)) +
                  b2 * b2;
  EXPECT_EQ(u, expected);
}

TEST(Ftsp, RejectsNonSymmetricInput) {
  auto t = h_table(3, 2);
  auto p = sym(t, "alpha_1") * sym(t, "alpha_1") + sym(t, "alpha_2") + sym(t, "beta_1");
  try {
    ftsp_reduce(p);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("alpha_1 <-> alpha_2"), std::string::npos) << e.what();
  }
  auto q = sym(t, "alpha_1") + sym(t, "alpha_2") + sym(t, "alpha_3") + sym(t, "beta_2");
  try {
    ftsp_reduce(q);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("beta_1 <-> beta_2"), std::string::npos) << e.what();
  }
}

TEST(Ftsp, MonomialToElementary) {
  auto& cache = LevelCache::global();
  auto d = delta_table(2);
  auto d1 = sym(d, "delta_1"), d2 = sym(d, "delta_2");
  EXPECT_EQ(*cache.monomial_in_e({2, 0}), d1 * d1 - d2.scaled(BigInt(2)));
  EXPECT_EQ(*cache.monomial_in_e({1, 1}), d2);
  auto d3 = delta_table(3);
  auto e1 = sym(d3, "delta_1"), e2 = sym(d3, "delta_2"), e3 = sym(d3, "delta_3");
  // power sum p_3 = e1^3 - 3 e1 e2 + 3 e3
  EXPECT_EQ(*cache.monomial_in_e({3, 0, 0}), e1.pow(3) - (e1 * e2).scaled(BigInt(3)) + e3.scaled(BigInt(3)));
}

TEST(Ftsp, RoundTripAndIntegralityUpToThree) {
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n)
      for (int r = 1; r <= m; ++r) {
        auto h = build_h(m, n, r);
        auto u = ftsp_reduce(h);
        EXPECT_EQ(back_substitute(u), h.poly) << m << "," << n << "," << r;
        // the same reduction over the rationals lands on integers
        auto uq = ftsp_reduce(convert_coefficients<Rational>(h.poly));
        for (const auto& t : uq.terms()) EXPECT_TRUE(t.coeff.is_integer());
        EXPECT_EQ(uq, convert_coefficients<Rational>(u.poly));
      }
}

TEST(Ftsp, StagedBuilderMatchesDirectReduction) {
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n)
      for (int r = 1; r <= m; ++r)
        EXPECT_EQ(reduce_level(m, n, r).poly, ftsp_reduce(build_h(m, n, r)).poly) << m << "," << n << "," << r;
}

TEST(Ftsp, LeadingTermDescends) {
  auto h = build_h(3, 2, 2);
  std::vector<Monomial> leads;
  ftsp_reduce(h, [&](std::size_t, const Monomial& lead) { leads.push_back(lead); });
  ASSERT_FALSE(leads.empty());
  for (std::size_t i = 1; i < leads.size(); ++i) EXPECT_LT(compare_lex(leads[i], leads[i - 1]), 0);
}

TEST(Ftsp, TextbookReducerKeepsRemaindersSymmetric) {
  for (auto [m, n, r] : {std::tuple{2, 2, 1}, std::tuple{2, 2, 2}, std::tuple{3, 1, 2}, std::tuple{2, 3, 1}}) {
    auto h = build_h(m, n, r);
    std::size_t steps = 0;
    auto u = reduce_symmetric_textbook<BigInt>(h.poly, {{"alpha", "gamma"}, {"beta", "delta"}}, e_table(m, n),
                                               [&](const IntPoly& rem) {
                                                 ++steps;
                                                 EXPECT_NO_THROW(check_block_symmetry(rem, "alpha"));
                                                 EXPECT_NO_THROW(check_block_symmetry(rem, "beta"));
                                               });
    EXPECT_GT(steps, 0u);
    EXPECT_EQ(u, ftsp_reduce(h).poly);
  }
}

TEST(BuildD, NumericAgainstEigenvalueProduct) {
  // F = diag(1,3), G = diag(0,2): a = (4,3), b = (2,0)
  auto u = ftsp_reduce(build_h(2, 2, 2));
  auto d = build_d(u, CharCoeffs::numeric({4, 3}), CharCoeffs::numeric({2, 0}));
  std::vector<Rational> c;
  for (int k = 0; k <= d.poly.degree(); ++k) c.push_back(d.poly.coeff(std::size_t(k)).constant_value());
  EXPECT_EQ(RatUniPoly(c), direct_h({1, 3}, {0, 2}, 2));
}

TEST(BuildD, RunningExampleLevelOne) {
  auto u = reduce_level(2, 3, 1);
  auto d = build_d(u, CharCoeffs::numeric({8, 16}), CharCoeffs::numeric({12, 36, 32}));
  std::vector<Rational> c;
  for (int k = 0; k <= d.poly.degree(); ++k) c.push_back(d.poly.coeff(std::size_t(k)).constant_value());
  EXPECT_EQ(RatUniPoly(c), from_roots(std::vector<Rational>{-2, -2, -2, -2, 4, 4}));
}

TEST(BuildD, SingleFactorSymbolic) {
  auto u = reduce_level(1, 1, 1);
  auto params = make_table({{"params", {"p", "q"}}});
  CharCoeffs a{1, {RatPoly::variable(params, "p")}}, b{1, {RatPoly::variable(params, "q")}};
  auto d = build_d(u, a, b);
  ASSERT_EQ(d.poly.degree(), 1);
  EXPECT_EQ(d.poly.coeff(1), RatPoly::constant(params, Rational(1)));
  EXPECT_EQ(d.poly.coeff(0), RatPoly::variable(params, "p") - RatPoly::variable(params, "q"));
}

TEST(BuildD, ArityMismatch) {
  auto u = reduce_level(2, 2, 1);
  EXPECT_THROW(build_d(u, CharCoeffs::numeric({1}), CharCoeffs::numeric({1, 2})), StructuralError);
}

TEST(BuildD, NumericStagedPathMatchesEigenvalueProduct) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> v(-6, 6), den(1, 3);
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 3; ++n) {
      std::vector<Rational> alpha, beta;
      for (int i = 0; i < m; ++i) alpha.push_back(Rational(BigInt(v(rng)), BigInt(den(rng))));
      for (int j = 0; j < n; ++j) beta.push_back(Rational(BigInt(v(rng)), BigInt(den(rng))));
      auto a = elementary_values(alpha), b = elementary_values(beta);
      for (int r = 1; r <= m; ++r) {
        auto d = reduce_level_numeric(r, a, b);
        EXPECT_EQ(d, direct_h(alpha, beta, r)) << m << "," << n << "," << r;
        EXPECT_EQ(d.degree(), int(binomial(m, r).get_si()) * n);
        EXPECT_EQ(d.leading(), Rational(1));
      }
    }
}
