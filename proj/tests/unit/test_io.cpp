#include <gtest/gtest.h>

#include "eigconf/condition_file.hpp"
#include "eigconf/expression.hpp"
#include "eigconf/matrix_file.hpp"

using namespace eigconf;

namespace {

VarTablePtr pq() { return make_table({{"params", {"p", "q", "s_1"}}}); }

RatPoly var(const char* n) { return RatPoly::variable(pq(), n); }

RatPoly num(Rational c) { return RatPoly::constant(pq(), c); }

}  // namespace

TEST(Expression, Precedence) {
  auto t = pq();
  EXPECT_EQ(parse_expression("1 + 2*3", t), num(7));
  EXPECT_EQ(parse_expression("-2^2", t), num(-4));
  EXPECT_EQ(parse_expression("(1 - 3)^3", t), num(-8));
  EXPECT_EQ(parse_expression("7 - 2 - 1", t), num(4));
  EXPECT_EQ(parse_expression("12/3/2", t), num(2));
  EXPECT_EQ(parse_expression("3/4", t), num(Rational(3, 4)));
  EXPECT_EQ(parse_expression("-0.25", t), num(Rational(-1, 4)));
}

TEST(Expression, Polynomials) {
  auto t = pq();
  EXPECT_EQ(parse_expression("2p q - p^2/2 + s_1", t),
            num(2) * var("p") * var("q") - var("p").pow(2).scaled(Rational(1, 2)) + var("s_1"));
  EXPECT_EQ(parse_expression("(p+1)(p-1)", t), var("p") * var("p") - num(1));
  EXPECT_EQ(parse_expression("3(q)", t), var("q").scaled(Rational(3)));
  EXPECT_EQ(parse_expression(" p ^ 0 ", t), num(1));
}

TEST(Expression, Errors) {
  auto t = pq();
  for (const char* bad : {"x", "p +", "(p", "p)", "p / q", "1/0", "p^-1", "p^q", "", "2 ** 3", "1.2.3", "p $"})
    EXPECT_THROW(parse_expression(bad, t), ParseError) << bad;
  try {
    parse_expression("p + zz", t);
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("'zz'"), std::string::npos);
  }
}

TEST(MatrixFile, TextForm) {
  auto mp = parse_matrix_text(
      "# running example\n"
      "params: p, q\n"
      "F:\n"
      "p, 1/2\n"
      "1/2, p + q   # trailing comment\n"
      "\n"
      "G:\n"
      "2 0 0\n0 2 0\n0 0 8\n");
  EXPECT_EQ(mp.params->names(), (std::vector<std::string>{"p", "q"}));
  ASSERT_EQ(mp.F.size(), 2u);
  EXPECT_EQ(mp.F.entry(1, 1), RatPoly::variable(mp.params, "p") + RatPoly::variable(mp.params, "q"));
  EXPECT_EQ(mp.F.entry(0, 1).constant_value(), Rational(1, 2));
  EXPECT_EQ(mp.G.size(), 3u);
  EXPECT_EQ(mp.G.entry(2, 2).constant_value(), Rational(8));
}

TEST(MatrixFile, NoParamsAndJsonAgree) {
  auto text = parse_matrix_document("F:\n4 0\n0 4\nG:\n2 0 0\n0 2 0\n0 0 8\n");
  auto js = parse_matrix_document(R"({"F": [[4, 0], [0, 4]], "G": [["2", 0, 0], [0, 2, 0], [0, 0, "8"]]})");
  EXPECT_TRUE(text.F.is_numeric());
  EXPECT_EQ(text.F.values(), js.F.values());
  EXPECT_EQ(text.G.values(), js.G.values());
  EXPECT_EQ(text.params->size(), 0u);
  auto pj = parse_matrix_json(R"({"params": ["p"], "F": [["p"]], "G": [["-p"]]})");
  EXPECT_EQ(pj.G.entry(0, 0), -RatPoly::variable(pj.params, "p"));
}

TEST(MatrixFile, Rejections) {
  EXPECT_THROW(parse_matrix_text("F:\n1 2\n3 4\nG:\n1\n"), ValidationError);
  EXPECT_THROW(parse_matrix_text("F:\n1 2\n2\nG:\n1\n"), ValidationError);
  EXPECT_THROW(parse_matrix_text("F:\n1\n"), ParseError);
  EXPECT_THROW(parse_matrix_text("1\nF:\n1\nG:\n1\n"), ParseError);
  EXPECT_THROW(parse_matrix_text("F:\nG:\n1\n"), ParseError);
  EXPECT_THROW(parse_matrix_text("params: p, p\nF:\np\nG:\n1\n"), ParseError);
  EXPECT_THROW(parse_matrix_text("params: 2x\nF:\n1\nG:\n1\n"), ParseError);
  EXPECT_THROW(parse_matrix_text("F:\nq\nG:\n1\n"), ParseError);
  EXPECT_THROW(parse_matrix_json(R"({"F": [[1]], "G": [[1.5]]})"), ParseError);
  EXPECT_THROW(parse_matrix_json(R"({"F": [[1]], "G": [[1]], "H": 1})"), ParseError);
  EXPECT_THROW(parse_matrix_json(R"({"F": [[1]]})"), ParseError);
  EXPECT_THROW(parse_matrix_json("{"), ParseError);
}

TEST(ConditionFile, RoundTripIsByteIdentical) {
  auto mp = parse_matrix_text("params: p, q, s\nF:\np q\nq 1/3\nG:\ns\n");
  for (bool expand : {false, true})
    for (bool patterns : {false, true})
      for (std::vector<long> c : {std::vector<long>{0, 1}, std::vector<long>{1, 0}, std::vector<long>{2, 0}}) {
        ConditionOptions opt;
        opt.expand = expand;
        opt.with_sign_patterns = patterns;
        auto P = condition_for_ec(mp.F, mp.G, ECVector{c}, opt);
        auto once = serialize_condition(P);
        auto Q = parse_condition(once);
        EXPECT_EQ(serialize_condition(Q), once);
        EXPECT_EQ(Q.y, P.y);
        EXPECT_EQ(Q.unsatisfiable, P.unsatisfiable);
        ASSERT_EQ(Q.clauses.size(), P.clauses.size());
        for (std::size_t i = 0; i < P.clauses.size(); ++i) EXPECT_EQ(Q.clauses[i].d, P.clauses[i].d);
        std::map<std::string, Rational> pt{{"p", 1}, {"q", Rational(1, 2)}, {"s", -3}};
        EXPECT_EQ(evaluate_condition(Q, pt).variations, evaluate_condition(P, pt).variations);
      }
}

TEST(ConditionFile, Layout) {
  auto mp = parse_matrix_text("params: p, q\nF:\np\nG:\nq\n");
  auto text = serialize_condition(condition_for_ec(mp.F, mp.G, ECVector{{1}}));
  EXPECT_EQ(text,
            "{\n"
            "  \"format\": \"eigconf-condition\",\n"
            "  \"version\": 1,\n"
            "  \"m\": 1,\n"
            "  \"n\": 1,\n"
            "  \"params\": [\"p\",\"q\"],\n"
            "  \"target\": [1],\n"
            "  \"y\": [1],\n"
            "  \"unsatisfiable\": false,\n"
            "  \"ring\": \"char_coeffs\",\n"
            "  \"ring_variables\": [\"a_1\",\"b_1\"],\n"
            "  \"char_coeffs\": {\"a\":[[[\"1\",[1,0]]]],\"b\":[[[\"1\",[0,1]]]]},\n"
            "  \"clauses\": [{\"d\":[[[\"1\",[1,0]],[\"-1\",[0,1]]],[[\"1\",[0,0]]]],\"degree\":1,\"r\":1,\"target\":1}]\n"
            "}\n");
}

TEST(ConditionFile, Rejections) {
  auto mp = parse_matrix_text("params: p, q\nF:\np\nG:\nq\n");
  auto good = serialize_condition(condition_for_ec(mp.F, mp.G, ECVector{{1}}));
  auto broken = [&](const std::string& from, const std::string& to) {
    auto s = good;
    auto at = s.find(from);
    EXPECT_NE(at, std::string::npos) << from;
    return s.replace(at, from.size(), to);
  };
  EXPECT_NO_THROW(parse_condition(good));
  EXPECT_THROW(parse_condition(broken("eigconf-condition", "other")), ParseError);
  EXPECT_THROW(parse_condition(broken("\"version\": 1", "\"version\": 9")), ParseError);
  EXPECT_THROW(parse_condition(broken("\"ring\": \"char_coeffs\"", "\"ring\": \"ideal\"")), ParseError);
  EXPECT_THROW(parse_condition(broken("[\"a_1\",\"b_1\"]", "[\"a_1\",\"b_2\"]")), ParseError);
  EXPECT_THROW(parse_condition(broken("\"degree\":1", "\"degree\":2")), ParseError);
  EXPECT_THROW(parse_condition(broken("[\"1\",[1,0]]", "[\"1\",[1]]")), ParseError);
  EXPECT_THROW(parse_condition(broken("\"target\": [1]", "\"target\": [1,0]")), ParseError);
  EXPECT_THROW(parse_condition("[]"), ParseError);
  EXPECT_THROW(parse_condition("{\"format\": \"eigconf-condition\"}"), ParseError);
}
