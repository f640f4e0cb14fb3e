#include <gtest/gtest.h>

#include "zdgenus/presentation.hpp"

using namespace zdgenus;

TEST(Parse, CyclicAtom) {
  auto ast = parse_ring_spec("Z49");
  ASSERT_EQ(ast.factors.size(), 1u);
  EXPECT_EQ(std::get<ZMod>(ast.factors[0]).n, 49);
}

TEST(Parse, QuotientOverZ4) {
  auto ast = parse_ring_spec("Z4[x]/(x^2+x+1)");
  const auto& q = std::get<Quotient>(ast.factors.at(0));
  EXPECT_EQ(std::get<ZMod>(q.base).n, 4);
  ASSERT_EQ(q.vars, std::vector<char>{'x'});
  ASSERT_EQ(q.relations.size(), 1u);
  Polynomial expect(1);
  expect.add_term({2}, 1);
  expect.add_term({1}, 1);
  expect.add_term({0}, 1);
  EXPECT_EQ(q.relations[0], expect);
}

TEST(Parse, FlatProduct) {
  auto ast = parse_ring_spec("Z2 * Z2 * Z2 * Z2");
  ASSERT_EQ(ast.factors.size(), 4u);
  for (const auto& f : ast.factors) EXPECT_EQ(std::get<ZMod>(f).n, 2);
}

TEST(Parse, GaloisFieldGetsBuiltinPolynomial) {
  auto ast = parse_ring_spec("GF(9)");
  const auto& gf = std::get<GaloisField>(ast.factors.at(0));
  EXPECT_EQ(gf.q, 9);
  ASSERT_TRUE(gf.defining_poly.has_value());
  EXPECT_EQ(gf.defining_poly->degree(), 2);
  auto prime = std::get<GaloisField>(parse_ring_spec("GF(7)").factors.at(0));
  EXPECT_FALSE(prime.defining_poly.has_value());
}

TEST(Parse, CoefficientsReducedModBase) {
  auto ast = parse_ring_spec("Z4[x,y]/(x^3,x^2-2,xy,y^2-2,y^3)");
  const auto& q = std::get<Quotient>(ast.factors.at(0));
  EXPECT_EQ(q.relations[1].terms().at({0, 0}), 2);
}

TEST(Parse, ImplicitAndExplicitMultiplicationAgree) {
  EXPECT_EQ(parse_ring_spec("Z2[x,y]/(xy, x y^2)"), parse_ring_spec("Z2[x,y]/(x*y, x*y^2)"));
  EXPECT_EQ(parse_ring_spec("Z8[x]/(2x)"), parse_ring_spec("Z8[x]/(2*x)"));
}

TEST(Parse, WhitespaceInsensitive) {
  EXPECT_EQ(parse_ring_spec("  Z3 *Z8 "), parse_ring_spec("Z3*Z8"));
}

TEST(Format, Canonical) {
  EXPECT_EQ(format_ring_spec(parse_ring_spec("Z8")), "Z8");
  EXPECT_EQ(format_ring_spec(parse_ring_spec("Z2[x,y]/(x^2,xy,y^2)")),
            "Z2[x,y]/(x^2, x*y, y^2)");
  EXPECT_EQ(format_ring_spec(parse_ring_spec("Z3*Z8")), "Z3 * Z8");
  EXPECT_EQ(format_ring_spec(parse_ring_spec("Z8[x]/(x^2-2x+2,x^5)")),
            "Z8[x]/(x^2+6*x+2, x^5)");
}

TEST(Format, RoundTrip) {
  for (const char* s : {"Z4[x]/(x^3+x+1)", "GF(8)[x]/(x^2)", "Z4[x,y]/(2x,2y,x^2,xy,y^2)",
                        "Z2[x,y,z]/(x^2,y^2,z^2,xy,xz,yz)", "Z2 * GF(4) * Z3",
                        "Z9[x]/(x^2+3,x^3)"}) {
    auto ast = parse_ring_spec(s);
    EXPECT_EQ(parse_ring_spec(format_ring_spec(ast)), ast) << s;
  }
}

struct Negative {
  const char* text;
  ParseError::Kind kind;
};

class NegativeCorpus : public ::testing::TestWithParam<Negative> {};

TEST_P(NegativeCorpus, Rejected) {
  const auto& c = GetParam();
  try {
    parse_ring_spec(c.text);
    FAIL() << "accepted: " << c.text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), c.kind) << c.text << ": " << e.what();
  }
}

INSTANTIATE_TEST_SUITE_P(
    Parse, NegativeCorpus,
    ::testing::Values(Negative{"", ParseError::Kind::Syntax},
                      Negative{"Z4[x]/(x^2", ParseError::Kind::Syntax},
                      Negative{"Z4[x]/x^2)", ParseError::Kind::Syntax},
                      Negative{"GF(6)", ParseError::Kind::Semantic},
                      Negative{"Z4[x]/(y^2)", ParseError::Kind::Semantic},
                      Negative{"Z0", ParseError::Kind::Semantic},
                      Negative{"Z1", ParseError::Kind::Semantic},
                      Negative{"Z4[x,x]/(x)", ParseError::Kind::Semantic},
                      Negative{"Z4 x Z2", ParseError::Kind::Syntax},
                      Negative{"Q", ParseError::Kind::Syntax},
                      Negative{"Z4[w]/(w)", ParseError::Kind::Syntax},
                      Negative{"Z4 *", ParseError::Kind::Syntax}));

TEST(ParseError, ReportsOffsetAndExpected) {
  try {
    parse_ring_spec("Z4[x]/(x^2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 10u);
    EXPECT_TRUE(e.expected().count(")"));
  }
}

TEST(PrimePower, Decomposes) {
  EXPECT_EQ(prime_power(49), std::make_pair(std::int64_t{7}, 2));
  EXPECT_EQ(prime_power(2), std::make_pair(std::int64_t{2}, 1));
  EXPECT_FALSE(prime_power(12).has_value());
  EXPECT_FALSE(prime_power(1).has_value());
}
