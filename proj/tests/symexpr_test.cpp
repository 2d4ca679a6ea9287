#include <gtest/gtest.h>

#include "witt/symexpr.hpp"

namespace witt {
namespace {

Ratio P(std::string_view s, const ContextPtr& ctx = {}) { return parse(s, ctx); }

TEST(Parse, ExponentialIsSingleMonomial) {
  Ratio r = P("exp(-2*t)");
  ASSERT_TRUE(r.den_factors().empty());
  ASSERT_EQ(r.num().size(), 1u);
  const Term& term = r.num().terms()[0];
  EXPECT_EQ(term.key.exp, (std::array<std::int32_t, 3>{-2, 0, 0}));
  EXPECT_EQ(term.coeff, 1);
}

TEST(Parse, ExpMinusPhiHasTwoGenerators) {
  Ratio r = P("exp(x) - phi(u)");
  ASSERT_EQ(r.num().size(), 2u);
  bool saw_exp = false;
  bool saw_phi = false;
  for (const auto& t : r.num().terms()) {
    if (t.key.exp == std::array<std::int32_t, 3>{0, 1, 0}) saw_exp = true;
    if (t.key.sym_power(Sym::func(FuncName::phi)) == 1) saw_phi = true;
  }
  EXPECT_TRUE(saw_exp);
  EXPECT_TRUE(saw_phi);
}

TEST(Parse, W7DenominatorWithGammaOne) {
  Ratio r = P("(exp(2*x) - exp(x)*phi(u) - 1)");
  EXPECT_EQ(r.num().size(), 3u);
  EXPECT_EQ(print(r), "exp(2*x) - exp(x)*phi(u) - 1");
}

TEST(Parse, SyntaxErrorCarriesOffset) {
  try {
    P("exp(x) + * 2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseError::Kind::Syntax);
    EXPECT_EQ(e.offset(), 9u);
  }
}

TEST(Parse, UnknownSymbol) {
  try {
    P("t + zeta");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseError::Kind::UnknownSymbol);
    EXPECT_EQ(e.offset(), 4u);
  }
  EXPECT_THROW(P("rad"), ParseError);
  EXPECT_THROW(P("phi(x)"), ParseError);
  EXPECT_THROW(P("exp(t*x)"), ParseError);
  EXPECT_THROW(P("exp(1/2*t)"), ParseError);
}

TEST(Parse, NegativeExponentsAndTicks) {
  EXPECT_TRUE(equal(P("x^-2"), P("1/(x*x)")));
  EXPECT_TRUE(equal(P("x^(-2)"), P("1/x^2")));
  EXPECT_EQ(print(P("g''(x)*g'(x)")), "g'(x)*g''(x)");
  EXPECT_EQ(print(P("u_xt")), "u_tx");
}

TEST(Arithmetic, InverseExponentials) {
  EXPECT_TRUE(identical(P("exp(t)*exp(-t)"), Ratio(1)));
}

TEST(Arithmetic, RadSquaredIsRadicand) {
  auto ctx = Context::make(P("4 + u^2").num());
  Ratio r = ctx->rad();
  EXPECT_TRUE(equal(r * r, P("4 + u^2")));
  EXPECT_TRUE(is_zero(r * r - P("4 + u^2")));
}

TEST(Arithmetic, SelfQuotientIsOne) {
  Ratio a = P("exp(x) - 1");
  EXPECT_TRUE(identical(a / a, Ratio(1)));
  EXPECT_EQ(print(P("(exp(x) - 1)/(exp(x) - 1)")), "1");
}

TEST(Arithmetic, DivisionByZeroThrows) {
  EXPECT_THROW(P("x") / Ratio(0), DivisionByZero);
  EXPECT_THROW(P("1/(x - x)"), ParseError);
}

TEST(Equality, ExponentialProducts) {
  EXPECT_TRUE(equal(P("exp(2*x)*exp(-x)"), P("exp(x)")));
}

TEST(Equality, CrossMultiplication) {
  // (e^x + 1)(e^x - 1) = e^{2x} - 1
  EXPECT_TRUE(equal(P("(exp(x) + 1)/(exp(2*x) - 1)"), P("1/(exp(x) - 1)")));
  EXPECT_FALSE(equal(P("(exp(x) + 1)/(exp(2*x) - 1)"), P("1/(exp(x) + 1)")));
}

TEST(Equality, MonomialUnitsLeaveDenominator) {
  Ratio r = P("1/(exp(2*x) - exp(x))");
  ASSERT_EQ(r.den_factors().size(), 1u);
  EXPECT_EQ(print(r.den_factors()[0].base), "exp(x) - 1");
  EXPECT_EQ(print(P("3/(2*u_t)")), "3/2*u_t^-1");
}

TEST(Equality, RadInDenominatorIsRationalized) {
  auto ctx = Context::make(P("5").num());
  Ratio r = Ratio(1) / (Ratio(1) + ctx->rad());
  for (const auto& f : r.den_factors()) EXPECT_FALSE(f.base.has_rad());
  EXPECT_TRUE(equal(r * (Ratio(1) + ctx->rad()), Ratio(1)));
}

TEST(Context, RejectsSquareRadicand) {
  EXPECT_THROW(Context::make(P("4").num()), Error);
  EXPECT_THROW(Context::make(P("9/4").num()), Error);
  EXPECT_NO_THROW(Context::make(P("8").num()));
}

TEST(Context, MixingContextsThrows) {
  auto a = Context::make(P("5").num());
  auto b = Context::make(P("7").num());
  EXPECT_THROW(a->rad() + b->rad(), ContextMismatch);
  // Same radicand built twice: interchangeable.
  auto c = Context::make(P("5").num());
  EXPECT_TRUE(equal(a->rad() + c->rad(), Ratio(2) * a->rad()));
}

TEST(Differentiate, Exponential) {
  for (int n : {-3, -1, 0, 2, 5}) {
    Ratio e = Ratio::exp(-n, 0, 0);
    EXPECT_TRUE(equal(differentiate(e, Var::t), Ratio(-n) * e)) << n;
  }
}

TEST(Differentiate, ChainRuleOnFunctionSymbol) {
  EXPECT_TRUE(equal(differentiate(P("phi(u)^3"), Var::u), P("3*phi(u)^2*phi'(u)")));
  EXPECT_TRUE(differentiate(P("phi(u)^3"), Var::x).is_zero());
  EXPECT_TRUE(equal(differentiate(P("g'(x)"), Var::x), P("g''(x)")));
}

TEST(Differentiate, QuotientRule) {
  Ratio q = P("exp(x)/(exp(x) - 1)");
  // d/dx e^x/(e^x-1) = -e^x/(e^x-1)^2
  EXPECT_TRUE(equal(differentiate(q, Var::x), P("-exp(x)/(exp(x) - 1)^2")));
}

TEST(Differentiate, Radical) {
  auto ctx = Context::make(P("4 + u^2").num());
  Ratio r = ctx->rad();
  // d rad/du = u rad / (4 + u^2)
  EXPECT_TRUE(equal(differentiate(r, Var::u), P("u*rad/(4 + u^2)", ctx)));
  EXPECT_TRUE(differentiate(r, Var::x).is_zero());
}

TEST(Differentiate, DeclaredAtom) {
  Context::Declared w{"w", {P("h'(t)"), P("-2*g'(x)"), Ratio(0)}};
  auto ctx = Context::make(std::nullopt, {w});
  Ratio e = P("g'(x)/w", ctx);
  EXPECT_TRUE(equal(differentiate(e, Var::t), P("-g'(x)*h'(t)/w^2", ctx)));
  EXPECT_TRUE(equal(differentiate(P("w^3", ctx), Var::x), P("-6*g'(x)*w^2", ctx)));
}

TEST(Differentiate, JetVariables) {
  EXPECT_TRUE(equal(differentiate(P("u_tx/u_t"), Var::ut), P("-u_tx/u_t^2")));
  EXPECT_TRUE(differentiate(P("exp(u)*u_x"), Var::ut).is_zero());
}

TEST(Substitute, FunctionFamilyByVariable) {
  EXPECT_TRUE(equal(substitute(P("phi'(u)*exp(x)"), FuncTarget{FuncName::phi}, P("u")), P("exp(x)")));
  EXPECT_TRUE(equal(substitute(P("phi(u)^2 + phi''(u)"), FuncTarget{FuncName::phi}, P("u")), P("u^2")));
}

TEST(Substitute, FunctionFamilyByConstant) {
  EXPECT_TRUE(equal(substitute(P("phi(u)"), FuncTarget{FuncName::phi}, Ratio(3)), Ratio(3)));
  EXPECT_TRUE(substitute(P("phi'(u)"), FuncTarget{FuncName::phi}, Ratio(3)).is_zero());
}

TEST(Substitute, InconsistentFamilyRejected) {
  EXPECT_THROW(substitute(P("phi(u)"), FuncTarget{FuncName::phi}, P("x")), SubstitutionError);
  EXPECT_THROW(substitute(P("c"), ConstTarget{}, P("u")), SubstitutionError);
}

TEST(Substitute, JetOccurrenceCheck) {
  EXPECT_TRUE(substitute(P("u_tx - exp(u)"), Var::utx, P("exp(u)")).is_zero());
  EXPECT_THROW(substitute(P("u_tx"), Var::utx, P("u_tx + 1")), SubstitutionError);
  EXPECT_THROW(substitute(P("exp(t)"), Var::t, P("x")), SubstitutionError);
}

TEST(Substitute, RadicalBySquareRoot) {
  auto ctx = Context::make(P("u^2 + 2*u + 1").num());
  Ratio e = P("exp(x)*rad + (u + 1)^2/rad", ctx);
  EXPECT_TRUE(equal(substitute(e, RadTarget{}, P("u + 1")), P("(exp(x) + 1)*(u + 1)")));
  EXPECT_THROW(substitute(e, RadTarget{}, P("u")), SubstitutionError);
  // The radicand depends on u, so u cannot be replaced while rad is present.
  EXPECT_THROW(substitute(e, Var::u, Ratio(0)), SubstitutionError);
}

TEST(Print, DiffExample) { EXPECT_EQ(print(differentiate(P("phi(u)^2"), Var::u)), "2*phi(u)*phi'(u)"); }

TEST(Print, RoundTripsThroughParse) {
  auto ctx = Context::make(P("4 - u^2").num());
  for (const char* s : {"exp(-2*t+x)*u^2 - 3/7*phi'(u) + c", "(exp(x) - 1)^-2*exp(u)", "u_t*u_xx - u_x*u_tx/(u_x^3)",
                        "(1 + rad)/(exp(x) + rad)"}) {
    Ratio a = P(s, ctx);
    Ratio b = P(print(a), ctx);
    EXPECT_TRUE(identical(a, b)) << s << " -> " << print(a);
  }
}

}  // namespace
}  // namespace witt
