#include <gtest/gtest.h>

#include "random_expr.hpp"
#include "witt/vecfield.hpp"

namespace witt {
namespace {

using testing::ExprGen;
using testing::GenOptions;

constexpr int kCases = 200;

GenOptions rich_options() {
  GenOptions o;
  o.functions = true;
  o.constant = true;
  o.denominators = true;
  o.ctx = Context::make(parse("4 + u^2").num());
  return o;
}

TEST(KernelProperty, Leibniz) {
  ExprGen gen(1001, rich_options());
  for (int i = 0; i < kCases; ++i) {
    Ratio a = gen.ratio();
    Ratio b = gen.ratio();
    for (Var v : kBaseVars) {
      Ratio lhs = differentiate(a * b, v);
      Ratio rhs = differentiate(a, v) * b + a * differentiate(b, v);
      ASSERT_TRUE(equal(lhs, rhs)) << print(a) << " | " << print(b) << " | " << var_name(v);
    }
  }
}

TEST(KernelProperty, QuotientRule) {
  ExprGen gen(1002, rich_options());
  for (int i = 0; i < 50; ++i) {
    Ratio a = gen.ratio();
    Ratio b = gen.ratio();
    if (b.is_zero()) continue;
    Ratio lhs = differentiate(a / b, Var::x);
    Ratio rhs = differentiate(a, Var::x) / b - a * differentiate(b, Var::x) / b / b;
    ASSERT_TRUE(equal(lhs, rhs)) << print(a) << " | " << print(b);
  }
}

TEST(KernelProperty, FieldAxioms) {
  ExprGen gen(1003, rich_options());
  for (int i = 0; i < kCases; ++i) {
    Ratio a = gen.ratio();
    Ratio b = gen.ratio();
    Ratio c = gen.ratio();
    ASSERT_TRUE(equal(a + b, b + a));
    ASSERT_TRUE(equal(a * b, b * a));
    ASSERT_TRUE(equal((a + b) + c, a + (b + c)));
    ASSERT_TRUE(equal((a * b) * c, a * (b * c)));
    ASSERT_TRUE(equal(a * (b + c), a * b + a * c));
    ASSERT_TRUE((a - a).is_zero());
    if (!b.is_zero()) ASSERT_TRUE(equal(a / b * b, a)) << print(a) << " | " << print(b);
  }
}

TEST(KernelProperty, NormalizeIsIdempotent) {
  ExprGen gen(1004, rich_options());
  for (int i = 0; i < kCases; ++i) {
    Ratio a = gen.ratio() * gen.ratio() + gen.ratio();
    Ratio again = Ratio::make(a.num(), a.den_factors(), a.context());
    ASSERT_TRUE(identical(a, again)) << print(a) << " vs " << print(again);
    for (const auto& f : a.den_factors()) ASSERT_FALSE(f.base.has_rad());
  }
}

TEST(KernelProperty, ParsePrintRoundTrip) {
  GenOptions o = rich_options();
  o.jets = true;
  ExprGen gen(1005, o);
  for (int i = 0; i < 100; ++i) {
    Ratio a = gen.ratio();
    const std::string text = print(a);
    Ratio b = parse(text, o.ctx);
    ASSERT_TRUE(identical(a, b)) << text << " -> " << print(b);
  }
}

GenOptions field_options() {
  GenOptions o;
  o.max_terms = 2;
  return o;
}

TEST(VecfieldProperty, Antisymmetry) {
  ExprGen gen(2001, field_options());
  for (int i = 0; i < kCases; ++i) {
    VectorField q = gen.field();
    VectorField p = gen.field();
    ASSERT_TRUE(equal_vf(bracket(q, p), -bracket(p, q)));
    ASSERT_TRUE(bracket(q, q).is_zero());
  }
}

TEST(VecfieldProperty, Bilinearity) {
  ExprGen gen(2002, field_options());
  for (int i = 0; i < kCases; ++i) {
    VectorField q = gen.field();
    VectorField p = gen.field();
    VectorField s = gen.field();
    Rational a = gen.small_rational();
    Rational b = gen.small_rational();
    ASSERT_TRUE(equal_vf(bracket(lin_comb(a, q, b, p), s), lin_comb(a, bracket(q, s), b, bracket(p, s))));
    ASSERT_TRUE(equal_vf(bracket(s, lin_comb(a, q, b, p)), lin_comb(a, bracket(s, q), b, bracket(s, p))));
  }
}

TEST(VecfieldProperty, Jacobi) {
  ExprGen gen(2003, field_options());
  for (int i = 0; i < kCases; ++i) {
    VectorField q = gen.field();
    VectorField p = gen.field();
    VectorField s = gen.field();
    VectorField sum = bracket(q, bracket(p, s)) + bracket(p, bracket(s, q)) + bracket(s, bracket(q, p));
    ASSERT_TRUE(sum.is_zero()) << print(sum);
  }
}

TEST(VecfieldProperty, Derivation) {
  ExprGen gen(2004, field_options());
  for (int i = 0; i < kCases; ++i) {
    VectorField q = gen.field();
    VectorField p = gen.field();
    Ratio f = gen.ratio();
    ASSERT_TRUE(equal(apply(bracket(q, p), f), apply(q, apply(p, f)) - apply(p, apply(q, f))));
  }
}

}  // namespace
}  // namespace witt
