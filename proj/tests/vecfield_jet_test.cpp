#include <gtest/gtest.h>

#include "random_expr.hpp"
#include "witt/jet.hpp"
#include "witt/vecfield.hpp"

namespace witt {
namespace {

Ratio P(std::string_view s) { return parse(s); }
VectorField F(std::string_view tau, std::string_view xi, std::string_view eta) { return {P(tau), P(xi), P(eta)}; }

TEST(Apply, Examples) {
  for (int n : {-2, 1, 3}) {
    Ratio e = Ratio::exp(-n, 0, 0);
    EXPECT_TRUE(equal(apply(VectorField::dt(), e), Ratio(-n) * e));
  }
  EXPECT_TRUE(equal(apply(F("exp(-t)", "exp(-t)", "0"), P("exp(t)")), Ratio(1)));
  EXPECT_TRUE(apply(F("exp(-t)", "0", "0"), P("u")).is_zero());
}

TEST(Bracket, WittOnTheLine) {
  for (int m = -3; m <= 3; ++m)
    for (int n = -3; n <= 3; ++n) {
      VectorField lm{Ratio::exp(-m, 0, 0), 0, 0};
      VectorField ln{Ratio::exp(-n, 0, 0), 0, 0};
      VectorField expected{Ratio(m - n) * Ratio::exp(-(m + n), 0, 0), 0, 0};
      EXPECT_TRUE(equal_vf(bracket(lm, ln), expected)) << m << "," << n;
    }
}

TEST(Bracket, SelfIsZero) {
  VectorField q = F("exp(x)*u", "phi(u)", "exp(-t)/(exp(x) - 1)");
  EXPECT_TRUE(bracket(q, q).is_zero());
}

TEST(Bracket, SecondFamilyRaisingAndLowering) {
  // alpha = 1: L1 = e^-t (d_t + d_x), L-1 = e^t d_t + e^t (-1 + e^-x) d_x
  VectorField l1 = F("exp(-t)", "exp(-t)", "0");
  VectorField lm1 = F("exp(t)", "exp(t)*(-1 + exp(-x))", "0");
  EXPECT_TRUE(equal_vf(bracket(l1, lm1), F("2", "0", "0")));
}

TEST(LinComb, Examples) {
  VectorField q = F("exp(x)", "u^2", "phi(u)");
  EXPECT_TRUE(lin_comb(1, q, -1, q).is_zero());
  VectorField l0 = VectorField::dt();
  VectorField l1 = F("exp(-t)", "0", "0");
  EXPECT_TRUE(equal_vf(bracket(l0, l1), lin_comb(-1, l1, 0, l0)));
  VectorField a{Ratio::exp(-2, 0, 0), 0, 0};
  VectorField b{0, Ratio::exp(0, 3, 0), 0};
  EXPECT_TRUE(bracket(a, b).is_zero());
}

TEST(TotalDerivative, Examples) {
  EXPECT_TRUE(equal(total_dt(P("u")), P("u_t")));
  EXPECT_TRUE(equal(total_dx(P("exp(-t)*u_t")), P("exp(-t)*u_tx")));
  EXPECT_TRUE(equal(total_dt(P("-f'(t) - u_t*f'(t)")), P("-f''(t) - u_t*f''(t) - u_tt*f'(t)")));
  EXPECT_THROW(total_dt(P("u_xx")), JetOrderError);
}

TEST(TotalDerivative, MixedPartialsCommute) {
  EXPECT_TRUE(equal(total_dx(total_dt(P("u"))), P("u_tx")));
  EXPECT_TRUE(equal(total_dt(total_dx(P("u"))), P("u_tx")));
  testing::GenOptions o;
  o.functions = true;
  testing::ExprGen gen(3001, o);
  for (int i = 0; i < 50; ++i) {
    Ratio e = gen.ratio();
    EXPECT_TRUE(equal(total_dx(total_dt(e)), total_dt(total_dx(e)))) << print(e);
  }
}

TEST(Prolong, FirstFamily) {
  for (int n = -3; n <= 3; ++n) {
    const Ratio e = Ratio::exp(-n, 0, 0);
    ProlongedField p = prolong2({e, 0, 0});
    EXPECT_TRUE(equal(p.eta_t, Ratio(n) * e * P("u_t"))) << n;
    EXPECT_TRUE(equal(p.eta_tt, Ratio(2 * n) * e * P("u_tt") - Ratio(n * n) * e * P("u_t"))) << n;
    EXPECT_TRUE(equal(p.eta_tx, Ratio(n) * e * P("u_tx"))) << n;
    EXPECT_TRUE(p.eta_x.is_zero());
    EXPECT_TRUE(p.eta_xx.is_zero());
    for (const char* inv : {"x", "u", "u_x", "u_xx", "u_tx/u_t"}) EXPECT_TRUE(pr_apply(p, P(inv)).is_zero()) << inv;
    EXPECT_TRUE(pr_apply(p, e * P("u_t")).is_zero());
  }
}

TEST(Prolong, ConstantFieldHasNoLift) {
  ProlongedField p = prolong2(VectorField::dt());
  for (const auto* c : {&p.eta_t, &p.eta_x, &p.eta_tt, &p.eta_tx, &p.eta_xx}) EXPECT_TRUE(c->is_zero());
}

TEST(Prolong, LiouvilleGenerator) {
  ProlongedField p = prolong2(F("f(t)", "0", "-f'(t)"));
  EXPECT_TRUE(equal(p.eta_tx, P("-f'(t)*u_tx")));
  Ratio residual = pr_apply(p, P("u_tx - exp(u)"));
  EXPECT_TRUE(equal(residual, P("-f'(t)*(u_tx - exp(u))")));
  EXPECT_TRUE(substitute_jet(residual, Var::utx, P("exp(u)")).is_zero());
  EXPECT_TRUE(substitute_jet(P("u_tx - exp(u)"), Var::utx, P("exp(u)")).is_zero());
  EXPECT_THROW(substitute_jet(P("u_tx"), Var::utx, P("u_tx*u")), SubstitutionError);
}

TEST(Prolong, LinearInTheField) {
  testing::GenOptions o;
  o.max_terms = 2;
  o.functions = true;
  testing::ExprGen gen(3002, o);
  for (int i = 0; i < 30; ++i) {
    VectorField q = gen.field();
    VectorField s = gen.field();
    Rational a = gen.small_rational();
    Rational b = gen.small_rational();
    ProlongedField lhs = prolong2(lin_comb(a, q, b, s));
    ProlongedField pq = prolong2(q);
    ProlongedField ps = prolong2(s);
    auto combo = [&](const Ratio& x, const Ratio& y) { return Ratio(a) * x + Ratio(b) * y; };
    EXPECT_TRUE(equal(lhs.eta_t, combo(pq.eta_t, ps.eta_t)));
    EXPECT_TRUE(equal(lhs.eta_x, combo(pq.eta_x, ps.eta_x)));
    EXPECT_TRUE(equal(lhs.eta_tt, combo(pq.eta_tt, ps.eta_tt)));
    EXPECT_TRUE(equal(lhs.eta_tx, combo(pq.eta_tx, ps.eta_tx)));
    EXPECT_TRUE(equal(lhs.eta_xx, combo(pq.eta_xx, ps.eta_xx)));
  }
}

}  // namespace
}  // namespace witt
