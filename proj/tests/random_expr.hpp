#ifndef WITT_TESTS_RANDOM_EXPR_HPP
#define WITT_TESTS_RANDOM_EXPR_HPP

// Hand-rolled generators for property tests.

#include <random>

#include "witt/symexpr.hpp"
#include "witt/vecfield.hpp"

namespace witt::testing {

struct GenOptions {
  int exp_range = 2;      // ExpAtom entries in [-exp_range, exp_range]
  int max_var_power = 2;  // bare t, x, u powers in [0, max_var_power]
  int max_terms = 3;
  bool functions = false;  // phi(u), g(x) and derivatives
  bool constant = false;   // the formal c
  bool jets = false;       // u_t, u_x, u_tt, u_tx, u_xx
  bool denominators = false;
  ContextPtr ctx;          // rad is drawn when ctx has a radicand
};

class ExprGen {
 public:
  explicit ExprGen(std::uint64_t seed, GenOptions opt = {}) : rng_(seed), opt_(std::move(opt)) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Ratio monomial() {
    const int r = opt_.exp_range;
    Ratio m = Ratio::exp(uniform(-r, r), uniform(-r, r), uniform(-r, r));
    Rational c(uniform(-9, 9), uniform(1, 4));
    c.canonicalize();
    if (c == 0) c = 1;
    m *= Ratio(c);
    for (Var v : kBaseVars)
      if (coin(0.3)) m *= Ratio::var(v).pow(uniform(1, opt_.max_var_power));
    if (opt_.functions) {
      if (coin(0.3)) m *= Ratio::func(FuncName::phi, uniform(0, 2)).pow(uniform(1, 2));
      if (coin(0.2)) m *= Ratio::func(FuncName::g, uniform(0, 2));
    }
    if (opt_.constant && coin(0.25)) m *= Ratio::constant_symbol();
    if (opt_.jets)
      for (Var v : kJetVars)
        if (coin(0.15)) m *= Ratio::var(v);
    if (opt_.ctx && opt_.ctx->radicand() && coin(0.3)) m *= opt_.ctx->rad();
    return m;
  }

  Ratio poly(int min_terms = 1) {
    Ratio p(0);
    const int n = uniform(min_terms, opt_.max_terms);
    for (int i = 0; i < n; ++i) p += monomial();
    return p;
  }

  Ratio ratio() {
    Ratio p = poly();
    if (opt_.denominators && coin(0.5)) {
      Ratio d = poly(2);
      if (!d.is_zero()) p = p / d;
    }
    if (opt_.ctx) p = p + Ratio::from_poly({}, opt_.ctx);
    return p;
  }

  VectorField field() { return {ratio(), ratio(), ratio()}; }

  Rational small_rational() {
    Rational c(uniform(-5, 5), uniform(1, 3));
    c.canonicalize();
    return c;
  }

 private:
  std::mt19937_64 rng_;
  GenOptions opt_;
};

}  // namespace witt::testing

#endif  // WITT_TESTS_RANDOM_EXPR_HPP
