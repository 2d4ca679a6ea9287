#ifndef WITT_ORACLE_HPP
#define WITT_ORACLE_HPP

// Floating-point adjudication of symbolic results.
//
// Every value carries a magnitude: a bound on the absolute size of the
// partial sums and products that produced it. Rounding error is a small
// multiple of that magnitude, so residuals are judged relative to it.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "witt/symexpr.hpp"
#include "witt/vecfield.hpp"

namespace witt {

class Inadmissible : public Error {
 public:
  using Error::Error;
};

// Working precision of the numeric routes. The catalog's recursive families
// expand into sums whose terms cancel by fifteen or more digits, which double
// cannot resolve; binary128 leaves a wide margin.
using Real = __float128;
inline constexpr double kRealEpsilon = 0x1p-112;
inline constexpr double kDoubleEpsilon = 0x1p-52;

Real to_real(const Rational& q);
inline double to_double(Real r) { return static_cast<double>(r); }

struct Approx {
  Real value = 0;
  Real mag = 0;
};

inline Approx operator+(Approx a, Approx b) { return {a.value + b.value, a.mag + b.mag}; }
inline Approx operator-(Approx a, Approx b) { return {a.value - b.value, a.mag + b.mag}; }
inline Approx operator-(Approx a) { return {-a.value, a.mag}; }
inline Approx operator*(Approx a, Approx b) { return {a.value * b.value, a.mag * b.mag}; }
inline Approx operator*(const Rational& c, Approx a) {
  const Real k = to_real(c);
  return {k * a.value, (k < 0 ? -k : k) * a.mag};
}

inline constexpr int kMaxFuncOrder = 24;

// Concrete stand-in for a function symbol: the k-th derivative at y is
// amp * rate^k * exp(rate * y). Used where values must move with the
// argument (finite differences).
struct FuncModel {
  double amp = 1;
  double rate = 1;
};

struct Assignment {
  std::array<Real, kVarCount> vars{};  // working precision so projections land on the manifold
  std::array<std::array<double, kMaxFuncOrder>, 4> funcs{};  // free values per derivative order
  std::optional<std::array<FuncModel, 4>> models;
  double c = 0;
  std::vector<double> declared;
  int rad_branch = 1;

  Real& operator[](Var v) { return vars[static_cast<std::size_t>(v)]; }
  Real operator[](Var v) const { return vars[static_cast<std::size_t>(v)]; }
  double func_value(FuncName f, int order) const;
};

struct SamplePlan {
  std::uint64_t seed = 42;
  int points = 20;
  std::array<std::pair<double, double>, kVarCount> ranges{{{-1.5, 1.5}, {-1.5, 1.5}, {-1.5, 1.5},
                                                          {-2, 2}, {-2, 2}, {-2, 2}, {-2, 2}, {-2, 2}}};
  // Verdict margins stated for IEEE double. cross_check applies them scaled by
  // kRealEpsilon / kDoubleEpsilon, i.e. the same distance from rounding noise.
  double abs_tol = 1e-9;  // zero: |value| <= abs_tol * magnitude at every point
  double rel_tol = 1e-6;  // nonzero: |value| > rel_tol * magnitude at some point
  double eps_rad = 1e-6;
  double eps_den = 1e-8;
  int budget_factor = 10;
  bool model_functions = false;
  // Moves a sampled point onto an equation manifold, e.g. u_tx := e^u.
  std::function<void(Assignment&)> project;

  void set_range(Var v, double lo, double hi) { ranges[static_cast<std::size_t>(v)] = {lo, hi}; }
};

// Deterministic point source for a plan.
class Sampler {
 public:
  explicit Sampler(const SamplePlan& plan) : plan_(plan), rng_(plan.seed) {}
  Assignment next();
  double uniform(double lo, double hi);

 private:
  const SamplePlan& plan_;
  std::mt19937_64 rng_;
};

Approx eval_approx(const Ratio& e, const Assignment& a, const SamplePlan& plan = {});
double eval(const Ratio& e, const Assignment& a, const SamplePlan& plan = {});

enum class Verdict { zero, nonzero, inadmissible, ambiguous };
std::string_view verdict_name(Verdict v);

struct CrossCheck {
  Verdict verdict = Verdict::inadmissible;
  int points = 0;
  double worst = 0;  // largest |value| / magnitude seen
  double peak = 0;   // largest |value| seen
};

// A numeric residual route: one or more components evaluated at a point.
using NumericRoute = std::function<std::vector<Approx>(const Assignment&)>;

CrossCheck cross_check(const NumericRoute& route, const SamplePlan& plan);
CrossCheck cross_check(const Ratio& e, const SamplePlan& plan);

// Independent numeric routes. Derivatives are taken by forward-mode jets on
// the undifferentiated components, never by the symbolic differentiator.
std::array<Approx, 3> eval_field(const VectorField& q, const Assignment& a, const SamplePlan& plan = {});
std::array<Approx, 3> numeric_bracket(const VectorField& q, const VectorField& p, const Assignment& a,
                                      const SamplePlan& plan = {});
// pr2(q) applied to e, with the prolongation coefficients built from the
// chain-rule expansion of the total derivatives.
Approx numeric_prolonged_apply(const VectorField& q, const Ratio& e, const Assignment& a, const SamplePlan& plan = {});

// Central difference in v (h = 1e-5) against the symbolic derivative.
bool fd_derivative_check(const Ratio& e, Var v, const SamplePlan& plan, double rel = 1e-5);

struct NumericCheck {
  bool pass = false;
  int points = 0;
  double worst = 0;
};

// Candidate solution ln(g'(x)/(h(t) - lambda g(x))) with g = x^3 + x,
// h = t^2 + 3, differentiated by hyper-dual numbers.
NumericCheck numeric_solution_d2_check(const Rational& lambda, const SamplePlan& plan, double rel = 1e-9);

// Inverts a Liouville solution in its second argument and checks
// u_t u_xx - u_x u_tx - lambda e^x u_x^3 by finite differences.
NumericCheck numeric_hodograph_check(const Rational& lambda, const SamplePlan& plan, double rel = 1e-4);

}  // namespace witt

#endif  // WITT_ORACLE_HPP
