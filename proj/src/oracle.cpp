#include "witt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <quadmath.h>

namespace witt {

namespace {

Approx exact(Real v) { return {v, fabsq(v)}; }
Approx& operator+=(Approx& a, Approx b) { return a = a + b; }

Approx inverse(Approx a, double eps) {
  if (!(fabsq(a.value) >= eps)) throw Inadmissible("denominator too small");
  const Real r = 1 / a.value;
  return {r, a.mag * r * r};
}

Approx power(Approx a, int k, double eps) {
  if (k < 0) return inverse(power(a, -k, eps), eps);
  Approx r = exact(1);
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

// Forward-mode jet: value, gradient in N seeded variables and optionally the
// Hessian.
template <std::size_t N, bool Second>
struct Jet {
  Approx v;
  std::array<Approx, N> g{};
  std::array<Approx, Second ? N * N : 0> h{};
};

template <std::size_t N, bool S>
Jet<N, S> constant(Approx c) {
  Jet<N, S> r;
  r.v = c;
  return r;
}

template <std::size_t N, bool S>
Jet<N, S> operator+(const Jet<N, S>& a, const Jet<N, S>& b) {
  Jet<N, S> r;
  r.v = a.v + b.v;
  for (std::size_t i = 0; i < N; ++i) r.g[i] = a.g[i] + b.g[i];
  for (std::size_t i = 0; i < r.h.size(); ++i) r.h[i] = a.h[i] + b.h[i];
  return r;
}

template <std::size_t N, bool S>
Jet<N, S> operator*(const Jet<N, S>& a, const Jet<N, S>& b) {
  Jet<N, S> r;
  r.v = a.v * b.v;
  for (std::size_t i = 0; i < N; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
  if constexpr (S)
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i; j < N; ++j)
        r.h[j * N + i] = r.h[i * N + j] =
            a.h[i * N + j] * b.v + a.v * b.h[i * N + j] + a.g[i] * b.g[j] + a.g[j] * b.g[i];
  return r;
}

template <std::size_t N, bool S>
Jet<N, S> scale(const Jet<N, S>& a, Approx c) {
  Jet<N, S> r;
  r.v = c * a.v;
  for (std::size_t i = 0; i < N; ++i) r.g[i] = c * a.g[i];
  for (std::size_t i = 0; i < r.h.size(); ++i) r.h[i] = c * a.h[i];
  return r;
}

// f(x) from f, f', f'' at the value of x.
template <std::size_t N, bool S>
Jet<N, S> compose(const Jet<N, S>& x, Approx f0, Approx f1, Approx f2) {
  Jet<N, S> r;
  r.v = f0;
  for (std::size_t i = 0; i < N; ++i) r.g[i] = f1 * x.g[i];
  if constexpr (S)
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i; j < N; ++j) r.h[j * N + i] = r.h[i * N + j] = f1 * x.h[i * N + j] + f2 * x.g[i] * x.g[j];
  return r;
}

template <std::size_t N, bool S>
Jet<N, S> jet_pow(const Jet<N, S>& x, int k, double eps) {
  if (k == 1) return x;
  const Approx f0 = power(x.v, k, eps);
  const Approx f1 = k == 0 ? exact(0) : exact(k) * power(x.v, k - 1, eps);
  const Approx f2 = (k == 0 || k == 1) ? exact(0) : exact(double(k) * (k - 1)) * power(x.v, k - 2, eps);
  return compose(x, f0, f1, f2);
}

template <std::size_t N, bool S>
Jet<N, S> jet_exp(const Jet<N, S>& x) {
  const Real e = expq(x.v.value);
  const Approx f{e, e * std::max<Real>(1, x.v.mag)};
  return compose(x, f, f, f);
}

template <std::size_t N, bool S>
Jet<N, S> jet_sqrt(const Jet<N, S>& x, double eps) {
  if (!(x.v.value >= eps)) throw Inadmissible("radicand too small");
  const Real s = sqrtq(x.v.value);
  const Approx f0{s, std::max<Real>(s, x.v.mag / (2 * s))};
  return compose(x, f0, exact(1 / (2 * s)), exact(-1 / (4 * s * s * s)));
}

template <std::size_t N, bool S>
class Evaluator {
 public:
  using J = Jet<N, S>;

  Evaluator(const Assignment& a, const SamplePlan& plan, const ContextPtr& ctx) : a_(a), plan_(plan), ctx_(ctx) {
    for (std::size_t i = 0; i < kVarCount; ++i) {
      vars_[i] = constant<N, S>(exact(a.vars[i]));
      if (i < N) vars_[i].g[i] = exact(1);
    }
  }

  J ratio(const Ratio& e) {
    J num = poly(e.num());
    if (e.den_factors().empty()) return num;
    J den = constant<N, S>(exact(1));
    for (const auto& f : e.den_factors()) {
      J base = poly(f.base);
      den = den * jet_pow(base, f.exp, plan_.eps_den);
    }
    return num * jet_pow(den, -1, plan_.eps_den);
  }

  J poly(const Poly& p) {
    J sum = constant<N, S>(exact(0));
    for (const auto& t : p.terms()) sum = sum + scale(key(t.key), exact(to_real(t.coeff)));
    return sum;
  }

 private:
  // Monomials recur across the polynomials of one expression.
  const J& key(const MonoKey& k) {
    auto it = keys_.find(k);
    if (it == keys_.end()) it = keys_.emplace(k, monomial(k)).first;
    return it->second;
  }

  J monomial(const MonoKey& k) {
    J r = constant<N, S>(exact(1));
    if (k.exp != std::array<std::int32_t, 3>{}) {
      J lin = constant<N, S>(exact(0));
      for (std::size_t i = 0; i < 3; ++i)
        if (k.exp[i] != 0) lin = lin + scale(vars_[i], exact(k.exp[i]));
      r = jet_exp(lin);
    }
    for (std::size_t i = 0; i < kVarCount; ++i)
      if (k.pow[i] != 0) r = r * jet_pow(vars_[i], k.pow[i], plan_.eps_den);
    for (const auto& [s, e] : k.syms) r = r * jet_pow(symbol(s), e, plan_.eps_den);
    if (k.rad) r = r * rad();
    return r;
  }

  J symbol(const Sym& s) {
    switch (s.kind) {
      case SymKind::Func: {
        const auto f = static_cast<FuncName>(s.id);
        const J& arg = vars_[static_cast<std::size_t>(func_arg(f))];
        auto value = [&](int order) { return exact(a_.func_value(f, order)); };
        return compose(arg, value(s.order), value(s.order + 1), value(s.order + 2));
      }
      case SymKind::Const:
        return constant<N, S>(exact(a_.c));
      case SymKind::Declared:
        return declared(s.id);
    }
    return {};
  }

  J declared(int id) {
    if (!ctx_ || static_cast<std::size_t>(id) >= ctx_->declared().size() ||
        static_cast<std::size_t>(id) >= a_.declared.size())
      throw Error("declared atom without a value");
    J r = constant<N, S>(exact(a_.declared[static_cast<std::size_t>(id)]));
    if constexpr (N > 0) {
      if constexpr (S) throw Error("declared atoms are not supported in second-order jets");
      for (std::size_t j = 0; j < std::min<std::size_t>(N, 3); ++j) {
        const Ratio& partial = ctx_->declared()[static_cast<std::size_t>(id)].partials[j];
        if (!partial.is_zero()) r.g[j] = Evaluator<0, false>(a_, plan_, ctx_).ratio(partial).v;
      }
    }
    return r;
  }

  J rad() {
    if (!rad_) {
      if (!ctx_ || !ctx_->radicand()) throw Error("rad without a radicand");
      J root = jet_sqrt(poly(*ctx_->radicand()), plan_.eps_rad);
      rad_ = a_.rad_branch < 0 ? scale(root, exact(-1)) : root;
    }
    return *rad_;
  }

  const Assignment& a_;
  const SamplePlan& plan_;
  const ContextPtr& ctx_;
  std::array<J, kVarCount> vars_;
  std::optional<J> rad_;
  std::map<MonoKey, J> keys_;
};

// Components sharing a context share one evaluator and its monomial cache.
template <std::size_t N, bool S>
std::array<Jet<N, S>, 3> field_jets(const VectorField& q, const Assignment& a, const SamplePlan& plan) {
  std::array<Jet<N, S>, 3> out;
  std::optional<Evaluator<N, S>> ev;
  const Context* ctx = nullptr;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!ev || q[i].context().get() != ctx) {
      ev.emplace(a, plan, q[i].context());
      ctx = q[i].context().get();
    }
    out[i] = ev->ratio(q[i]);
  }
  return out;
}

void require_finite(const Approx& a) {
  if (!finiteq(a.value) || !finiteq(a.mag)) throw Inadmissible("non-finite value");
}

double relative(const Approx& a) {
  if (a.value == 0) return 0;
  if (a.mag == 0) return INFINITY;
  return to_double(fabsq(a.value) / a.mag);
}

Real limbs_to_real(const mpz_class& z) {
  Real r = 0;
  for (std::size_t i = mpz_size(z.get_mpz_t()); i-- > 0;)
    r = r * 0x1p64Q + static_cast<Real>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i)));
  return mpz_sgn(z.get_mpz_t()) < 0 ? -r : r;
}

}  // namespace

Real to_real(const Rational& q) {
  static_assert(sizeof(mp_limb_t) == 8);
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return static_cast<Real>(q.get_num().get_si());
  return limbs_to_real(q.get_num()) / limbs_to_real(q.get_den());
}

double Assignment::func_value(FuncName f, int order) const {
  const auto i = static_cast<std::size_t>(f);
  if (models) {
    const FuncModel& m = (*models)[i];
    return m.amp * std::pow(m.rate, order) * std::exp(m.rate * to_double((*this)[func_arg(f)]));
  }
  if (order < 0 || order >= kMaxFuncOrder) throw Error("function derivative order out of range");
  return funcs[i][static_cast<std::size_t>(order)];
}

double Sampler::uniform(double lo, double hi) {
  // Explicit mapping keeps sequences identical across standard libraries.
  const double u01 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u01;
}

Assignment Sampler::next() {
  Assignment a;
  for (std::size_t i = 0; i < kVarCount; ++i) a.vars[i] = uniform(plan_.ranges[i].first, plan_.ranges[i].second);
  for (auto& row : a.funcs)
    for (auto& v : row) v = uniform(-2, 2);
  a.c = uniform(-3, 3);
  a.declared.resize(8);
  for (auto& d : a.declared) d = uniform(0.5, 2);
  if (plan_.model_functions) {
    std::array<FuncModel, 4> m;
    for (auto& f : m) {
      f.amp = uniform(0.5, 1.5);
      f.rate = uniform(0.3, 1.2) * (uniform(0, 1) < 0.5 ? -1 : 1);
    }
    a.models = m;
  }
  return a;
}

Approx eval_approx(const Ratio& e, const Assignment& a, const SamplePlan& plan) {
  Approx r = Evaluator<0, false>(a, plan, e.context()).ratio(e).v;
  require_finite(r);
  return r;
}

double eval(const Ratio& e, const Assignment& a, const SamplePlan& plan) {
  return to_double(eval_approx(e, a, plan).value);
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::zero:
      return "zero";
    case Verdict::nonzero:
      return "nonzero";
    case Verdict::inadmissible:
      return "inadmissible";
    case Verdict::ambiguous:
      return "ambiguous";
  }
  return "?";
}

CrossCheck cross_check(const NumericRoute& route, const SamplePlan& plan) {
  Sampler sampler(plan);
  CrossCheck out;
  bool all_zero = true;
  bool some_nonzero = false;
  const double unit = kRealEpsilon / kDoubleEpsilon;
  const int budget = plan.points * plan.budget_factor;
  for (int attempt = 0; attempt < budget && out.points < plan.points; ++attempt) {
    Assignment a = sampler.next();
    std::vector<Approx> values;
    try {
      if (plan.project) plan.project(a);
      values = route(a);
      for (const auto& v : values) require_finite(v);
    } catch (const Inadmissible&) {
      continue;
    }
    ++out.points;
    for (const auto& v : values) {
      const double r = relative(v);
      out.worst = std::max(out.worst, r);
      out.peak = std::max(out.peak, to_double(fabsq(v.value)));
      if (r > plan.abs_tol * unit) all_zero = false;
      if (r > plan.rel_tol * unit) some_nonzero = true;
    }
  }
  if (some_nonzero)
    out.verdict = Verdict::nonzero;
  else if (out.points < plan.points)
    out.verdict = Verdict::inadmissible;
  else
    out.verdict = all_zero ? Verdict::zero : Verdict::ambiguous;
  return out;
}

CrossCheck cross_check(const Ratio& e, const SamplePlan& plan) {
  return cross_check([&](const Assignment& a) { return std::vector<Approx>{eval_approx(e, a, plan)}; }, plan);
}

std::array<Approx, 3> eval_field(const VectorField& q, const Assignment& a, const SamplePlan& plan) {
  return {eval_approx(q.tau, a, plan), eval_approx(q.xi, a, plan), eval_approx(q.eta, a, plan)};
}

std::array<Approx, 3> numeric_bracket(const VectorField& q, const VectorField& p, const Assignment& a,
                                      const SamplePlan& plan) {
  const auto jq = field_jets<3, false>(q, a, plan);
  const auto jp = field_jets<3, false>(p, a, plan);
  std::array<Approx, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    Approx c = exact(0);
    for (std::size_t j = 0; j < 3; ++j) c = c + jq[j].v * jp[i].g[j] - jp[j].v * jq[i].g[j];
    require_finite(c);
    out[i] = c;
  }
  return out;
}

Approx numeric_prolonged_apply(const VectorField& q, const Ratio& e, const Assignment& a, const SamplePlan& plan) {
  using J2 = Jet<3, true>;
  enum { T = 0, X = 1, U = 2 };
  auto d2 = [](const J2& f, int i, int j) { return f.h[static_cast<std::size_t>(i * 3 + j)]; };
  const Approx ut = exact(a[Var::ut]);
  const Approx ux = exact(a[Var::ux]);
  const Approx utt = exact(a[Var::utt]);
  const Approx utx = exact(a[Var::utx]);
  const Approx uxx = exact(a[Var::uxx]);
  const Approx two = exact(2);

  struct Totals {
    Approx dt, dx, dtdt, dxdt, dxdx;
  };
  // Total derivatives of a function of (t, x, u) expanded by the chain rule.
  auto totals = [&](const J2& f) {
    const Approx ft = f.g[T], fx = f.g[X], fu = f.g[U];
    Totals r;
    r.dt = ft + ut * fu;
    r.dx = fx + ux * fu;
    r.dtdt = d2(f, T, T) + two * ut * d2(f, T, U) + ut * ut * d2(f, U, U) + utt * fu;
    r.dxdt = d2(f, T, X) + ux * d2(f, T, U) + ut * d2(f, X, U) + ut * ux * d2(f, U, U) + utx * fu;
    r.dxdx = d2(f, X, X) + two * ux * d2(f, X, U) + ux * ux * d2(f, U, U) + uxx * fu;
    return r;
  };
  const auto [tau, xi, eta] = field_jets<3, true>(q, a, plan);
  const Totals T_ = totals(tau);
  const Totals X_ = totals(xi);
  const Totals E_ = totals(eta);

  const Approx eta_t = E_.dt - ut * T_.dt - ux * X_.dt;
  const Approx eta_x = E_.dx - ut * T_.dx - ux * X_.dx;
  // Total derivatives of eta_t and eta_x, expanded.
  const Approx dt_eta_t = E_.dtdt - utt * T_.dt - ut * T_.dtdt - utx * X_.dt - ux * X_.dtdt;
  const Approx dx_eta_t = E_.dxdt - utx * T_.dt - ut * T_.dxdt - uxx * X_.dt - ux * X_.dxdt;
  const Approx dx_eta_x = E_.dxdx - utx * T_.dx - ut * T_.dxdx - uxx * X_.dx - ux * X_.dxdx;
  const Approx eta_tt = dt_eta_t - utt * T_.dt - utx * X_.dt;
  const Approx eta_tx = dx_eta_t - utt * T_.dx - utx * X_.dx;
  const Approx eta_xx = dx_eta_x - utx * T_.dx - uxx * X_.dx;

  const Jet<8, false> ge = Evaluator<8, false>(a, plan, e.context()).ratio(e);
  const std::array<Approx, 8> coeff{tau.v, xi.v, eta.v, eta_t, eta_x, eta_tt, eta_tx, eta_xx};
  Approx sum = exact(0);
  for (std::size_t k = 0; k < 8; ++k) sum += coeff[k] * ge.g[k];
  require_finite(sum);
  return sum;
}

bool fd_derivative_check(const Ratio& e, Var v, const SamplePlan& plan_in, double rel) {
  SamplePlan plan = plan_in;
  plan.model_functions = true;
  const Ratio d = differentiate(e, v);
  const double h = 1e-5;
  Sampler sampler(plan);
  int good = 0;
  for (int attempt = 0; attempt < plan.points * plan.budget_factor && good < plan.points; ++attempt) {
    Assignment a = sampler.next();
    try {
      const Approx sym = eval_approx(d, a, plan);
      const Approx mid = eval_approx(e, a, plan);
      Assignment lo = a;
      Assignment hi = a;
      lo[v] -= h;
      hi[v] += h;
      const double fd = (eval(e, hi, plan) - eval(e, lo, plan)) / (2 * h);
      if (std::abs(fd - to_double(sym.value)) > rel * to_double(sym.mag) + 1e-9 * to_double(mid.mag)) return false;
    } catch (const Inadmissible&) {
      continue;
    }
    ++good;
  }
  return good == plan.points;
}

namespace {

// a + b e1 + c e2 + d e1 e2 with e1^2 = e2^2 = 0.
struct HyperDual {
  double a = 0, b = 0, c = 0, d = 0;
};

HyperDual operator+(HyperDual x, HyperDual y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
HyperDual operator-(HyperDual x, HyperDual y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
HyperDual operator*(HyperDual x, HyperDual y) {
  return {x.a * y.a, x.a * y.b + x.b * y.a, x.a * y.c + x.c * y.a, x.a * y.d + x.b * y.c + x.c * y.b + x.d * y.a};
}
HyperDual operator*(double k, HyperDual x) { return {k * x.a, k * x.b, k * x.c, k * x.d}; }
HyperDual apply_fn(HyperDual x, double f0, double f1, double f2) {
  return {f0, f1 * x.b, f1 * x.c, f1 * x.d + f2 * x.b * x.c};
}
HyperDual recip(HyperDual x) { return apply_fn(x, 1 / x.a, -1 / (x.a * x.a), 2 / (x.a * x.a * x.a)); }
HyperDual log(HyperDual x) { return apply_fn(x, std::log(x.a), 1 / x.a, -1 / (x.a * x.a)); }

}  // namespace

NumericCheck numeric_solution_d2_check(const Rational& lambda_q, const SamplePlan& plan, double rel) {
  const double lambda = lambda_q.get_d();
  if (lambda == 0) throw Error("lambda must be nonzero");
  Sampler sampler(plan);
  NumericCheck out;
  for (int attempt = 0; attempt < plan.points * plan.budget_factor && out.points < plan.points; ++attempt) {
    const double t0 = sampler.uniform(plan.ranges[0].first, plan.ranges[0].second);
    const double x0 = sampler.uniform(plan.ranges[1].first, plan.ranges[1].second);
    const HyperDual t{t0, 1, 0, 0};
    const HyperDual x{x0, 0, 1, 0};
    const HyperDual g = x * x * x + x;
    const HyperDual gp = 3.0 * (x * x) + HyperDual{1, 0, 0, 0};
    const HyperDual h = t * t + HyperDual{3, 0, 0, 0};
    const HyperDual w = h - lambda * g;
    if (w.a < plan.eps_den) continue;
    const HyperDual u = log(gp * recip(w));
    const double eu = std::exp(u.a);
    const double lhs = u.d;
    const double rhs = lambda * u.b * eu;
    const double res = std::abs(lhs - rhs);
    const double mag = std::abs(lhs) + std::abs(rhs);
    ++out.points;
    out.worst = std::max(out.worst, mag == 0 ? 0.0 : res / mag);
  }
  out.pass = out.points == plan.points && out.worst < rel;
  return out;
}

NumericCheck numeric_hodograph_check(const Rational& lambda_q, const SamplePlan& plan, double rel) {
  const double lambda = lambda_q.get_d();
  if (lambda == 0) throw Error("lambda must be nonzero");
  // Liouville solution v(s, y) = ln(2 F' G' / (F + G)^2), F = e^s, G = e^y,
  // so that v_sy = e^v. X(t, u) = v(lambda t, u) then solves X_tu = lambda e^X,
  // the hodograph image of the target equation.
  auto v = [](double s, double y) {
    const double es = std::exp(s);
    const double ey = std::exp(y);
    return std::log(2 * es * ey / ((es + ey) * (es + ey)));
  };
  auto v_y = [](double s, double y) {
    const double es = std::exp(s);
    const double ey = std::exp(y);
    return (es - ey) / (es + ey);
  };
  // u(t, x): solve v(lambda t, y) = x for y near a starting guess.
  auto invert = [&](double t, double x, double y) {
    const double s = lambda * t;
    for (int it = 0; it < 60; ++it) {
      const double slope = v_y(s, y);
      if (!(slope > 1e-3)) throw Inadmissible("hodograph inversion left the monotone branch");
      const double step = (v(s, y) - x) / slope;
      y -= step;
      if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(y))) return y;
    }
    throw Inadmissible("hodograph inversion did not converge");
  };

  Sampler sampler(plan);
  NumericCheck out;
  const double h = 1e-3;
  for (int attempt = 0; attempt < plan.points * plan.budget_factor && out.points < plan.points; ++attempt) {
    const double t0 = sampler.uniform(plan.ranges[0].first, plan.ranges[0].second);
    const double y0 = lambda * t0 - sampler.uniform(0.5, 2.5);
    const double x0 = v(lambda * t0, y0);
    try {
      auto u = [&](double dt, double dx) { return invert(t0 + dt, x0 + dx, y0); };
      const double u00 = u(0, 0);
      const double ut = (u(h, 0) - u(-h, 0)) / (2 * h);
      const double ux = (u(0, h) - u(0, -h)) / (2 * h);
      const double uxx = (u(0, h) - 2 * u00 + u(0, -h)) / (h * h);
      const double utx = (u(h, h) - u(h, -h) - u(-h, h) + u(-h, -h)) / (4 * h * h);
      const double a = ut * uxx;
      const double b = ux * utx;
      const double c = lambda * std::exp(x0) * ux * ux * ux;
      const double mag = std::abs(a) + std::abs(b) + std::abs(c);
      if (mag == 0) continue;
      ++out.points;
      out.worst = std::max(out.worst, std::abs(a - b - c) / mag);
    } catch (const Inadmissible&) {
      continue;
    }
  }
  out.pass = out.points == plan.points && out.worst < rel;
  return out;
}

}  // namespace witt
