#include "witt/jet.hpp"

namespace witt {

namespace {

// d_base e + first * d_u e + second * d_{u_t} e + third * d_{u_x} e
JetExpr total(const JetExpr& e, Var base, Var first, Var mixed_t, Var mixed_x) {
  if (e.jet_order() >= 2) throw JetOrderError();
  JetExpr out = differentiate(e, base);
  auto add = [&](Var coeff, Var wrt) {
    JetExpr d = differentiate(e, wrt);
    if (!d.is_zero()) out += Ratio::var(coeff) * d;
  };
  add(first, Var::u);
  add(mixed_t, Var::ut);
  add(mixed_x, Var::ux);
  return out;
}

}  // namespace

JetExpr total_dt(const JetExpr& e) { return total(e, Var::t, Var::ut, Var::utt, Var::utx); }

JetExpr total_dx(const JetExpr& e) { return total(e, Var::x, Var::ux, Var::utx, Var::uxx); }

ProlongedField prolong2(const VectorField& q) {
  const Ratio ut = Ratio::var(Var::ut);
  const Ratio ux = Ratio::var(Var::ux);
  const Ratio utt = Ratio::var(Var::utt);
  const Ratio utx = Ratio::var(Var::utx);
  const Ratio uxx = Ratio::var(Var::uxx);
  const JetExpr dt_tau = total_dt(q.tau);
  const JetExpr dt_xi = total_dt(q.xi);
  const JetExpr dx_tau = total_dx(q.tau);
  const JetExpr dx_xi = total_dx(q.xi);

  ProlongedField p{q, {}, {}, {}, {}, {}};
  p.eta_t = total_dt(q.eta) - ut * dt_tau - ux * dt_xi;
  p.eta_x = total_dx(q.eta) - ut * dx_tau - ux * dx_xi;
  p.eta_tt = total_dt(p.eta_t) - utt * dt_tau - utx * dt_xi;
  p.eta_tx = total_dx(p.eta_t) - utt * dx_tau - utx * dx_xi;
  p.eta_xx = total_dx(p.eta_x) - utx * dx_tau - uxx * dx_xi;
  return p;
}

JetExpr pr_apply(const ProlongedField& p, const JetExpr& e) {
  const std::pair<const Ratio*, Var> parts[] = {
      {&p.base.tau, Var::t}, {&p.base.xi, Var::x},    {&p.base.eta, Var::u},   {&p.eta_t, Var::ut},
      {&p.eta_x, Var::ux},   {&p.eta_tt, Var::utt}, {&p.eta_tx, Var::utx}, {&p.eta_xx, Var::uxx},
  };
  JetExpr out(0);
  for (const auto& [coeff, v] : parts) {
    if (coeff->is_zero()) continue;
    JetExpr d = differentiate(e, v);
    if (!d.is_zero()) out += *coeff * d;
  }
  return out;
}

JetExpr substitute_jet(const JetExpr& e, Var v, const JetExpr& r) {
  if (is_base_var(v)) throw SubstitutionError("substitute_jet expects a jet variable");
  return substitute(e, v, r);
}

}  // namespace witt
