#ifndef WITT_JET_HPP
#define WITT_JET_HPP

#include "witt/symexpr.hpp"
#include "witt/vecfield.hpp"

namespace witt {

// Jet expressions are plain Ratios in which u_t ... u_xx appear as variables.
using JetExpr = Ratio;

class JetOrderError : public Error {
 public:
  JetOrderError() : Error("total derivative of a second-order jet expression") {}
};

JetExpr total_dt(const JetExpr& e);
JetExpr total_dx(const JetExpr& e);

struct ProlongedField {
  VectorField base;
  JetExpr eta_t;
  JetExpr eta_x;
  JetExpr eta_tt;
  JetExpr eta_tx;
  JetExpr eta_xx;
};

ProlongedField prolong2(const VectorField& q);
JetExpr pr_apply(const ProlongedField& p, const JetExpr& e);

// Replaces a jet variable; v must not occur in r.
JetExpr substitute_jet(const JetExpr& e, Var v, const JetExpr& r);

}  // namespace witt

#endif  // WITT_JET_HPP
