#include "witt/vecfield.hpp"

namespace witt {

VectorField operator+(const VectorField& a, const VectorField& b) { return {a.tau + b.tau, a.xi + b.xi, a.eta + b.eta}; }

VectorField operator-(const VectorField& a, const VectorField& b) { return {a.tau - b.tau, a.xi - b.xi, a.eta - b.eta}; }

VectorField operator*(const Ratio& c, const VectorField& q) { return {c * q.tau, c * q.xi, c * q.eta}; }

Ratio apply(const VectorField& q, const Ratio& f) {
  Ratio out(0);
  for (std::size_t j = 0; j < 3; ++j)
    if (!q[j].is_zero()) out += q[j] * differentiate(f, kBaseVars[j]);
  return out;
}

FieldPartials::FieldPartials(const VectorField& q) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) d[i][j] = differentiate(q[i], kBaseVars[j]);
}

VectorField bracket(const VectorField& q, const FieldPartials& dq, const VectorField& p, const FieldPartials& dp) {
  VectorField out;
  for (std::size_t i = 0; i < 3; ++i) {
    Ratio c(0);
    for (std::size_t j = 0; j < 3; ++j) {
      if (!q[j].is_zero() && !dp.d[i][j].is_zero()) c += q[j] * dp.d[i][j];
      if (!p[j].is_zero() && !dq.d[i][j].is_zero()) c -= p[j] * dq.d[i][j];
    }
    out[i] = std::move(c);
  }
  return out;
}

VectorField bracket(const VectorField& q, const VectorField& p) { return bracket(q, FieldPartials(q), p, FieldPartials(p)); }

VectorField lin_comb(const Rational& c1, const VectorField& q1, const Rational& c2, const VectorField& q2) {
  return Ratio(c1) * q1 + Ratio(c2) * q2;
}

bool equal_vf(const VectorField& q, const VectorField& p) {
  for (std::size_t i = 0; i < 3; ++i)
    if (!equal(q[i], p[i])) return false;
  return true;
}

std::string print(const VectorField& q) { return print(q.tau) + "; " + print(q.xi) + "; " + print(q.eta); }

}  // namespace witt
