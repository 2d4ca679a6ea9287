#ifndef WITT_VECFIELD_HPP
#define WITT_VECFIELD_HPP

#include <array>
#include <string>

#include "witt/symexpr.hpp"

namespace witt {

// tau*d_t + xi*d_x + eta*d_u
struct VectorField {
  Ratio tau;
  Ratio xi;
  Ratio eta;

  const Ratio& operator[](std::size_t i) const { return i == 0 ? tau : (i == 1 ? xi : eta); }
  Ratio& operator[](std::size_t i) { return i == 0 ? tau : (i == 1 ? xi : eta); }

  bool is_zero() const { return tau.is_zero() && xi.is_zero() && eta.is_zero(); }
  VectorField operator-() const { return {-tau, -xi, -eta}; }
  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const Ratio& c, const VectorField& q);

  static VectorField dt() { return {Ratio(1), Ratio(0), Ratio(0)}; }
  static VectorField dx() { return {Ratio(0), Ratio(1), Ratio(0)}; }
  static VectorField du() { return {Ratio(0), Ratio(0), Ratio(1)}; }
};

Ratio apply(const VectorField& q, const Ratio& f);
VectorField bracket(const VectorField& q, const VectorField& p);
VectorField lin_comb(const Rational& c1, const VectorField& q1, const Rational& c2, const VectorField& q2);
bool equal_vf(const VectorField& q, const VectorField& p);

// The nine first partials d_j(component i), computed once per field.
struct FieldPartials {
  explicit FieldPartials(const VectorField& q);
  std::array<std::array<Ratio, 3>, 3> d;  // d[i][j] = d_{var j} of component i
};

// Bracket reusing precomputed partials; used by the catalog recursion.
VectorField bracket(const VectorField& q, const FieldPartials& dq, const VectorField& p, const FieldPartials& dp);

// "tau; xi; eta" in the expression language.
std::string print(const VectorField& q);

}  // namespace witt

#endif  // WITT_VECFIELD_HPP
