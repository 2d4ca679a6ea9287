#ifndef WITT_CATALOG_HPP
#define WITT_CATALOG_HPP

// Operator families, their parameter grids and the invariant equations.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "witt/jet.hpp"
#include "witt/symexpr.hpp"
#include "witt/vecfield.hpp"

namespace witt {

class ParamError : public Error {
 public:
  using Error::Error;
};

class RecursionBoundError : public Error {
 public:
  using Error::Error;
};

enum class RealizationId {
  W1, W2, W3, W4, W5, W6, W7, W8, W9, W10, W11,
  REP1, REP2,
  D1, D2, D3, D4, D5, D6, D7, D8, D9, D10,
  C1, C2, C3, C4, C5, C6,
  V4_CASE1, V4_CASE2,
  LIOUVILLE_F, LIOUVILLE_G,
};

std::string_view id_name(RealizationId id);
std::optional<RealizationId> id_from_name(std::string_view name);
const std::vector<RealizationId>& all_ids();

bool is_witt(RealizationId id);        // W1..W11
bool is_direct_sum(RealizationId id);  // D1..D10
bool is_central(RealizationId id);     // C1..C6
bool is_recursive(RealizationId id);   // W4, W7, D9, D10

// How phi~ is instantiated.
struct Phi {
  enum class Kind { u, constant, symbol, function };
  Kind kind = Kind::u;
  Rational value;  // for constant

  Ratio expr() const;  // u, the constant, the formal c, or phi(u)
  std::string str() const;
  friend bool operator==(const Phi& a, const Phi& b) { return a.kind == b.kind && a.value == b.value; }
};

enum ParamField : std::uint32_t {
  kAlpha = 1u << 0,
  kBeta = 1u << 1,
  kGamma = 1u << 2,
  kSign = 1u << 3,   // the +/- of W5, D6, D6_EQ and of L_-2 in W4/D9
  kFSign = 1u << 4,  // the +/- inside f, g, r of W4/D9 (the -/+ is its negative)
  kPhi = 1u << 5,
  kLambda = 1u << 6,
};

// Discrete parameters. Reading a field that was not set throws ParamError.
class Params {
 public:
  Params& set_alpha(int v);
  Params& set_beta(int v);
  Params& set_gamma(int v);
  Params& set_sign(int v);
  Params& set_fsign(int v);
  Params& set_phi(Phi v);
  Params& set_lambda(Rational v);

  int alpha() const;
  int beta() const;
  int gamma() const;
  int sign() const;
  int fsign() const;
  const Phi& phi() const;
  const Rational& lambda() const;

  std::uint32_t fields() const { return fields_; }
  // Canonical text "alpha=1,phi=u"; empty for no parameters. Parsed back by parse().
  std::string key() const;
  static Params parse(std::string_view text);

  friend bool operator==(const Params& a, const Params& b) { return a.key() == b.key(); }

 private:
  void require(ParamField f, const char* name) const;
  std::uint32_t fields_ = 0;
  int alpha_ = 0, beta_ = 0, gamma_ = 0, sign_ = 0, fsign_ = 0;
  Phi phi_;
  Rational lambda_;
};

std::uint32_t declared_fields(RealizationId id);
std::vector<Params> param_grid(RealizationId id);

// generator() index conventions beyond the Witt families:
//   REP1, REP2           n in {-1, 0, 1}
//   D1..D10              factor 0 or 1 selects the summand
//   C1..C6               n = 0 gives the central candidate
//   V4_CASE1, V4_CASE2   n in {-1, 0, 1, 2}; central() gives C
//   LIOUVILLE_F/G        n = 0 gives the generator with a formal function symbol
class Catalog {
 public:
  explicit Catalog(int recursion_bound = 4);
  ~Catalog();
  Catalog(const Catalog&) = delete;
  Catalog& operator=(const Catalog&) = delete;

  int recursion_bound() const { return bound_; }

  VectorField generator(RealizationId id, int n, const Params& p, int factor = 0) const;
  VectorField central(RealizationId id, const Params& p) const;

 private:
  struct Sequence;
  Sequence& sequence(RealizationId id, const Params& p, int factor) const;

  int bound_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::unique_ptr<Sequence>> sequences_;
};

std::array<VectorField, 3> sl2_triplet(RealizationId rep, const Params& p);  // (L0, L1, L-1)

// ---------------------------------------------------------------------------
// Invariant equations

enum class EquationId { T1_W1, T1_W2_a0, T1_W2_a1, T1_W6, T1_W8, T1_W10, D1_EQ, D2_EQ, D3_EQ, D6_EQ, LIO_EQ };

std::string_view equation_name(EquationId id);
std::optional<EquationId> equation_from_name(std::string_view name);
const std::vector<EquationId>& all_equations();

struct InvariantEquation {
  EquationId id;
  std::vector<RealizationId> symmetries;  // LIO_EQ lists both Liouville rules
  std::uint32_t fields = 0;               // parameters the equation reads
  bool annihilation = true;               // false: checked on the manifold only
};

const InvariantEquation& equation(EquationId id);
std::vector<Params> equation_grid(EquationId id);
// Parameters of the symmetry realization matching the equation parameters.
Params symmetry_params(EquationId id, const Params& p);
std::vector<JetExpr> invariant_set(EquationId id, const Params& p);
// Solved form u_tx = rhs where the equation has one.
std::optional<JetExpr> solved_form(EquationId id, const Params& p);
// The equation expression F with F = 0, for on-manifold checks.
std::optional<JetExpr> manifold_expr(EquationId id, const Params& p);

}  // namespace witt

#endif  // WITT_CATALOG_HPP
