#ifndef WITT_SYMEXPR_HPP
#define WITT_SYMEXPR_HPP

// Exact expression kernel.
//
// A Ratio is a quotient num / (f1^k1 * ... * fr^kr) where num and every f_i
// are canonical Laurent polynomials over the generators
//
//   exp(a*t + b*x + c*u)                   (ExpAtom, a,b,c integers)
//   t x u u_t u_x u_tt u_tx u_xx           (bare and jet variables)
//   phi(u) f(t) g(x) h(t) and derivatives  (formal function symbols)
//   c                                      (formal constant)
//   declared atoms                         (from the Context)
//   rad                                    (square root of the Context radicand)
//
// with the single relation rad^2 = radicand. Zero testing is exact: a Ratio is
// zero iff its numerator is the empty polynomial.

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

namespace witt {

using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class ContextMismatch : public Error {
 public:
  ContextMismatch() : Error("expressions belong to different contexts") {}
};

class SubstitutionError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Generators

enum class Var : std::uint8_t { t, x, u, ut, ux, utt, utx, uxx };
inline constexpr std::size_t kVarCount = 8;
inline constexpr std::array<Var, 3> kBaseVars{Var::t, Var::x, Var::u};
inline constexpr std::array<Var, 5> kJetVars{Var::ut, Var::ux, Var::utt, Var::utx, Var::uxx};

std::string_view var_name(Var v);
std::optional<Var> var_from_name(std::string_view name);
inline bool is_base_var(Var v) { return v <= Var::u; }
// 0 for t, x, u; 1 for u_t, u_x; 2 for second derivatives.
int jet_order(Var v);

enum class SymKind : std::uint8_t { Func, Const, Declared };

// Function symbols have a fixed argument: phi(u), f(t), g(x), h(t).
enum class FuncName : std::uint8_t { phi, f, g, h };

std::string_view func_name(FuncName f);
Var func_arg(FuncName f);
std::optional<FuncName> func_from_name(std::string_view name);

struct Sym {
  SymKind kind = SymKind::Const;
  std::uint8_t id = 0;     // FuncName for Func, declared index for Declared
  std::uint16_t order = 0; // derivative order, Func only

  auto operator<=>(const Sym&) const = default;

  static Sym func(FuncName f, int order = 0) {
    return {SymKind::Func, static_cast<std::uint8_t>(f), static_cast<std::uint16_t>(order)};
  }
  static Sym constant() { return {SymKind::Const, 0, 0}; }
  static Sym declared(int index) { return {SymKind::Declared, static_cast<std::uint8_t>(index), 0}; }
};

using SymPowers = boost::container::small_vector<std::pair<Sym, std::int32_t>, 2>;

// Everything in a monomial except its coefficient. Ordered lexicographically
// by (exponential vector, variable powers, symbol powers, rad).
struct MonoKey {
  std::array<std::int32_t, 3> exp{};
  std::array<std::int32_t, kVarCount> pow{};
  SymPowers syms;  // sorted by Sym, no zero powers
  bool rad = false;

  bool is_one() const;
  std::int32_t sym_power(const Sym& s) const;
  void set_sym_power(const Sym& s, std::int32_t p);
  // Product of keys; the rad flags must not both be set.
  friend MonoKey operator*(const MonoKey& a, const MonoKey& b);
  MonoKey inverse() const;
  friend bool operator==(const MonoKey& a, const MonoKey& b);
  friend std::strong_ordering operator<=>(const MonoKey& a, const MonoKey& b);
};

struct Term {
  MonoKey key;
  Rational coeff;
};

// ---------------------------------------------------------------------------
// Poly: canonical sum of terms, ascending by key, nonzero coefficients.

class Poly {
 public:
  Poly() = default;
  explicit Poly(const Rational& c);
  static Poly monomial(MonoKey key, Rational coeff = 1);
  // Builds from arbitrary terms (sorted and combined here).
  static Poly from_terms(std::vector<Term> terms);
  // Terms must already be strictly ascending with nonzero coefficients.
  static Poly from_sorted(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  std::optional<Rational> constant_value() const;
  bool has_rad() const;
  bool is_monomial() const { return terms_.size() == 1; }

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  Poly scaled(const Rational& c) const;
  Poly times_key(const MonoKey& k) const;
  // rad*rad is rewritten using radicand; radicand may be null only when at
  // most one side carries rad.
  static Poly mul(const Poly& a, const Poly& b, const Poly* radicand);

  // Splits this = A + B*rad.
  std::pair<Poly, Poly> split_rad() const;

  friend bool operator==(const Poly& a, const Poly& b);
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

 private:
  std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Ratio and Context

class Context;
using ContextPtr = std::shared_ptr<const Context>;

struct Factor {
  Poly base;  // normalized: primitive integer coefficients, positive leading
              // coefficient, no monomial content, no rad, not a monomial
  int exp = 1;
  friend bool operator==(const Factor&, const Factor&) = default;
};

class Ratio {
 public:
  Ratio() = default;
  Ratio(const Rational& c);  // NOLINT(google-explicit-constructor)
  Ratio(long c);             // NOLINT(google-explicit-constructor)
  Ratio(int c) : Ratio(static_cast<long>(c)) {}  // NOLINT

  static Ratio from_poly(Poly p, ContextPtr ctx = {});
  static Ratio make(Poly num, std::vector<Factor> den, ContextPtr ctx);

  static Ratio var(Var v);
  // exp(a*t + b*x + c*u)
  static Ratio exp(int a, int b, int c);
  static Ratio func(FuncName f, int order = 0);
  static Ratio constant_symbol();
  static Ratio declared(int index);

  const Poly& num() const { return num_; }
  const std::vector<Factor>& den_factors() const { return den_; }
  Poly den() const;  // expanded denominator
  const ContextPtr& context() const { return ctx_; }
  const Poly* radicand() const;

  bool is_zero() const { return num_.is_zero(); }
  std::optional<Rational> constant_value() const;
  bool has_rad() const;
  // Highest jet order among the variables present (0 if none).
  int jet_order() const;
  bool depends_on(Var v) const;

  Ratio operator-() const;
  friend Ratio operator+(const Ratio& a, const Ratio& b);
  friend Ratio operator-(const Ratio& a, const Ratio& b);
  friend Ratio operator*(const Ratio& a, const Ratio& b);
  friend Ratio operator/(const Ratio& a, const Ratio& b);
  Ratio& operator+=(const Ratio& b) { return *this = *this + b; }
  Ratio& operator-=(const Ratio& b) { return *this = *this - b; }
  Ratio& operator*=(const Ratio& b) { return *this = *this * b; }
  Ratio pow(int k) const;

  // Bit-identical representation (not mathematical equality; see equal()).
  friend bool identical(const Ratio& a, const Ratio& b);

  std::string str() const;

 private:
  Poly num_;
  std::vector<Factor> den_;  // sorted by base
  ContextPtr ctx_;

  friend class Context;
};

bool is_zero(const Ratio& a);
// Mathematical equality: a*den(b) - b*den(a) vanishes.
bool equal(const Ratio& a, const Ratio& b);

class Context : public std::enable_shared_from_this<Context> {
 public:
  struct Declared {
    std::string name;
    std::array<Ratio, 3> partials;  // d/dt, d/dx, d/du
  };

  // radicand must be rad-free and not a rational square; declared partials
  // may only reference earlier declared atoms.
  static ContextPtr make(std::optional<Poly> radicand, std::vector<Declared> declared = {},
                         std::string rad_name = "rad");

  const Poly* radicand() const { return radicand_ ? &*radicand_ : nullptr; }
  const std::string& rad_name() const { return rad_name_; }
  const std::vector<Declared>& declared() const { return declared_; }
  std::optional<int> find_declared(std::string_view name) const;

  // The radical atom and the declared atoms as Ratios bound to this context.
  Ratio rad() const;
  Ratio atom(int index) const;

 private:
  Context() = default;
  std::optional<Poly> radicand_;
  std::vector<Declared> declared_;
  std::string rad_name_;
};

// ---------------------------------------------------------------------------
// Calculus and substitution

Ratio differentiate(const Ratio& a, Var v);

// Substitution targets.
struct FuncTarget {
  FuncName name;  // replaces the whole derivative family name^(k)
};
struct ConstTarget {};  // the formal constant c
struct RadTarget {};    // the context radical

Ratio substitute(const Ratio& a, Var v, const Ratio& replacement);
Ratio substitute(const Ratio& a, FuncTarget f, const Ratio& replacement);
Ratio substitute(const Ratio& a, ConstTarget, const Ratio& replacement);
Ratio substitute(const Ratio& a, RadTarget, const Ratio& replacement);

// ---------------------------------------------------------------------------
// Text form

class ParseError : public Error {
 public:
  enum class Kind { Syntax, UnknownSymbol };
  ParseError(Kind kind, std::size_t offset, const std::string& what);
  Kind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

Ratio parse(std::string_view text, const ContextPtr& ctx = {});
std::string print(const Ratio& a);
std::string print(const Poly& p, const Context* ctx = nullptr);

}  // namespace witt

#endif  // WITT_SYMEXPR_HPP
