#include "witt/symexpr.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace witt {

namespace {

// Contexts built separately from the same data are interchangeable.
bool same_context(const Context& a, const Context& b) {
  if (a.rad_name() != b.rad_name()) return false;
  if ((a.radicand() == nullptr) != (b.radicand() == nullptr)) return false;
  if (a.radicand() && !(*a.radicand() == *b.radicand())) return false;
  if (a.declared().size() != b.declared().size()) return false;
  for (std::size_t i = 0; i < a.declared().size(); ++i) {
    const auto& x = a.declared()[i];
    const auto& y = b.declared()[i];
    if (x.name != y.name) return false;
    for (std::size_t k = 0; k < 3; ++k)
      if (!identical(x.partials[k], y.partials[k])) return false;
  }
  return true;
}

ContextPtr join(const ContextPtr& a, const ContextPtr& b) {
  if (!a) return b;
  if (!b || a == b || same_context(*a, *b)) return a;
  throw ContextMismatch();
}

const Poly* radicand_of(const ContextPtr& ctx) { return ctx ? ctx->radicand() : nullptr; }

Poly mul(const Poly& a, const Poly& b, const ContextPtr& ctx) { return Poly::mul(a, b, radicand_of(ctx)); }

Poly power(const Poly& p, int k, const ContextPtr& ctx) {
  assert(k >= 0);
  Poly result(Rational(1));
  Poly base = p;
  while (k > 0) {
    if (k & 1) result = mul(result, base, ctx);
    k >>= 1;
    if (k > 0) base = mul(base, base, ctx);
  }
  return result;
}

Rational rational_pow(const Rational& c, int k) {
  Rational r = 1;
  const Rational b = k >= 0 ? c : Rational(1 / c);
  for (int i = 0; i < std::abs(k); ++i) r *= b;
  return r;
}

MonoKey key_pow(const MonoKey& k, int e) {
  MonoKey r = k;
  for (auto& v : r.exp) v *= e;
  for (auto& v : r.pow) v *= e;
  for (auto& s : r.syms) s.second *= e;
  return r;
}

// p = unit_coeff * unit_key * base, base normalized as in Factor.
struct Normalized {
  Rational unit_coeff;
  MonoKey unit_key;
  Poly base;  // constant 1 when p is a monomial
};

Normalized normalize_factor(const Poly& p) {
  assert(!p.is_zero() && !p.has_rad());
  const auto& terms = p.terms();
  MonoKey lo = terms.front().key;
  for (const auto& t : terms) {
    for (std::size_t i = 0; i < 3; ++i) lo.exp[i] = std::min(lo.exp[i], t.key.exp[i]);
    for (std::size_t i = 0; i < kVarCount; ++i) lo.pow[i] = std::min(lo.pow[i], t.key.pow[i]);
  }
  // Symbol minimum, where an absent symbol counts as power 0.
  SymPowers syms;
  for (const auto& t : terms)
    for (const auto& [s, e] : t.key.syms)
      if (std::none_of(syms.begin(), syms.end(), [&](const auto& q) { return q.first == s; })) syms.emplace_back(s, 0);
  MonoKey shift = lo;
  shift.syms.clear();
  for (auto& [s, m] : syms) {
    m = terms.front().key.sym_power(s);
    for (const auto& t : terms) m = std::min(m, t.key.sym_power(s));
    shift.set_sym_power(s, m);
  }

  Poly shifted = p.times_key(shift.inverse());

  mpz_class g = 0;
  mpz_class l = 1;
  for (const auto& t : shifted.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational content(g, l);
  content.canonicalize();
  if (sgn(shifted.terms().back().coeff) < 0) content = -content;
  Poly base = shifted.scaled(1 / content);
  return {content, shift, std::move(base)};
}

Poly expand(const std::vector<Factor>& den, const ContextPtr& ctx) {
  Poly r(Rational(1));
  for (const auto& f : den) r = mul(r, power(f.base, f.exp, ctx), ctx);
  return r;
}

// Merges two sorted factor lists, combining exponents with op.
template <class Op>
std::vector<Factor> merge_factors(const std::vector<Factor>& a, const std::vector<Factor>& b, Op op) {
  std::vector<Factor> out;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->base < ib->base)) {
      out.push_back({ia->base, op(ia->exp, 0)});
      ++ia;
    } else if (ia == a.end() || ib->base < ia->base) {
      out.push_back({ib->base, op(0, ib->exp)});
      ++ib;
    } else {
      out.push_back({ia->base, op(ia->exp, ib->exp)});
      ++ia;
      ++ib;
    }
  }
  std::erase_if(out, [](const Factor& f) { return f.exp == 0; });
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

Ratio::Ratio(const Rational& c) : num_(c) {}
Ratio::Ratio(long c) : num_(Rational(c)) {}

Ratio Ratio::from_poly(Poly p, ContextPtr ctx) {
  Ratio r;
  r.num_ = std::move(p);
  r.ctx_ = std::move(ctx);
  return r;
}

Ratio Ratio::make(Poly num, std::vector<Factor> den, ContextPtr ctx) {
  Ratio r;
  r.ctx_ = std::move(ctx);
  if (num.is_zero()) return r;

  std::vector<Factor> collected;
  Rational scale = 1;
  MonoKey shift;
  for (auto& f : den) {
    if (f.exp == 0) continue;
    if (f.base.is_zero()) throw DivisionByZero();
    if (f.exp < 0) {
      num = mul(num, power(f.base, -f.exp, r.ctx_), r.ctx_);
      continue;
    }
    Poly base = std::move(f.base);
    if (base.has_rad()) {
      // 1/(A + B rad) = (A - B rad) / (A^2 - B^2 radicand)
      const Poly* radicand = radicand_of(r.ctx_);
      if (radicand == nullptr) throw Error("rad without a radicand in context");
      auto [a, b] = base.split_rad();
      MonoKey rk;
      rk.rad = true;
      const Poly conj = a - b.times_key(rk);
      num = mul(num, power(conj, f.exp, r.ctx_), r.ctx_);
      base = Poly::mul(a, a, nullptr) - Poly::mul(Poly::mul(b, b, nullptr), *radicand, nullptr);
      if (base.is_zero()) throw Error("radicand is a square: quotient ring is not a domain");
    }
    auto n = normalize_factor(base);
    scale *= rational_pow(n.unit_coeff, -f.exp);
    shift = shift * key_pow(n.unit_key, -f.exp);
    if (n.base.constant_value()) continue;
    collected.push_back({std::move(n.base), f.exp});
  }
  num = num.times_key(shift).scaled(scale);

  std::sort(collected.begin(), collected.end(), [](const Factor& a, const Factor& b) { return a.base < b.base; });
  for (auto& f : collected) {
    if (!r.den_.empty() && r.den_.back().base == f.base)
      r.den_.back().exp += f.exp;
    else
      r.den_.push_back(std::move(f));
  }

  // Cancel when the numerator is itself one of the denominator factors.
  if (!r.den_.empty() && !num.has_rad() && num.size() > 1) {
    auto n = normalize_factor(num);
    auto it = std::find_if(r.den_.begin(), r.den_.end(), [&](const Factor& f) { return f.base == n.base; });
    if (it != r.den_.end()) {
      num = Poly::monomial(n.unit_key, n.unit_coeff);
      if (--it->exp == 0) r.den_.erase(it);
    }
  }
  r.num_ = std::move(num);
  return r;
}

Ratio Ratio::var(Var v) {
  MonoKey k;
  k.pow[static_cast<std::size_t>(v)] = 1;
  return from_poly(Poly::monomial(std::move(k)));
}

Ratio Ratio::exp(int a, int b, int c) {
  MonoKey k;
  k.exp = {a, b, c};
  return from_poly(Poly::monomial(std::move(k)));
}

Ratio Ratio::func(FuncName f, int order) {
  MonoKey k;
  k.set_sym_power(Sym::func(f, order), 1);
  return from_poly(Poly::monomial(std::move(k)));
}

Ratio Ratio::constant_symbol() {
  MonoKey k;
  k.set_sym_power(Sym::constant(), 1);
  return from_poly(Poly::monomial(std::move(k)));
}

Ratio Ratio::declared(int index) {
  MonoKey k;
  k.set_sym_power(Sym::declared(index), 1);
  return from_poly(Poly::monomial(std::move(k)));
}

Poly Ratio::den() const { return expand(den_, ctx_); }

const Poly* Ratio::radicand() const { return radicand_of(ctx_); }

std::optional<Rational> Ratio::constant_value() const {
  if (!den_.empty()) return std::nullopt;
  return num_.constant_value();
}

bool Ratio::has_rad() const { return num_.has_rad(); }

int Ratio::jet_order() const {
  int order = 0;
  auto scan = [&](const Poly& p) {
    for (const auto& t : p.terms())
      for (Var v : kJetVars)
        if (t.key.pow[static_cast<std::size_t>(v)] != 0) order = std::max(order, witt::jet_order(v));
  };
  scan(num_);
  for (const auto& f : den_) scan(f.base);
  return order;
}

// ---------------------------------------------------------------------------
// Arithmetic

Ratio Ratio::operator-() const {
  Ratio r = *this;
  r.num_ = -r.num_;
  return r;
}

Ratio operator+(const Ratio& a, const Ratio& b) {
  auto ctx = join(a.ctx_, b.ctx_);
  if (a.is_zero()) {
    Ratio r = b;
    r.ctx_ = ctx;
    return r;
  }
  if (b.is_zero()) {
    Ratio r = a;
    r.ctx_ = ctx;
    return r;
  }
  if (a.den_ == b.den_) return Ratio::make(a.num_ + b.num_, a.den_, ctx);
  auto lcm = merge_factors(a.den_, b.den_, [](int x, int y) { return std::max(x, y); });
  auto missing = [](const std::vector<Factor>& l, const std::vector<Factor>& d) {
    return merge_factors(l, d, [](int x, int y) { return x - y; });
  };
  Poly na = mul(a.num_, expand(missing(lcm, a.den_), ctx), ctx);
  Poly nb = mul(b.num_, expand(missing(lcm, b.den_), ctx), ctx);
  return Ratio::make(na + nb, std::move(lcm), ctx);
}

Ratio operator-(const Ratio& a, const Ratio& b) { return a + (-b); }

Ratio operator*(const Ratio& a, const Ratio& b) {
  auto ctx = join(a.ctx_, b.ctx_);
  if (a.is_zero() || b.is_zero()) return Ratio::from_poly({}, ctx);
  auto den = merge_factors(a.den_, b.den_, [](int x, int y) { return x + y; });
  return Ratio::make(mul(a.num_, b.num_, ctx), std::move(den), ctx);
}

Ratio operator/(const Ratio& a, const Ratio& b) {
  if (b.is_zero()) throw DivisionByZero();
  auto ctx = join(a.ctx_, b.ctx_);
  if (a.is_zero()) return Ratio::from_poly({}, ctx);
  // Denominator factors shared by a and b cancel.
  auto den = merge_factors(a.den_, b.den_, [](int x, int y) { return x - y; });
  std::vector<Factor> pos;
  std::vector<Factor> neg;
  for (auto& f : den) (f.exp > 0 ? pos : neg).push_back(f);
  for (auto& f : neg) f.exp = -f.exp;
  Poly num = mul(a.num_, expand(neg, ctx), ctx);
  pos.push_back({b.num_, 1});
  return Ratio::make(std::move(num), std::move(pos), ctx);
}

Ratio Ratio::pow(int k) const {
  if (k < 0) return Ratio(1) / pow(-k);
  Ratio r;
  r.ctx_ = ctx_;
  if (k == 0) {
    r.num_ = Poly(Rational(1));
    return r;
  }
  r.num_ = power(num_, k, ctx_);
  for (const auto& f : den_) r.den_.push_back({f.base, f.exp * k});
  return r;
}

bool identical(const Ratio& a, const Ratio& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

bool is_zero(const Ratio& a) { return a.is_zero(); }

bool equal(const Ratio& a, const Ratio& b) { return (a - b).is_zero(); }

std::string Ratio::str() const { return print(*this); }

// ---------------------------------------------------------------------------
// Context

ContextPtr Context::make(std::optional<Poly> radicand, std::vector<Declared> declared, std::string rad_name) {
  if (radicand) {
    if (radicand->has_rad()) throw Error("radicand must not contain rad");
    if (radicand->is_zero()) throw Error("radicand must be nonzero");
    if (auto c = radicand->constant_value()) {
      mpz_class n = c->get_num();
      mpz_class d = c->get_den();
      if (sgn(n) > 0 && mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t()))
        throw Error("radicand is a rational square; substitute its root instead");
    }
  }
  std::shared_ptr<Context> ctx(new Context());
  ctx->radicand_ = std::move(radicand);
  ctx->declared_ = std::move(declared);
  ctx->rad_name_ = std::move(rad_name);
  return ctx;
}

std::optional<int> Context::find_declared(std::string_view name) const {
  for (std::size_t i = 0; i < declared_.size(); ++i)
    if (declared_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

Ratio Context::rad() const {
  if (!radicand_) throw Error("context has no radical");
  MonoKey k;
  k.rad = true;
  return Ratio::from_poly(Poly::monomial(std::move(k)), shared_from_this());
}

Ratio Context::atom(int index) const {
  if (index < 0 || static_cast<std::size_t>(index) >= declared_.size()) throw Error("unknown declared atom");
  Ratio r = Ratio::declared(index);
  r.ctx_ = shared_from_this();
  return r;
}

}  // namespace witt
