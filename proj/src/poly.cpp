#include "witt/symexpr.hpp"

#include <algorithm>
#include <cassert>

namespace witt {

namespace {

constexpr std::array<std::string_view, kVarCount> kVarNames{"t", "x", "u", "u_t", "u_x", "u_tt", "u_tx", "u_xx"};
constexpr std::array<std::string_view, 4> kFuncNames{"phi", "f", "g", "h"};
constexpr std::array<Var, 4> kFuncArgs{Var::u, Var::t, Var::x, Var::t};

std::strong_ordering cmp_rational(const Rational& a, const Rational& b) {
  const int c = cmp(a, b);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

}  // namespace

std::string_view var_name(Var v) { return kVarNames[static_cast<std::size_t>(v)]; }

std::optional<Var> var_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kVarCount; ++i)
    if (kVarNames[i] == name) return static_cast<Var>(i);
  if (name == "u_xt") return Var::utx;
  return std::nullopt;
}

int jet_order(Var v) {
  switch (v) {
    case Var::t:
    case Var::x:
    case Var::u:
      return 0;
    case Var::ut:
    case Var::ux:
      return 1;
    default:
      return 2;
  }
}

std::string_view func_name(FuncName f) { return kFuncNames[static_cast<std::size_t>(f)]; }
Var func_arg(FuncName f) { return kFuncArgs[static_cast<std::size_t>(f)]; }

std::optional<FuncName> func_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kFuncNames.size(); ++i)
    if (kFuncNames[i] == name) return static_cast<FuncName>(i);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// MonoKey

bool MonoKey::is_one() const {
  return !rad && syms.empty() && std::all_of(exp.begin(), exp.end(), [](auto e) { return e == 0; }) &&
         std::all_of(pow.begin(), pow.end(), [](auto e) { return e == 0; });
}

std::int32_t MonoKey::sym_power(const Sym& s) const {
  for (const auto& [sym, p] : syms)
    if (sym == s) return p;
  return 0;
}

void MonoKey::set_sym_power(const Sym& s, std::int32_t p) {
  auto it = std::lower_bound(syms.begin(), syms.end(), s, [](const auto& e, const Sym& k) { return e.first < k; });
  if (it != syms.end() && it->first == s) {
    if (p == 0)
      syms.erase(it);
    else
      it->second = p;
  } else if (p != 0) {
    syms.insert(it, {s, p});
  }
}

MonoKey operator*(const MonoKey& a, const MonoKey& b) {
  assert(!(a.rad && b.rad));
  MonoKey r;
  for (std::size_t i = 0; i < 3; ++i) r.exp[i] = a.exp[i] + b.exp[i];
  for (std::size_t i = 0; i < kVarCount; ++i) r.pow[i] = a.pow[i] + b.pow[i];
  r.rad = a.rad || b.rad;
  auto ia = a.syms.begin();
  auto ib = b.syms.begin();
  while (ia != a.syms.end() || ib != b.syms.end()) {
    if (ib == b.syms.end() || (ia != a.syms.end() && ia->first < ib->first)) {
      r.syms.push_back(*ia++);
    } else if (ia == a.syms.end() || ib->first < ia->first) {
      r.syms.push_back(*ib++);
    } else {
      if (const auto p = ia->second + ib->second; p != 0) r.syms.emplace_back(ia->first, p);
      ++ia;
      ++ib;
    }
  }
  return r;
}

MonoKey MonoKey::inverse() const {
  assert(!rad);
  MonoKey r = *this;
  for (auto& e : r.exp) e = -e;
  for (auto& e : r.pow) e = -e;
  for (auto& s : r.syms) s.second = -s.second;
  return r;
}

bool operator==(const MonoKey& a, const MonoKey& b) {
  return a.exp == b.exp && a.pow == b.pow && a.rad == b.rad && a.syms == b.syms;
}

std::strong_ordering operator<=>(const MonoKey& a, const MonoKey& b) {
  if (auto c = a.exp <=> b.exp; c != 0) return c;
  if (auto c = a.pow <=> b.pow; c != 0) return c;
  const auto n = std::min(a.syms.size(), b.syms.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.syms[i].first <=> b.syms[i].first; c != 0) return c;
    if (auto c = a.syms[i].second <=> b.syms[i].second; c != 0) return c;
  }
  if (auto c = a.syms.size() <=> b.syms.size(); c != 0) return c;
  return a.rad <=> b.rad;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(const Rational& c) {
  if (sgn(c) != 0) terms_.push_back({MonoKey{}, c});
}

Poly Poly::monomial(MonoKey key, Rational coeff) {
  Poly p;
  if (sgn(coeff) != 0) p.terms_.push_back({std::move(key), std::move(coeff)});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.key < b.key; });
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().key == t.key) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
  return p;
}

Poly Poly::from_sorted(std::vector<Term> terms) {
  Poly p;
  p.terms_ = std::move(terms);
  return p;
}

std::optional<Rational> Poly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].key.is_one()) return terms_[0].coeff;
  return std::nullopt;
}

bool Poly::has_rad() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.key.rad; });
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

Poly merge(const Poly& a, const Poly& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  const auto ea = a.terms().end();
  const auto eb = b.terms().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->key < ib->key)) {
      out.push_back(*ia++);
    } else if (ia == ea || ib->key < ia->key) {
      out.push_back({ib->key, subtract ? Rational(-ib->coeff) : ib->coeff});
      ++ib;
    } else {
      Rational c = subtract ? Rational(ia->coeff - ib->coeff) : Rational(ia->coeff + ib->coeff);
      if (sgn(c) != 0) out.push_back({ia->key, std::move(c)});
      ++ia;
      ++ib;
    }
  }
  return Poly::from_sorted(std::move(out));
}

}  // namespace

Poly operator+(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return merge(a, b, false);
}

Poly operator-(const Poly& a, const Poly& b) {
  if (b.is_zero()) return a;
  return merge(a, b, true);
}

Poly Poly::scaled(const Rational& c) const {
  if (sgn(c) == 0) return {};
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Poly Poly::times_key(const MonoKey& k) const {
  if (k.is_one()) return *this;
  Poly r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.key * k, t.coeff});
  // Shifting exponents preserves the order; merging symbol lists may not.
  if (k.rad || !k.syms.empty()) return from_terms(std::move(r.terms_));
  return r;
}

Poly Poly::mul(const Poly& a, const Poly& b, const Poly* radicand) {
  if (a.is_zero() || b.is_zero()) return {};
  if (auto c = a.constant_value()) return b.scaled(*c);
  if (auto c = b.constant_value()) return a.scaled(*c);
  std::vector<Term> out;
  out.reserve(a.size() * b.size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      if (ta.key.rad && tb.key.rad) {
        if (radicand == nullptr) throw Error("rad*rad without a radicand in context");
        MonoKey ka = ta.key;
        MonoKey kb = tb.key;
        ka.rad = kb.rad = false;
        const MonoKey k = ka * kb;
        const Rational c = ta.coeff * tb.coeff;
        for (const auto& tr : radicand->terms_) out.push_back({k * tr.key, c * tr.coeff});
      } else {
        out.push_back({ta.key * tb.key, ta.coeff * tb.coeff});
      }
    }
  }
  return from_terms(std::move(out));
}

std::pair<Poly, Poly> Poly::split_rad() const {
  Poly a;
  Poly b;
  for (const auto& t : terms_) {
    if (t.key.rad) {
      MonoKey k = t.key;
      k.rad = false;
      b.terms_.push_back({std::move(k), t.coeff});
    } else {
      a.terms_.push_back(t);
    }
  }
  // Clearing the rad flag keeps relative order among rad terms.
  return {std::move(a), std::move(b)};
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].key == b.terms_[i].key) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  const auto n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.terms_[i].key <=> b.terms_[i].key; c != 0) return c;
    if (auto c = cmp_rational(a.terms_[i].coeff, b.terms_[i].coeff); c != 0) return c;
  }
  return a.terms_.size() <=> b.terms_.size();
}

}  // namespace witt
