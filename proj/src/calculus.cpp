#include "witt/symexpr.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace witt {

namespace {

std::size_t idx(Var v) { return static_cast<std::size_t>(v); }

const Context::Declared& declared_entry(const ContextPtr& ctx, int index) {
  if (!ctx || static_cast<std::size_t>(index) >= ctx->declared().size())
    throw Error("declared atom used outside its context");
  return ctx->declared()[static_cast<std::size_t>(index)];
}

bool poly_depends(const Poly& p, Var v, const ContextPtr& ctx);

bool key_depends(const MonoKey& k, Var v, const ContextPtr& ctx) {
  if (k.pow[idx(v)] != 0) return true;
  if (!is_base_var(v)) return false;
  if (k.exp[idx(v)] != 0) return true;
  for (const auto& [s, e] : k.syms) {
    if (s.kind == SymKind::Func && func_arg(static_cast<FuncName>(s.id)) == v) return true;
    if (s.kind == SymKind::Declared && !declared_entry(ctx, s.id).partials[idx(v)].is_zero()) return true;
  }
  if (k.rad && ctx && ctx->radicand() && poly_depends(*ctx->radicand(), v, ctx)) return true;
  return false;
}

bool poly_depends(const Poly& p, Var v, const ContextPtr& ctx) {
  for (const auto& t : p.terms())
    if (key_depends(t.key, v, ctx)) return true;
  return false;
}

Ratio diff_poly(const Poly& p, Var v, const ContextPtr& ctx) {
  std::vector<Term> plain;
  std::vector<Term> rad_terms;
  std::map<int, std::vector<Term>> declared_terms;
  const bool base = is_base_var(v);
  for (const auto& t : p.terms()) {
    if (base && t.key.exp[idx(v)] != 0) plain.push_back({t.key, t.coeff * t.key.exp[idx(v)]});
    if (const auto e = t.key.pow[idx(v)]; e != 0) {
      MonoKey k = t.key;
      k.pow[idx(v)] -= 1;
      plain.push_back({std::move(k), t.coeff * e});
    }
    if (!base) continue;
    for (const auto& [s, e] : t.key.syms) {
      if (s.kind == SymKind::Func && func_arg(static_cast<FuncName>(s.id)) == v) {
        MonoKey k = t.key;
        k.set_sym_power(s, e - 1);
        Sym next = s;
        ++next.order;
        k.set_sym_power(next, k.sym_power(next) + 1);
        plain.push_back({std::move(k), t.coeff * e});
      } else if (s.kind == SymKind::Declared) {
        MonoKey k = t.key;
        k.set_sym_power(s, e - 1);
        declared_terms[s.id].push_back({std::move(k), t.coeff * e});
      }
    }
    if (t.key.rad) rad_terms.push_back(t);
  }

  Ratio result = Ratio::from_poly(Poly::from_terms(std::move(plain)), ctx);
  if (!rad_terms.empty()) {
    // d rad = rad * d(radicand) / (2 radicand)
    const Poly& radicand = *ctx->radicand();
    Ratio dp = diff_poly(radicand, v, ctx);
    if (!dp.is_zero()) {
      Ratio part = Ratio::from_poly(Poly::from_terms(std::move(rad_terms)), ctx);
      result += part * dp / (Ratio(2) * Ratio::from_poly(radicand, ctx));
    }
  }
  for (auto& [id, terms] : declared_terms) {
    const Ratio& partial = declared_entry(ctx, id).partials[idx(v)];
    if (partial.is_zero()) continue;
    result += Ratio::from_poly(Poly::from_terms(std::move(terms)), ctx) * partial;
  }
  return result;
}

// Homomorphic substitution. split(key) separates the part of a key carrying
// the target generators; image maps that part to its replacement.
template <class Split, class Image>
Ratio substitute_poly(const Poly& p, const ContextPtr& ctx, Split split, Image image) {
  std::map<MonoKey, std::vector<Term>> groups;
  for (const auto& t : p.terms()) {
    auto [target, rest] = split(t.key);
    groups[target].push_back({std::move(rest), t.coeff});
  }
  Ratio result = Ratio::from_poly({}, ctx);
  for (auto& [target, rest] : groups) {
    Ratio rest_part = Ratio::from_poly(Poly::from_terms(std::move(rest)), ctx);
    result += target.is_one() ? rest_part : image(target) * rest_part;
  }
  return result;
}

template <class Split, class Image>
Ratio substitute_ratio(const Ratio& a, Split split, Image image) {
  Ratio result = substitute_poly(a.num(), a.context(), split, image);
  for (const auto& f : a.den_factors()) {
    Ratio base = substitute_poly(f.base, a.context(), split, image);
    if (base.is_zero()) throw DivisionByZero();
    result = result / base.pow(f.exp);
  }
  return result;
}

void require_free_of(const Ratio& r, std::initializer_list<Var> vars, const char* what) {
  for (Var v : vars)
    if (r.depends_on(v)) throw SubstitutionError(std::string("replacement for ") + what + " depends on " + std::string(var_name(v)));
}

void require_radicand_free(const Ratio& a, const std::function<bool(const MonoKey&)>& touches) {
  if (!a.has_rad() || !a.radicand()) return;
  for (const auto& t : a.radicand()->terms())
    if (touches(t.key)) throw SubstitutionError("substitution would change the radicand");
}

}  // namespace

bool Ratio::depends_on(Var v) const {
  if (poly_depends(num_, v, ctx_)) return true;
  for (const auto& f : den_)
    if (poly_depends(f.base, v, ctx_)) return true;
  return false;
}

Ratio differentiate(const Ratio& a, Var v) {
  const auto& ctx = a.context();
  if (a.is_zero()) return a;
  Ratio inv_den = Ratio::make(Poly(Rational(1)), a.den_factors(), ctx);
  Ratio result = diff_poly(a.num(), v, ctx) * inv_den;
  if (a.den_factors().empty()) return result;
  const Ratio num = Ratio::from_poly(a.num(), ctx);
  for (const auto& f : a.den_factors()) {
    Ratio df = diff_poly(f.base, v, ctx);
    if (df.is_zero()) continue;
    // d(f^-k) = -k f' f^(-k-1)
    Ratio once = Ratio::make(Poly(Rational(1)), {Factor{f.base, 1}}, ctx);
    result -= num * Ratio(f.exp) * df * inv_den * once;
  }
  return result;
}

Ratio substitute(const Ratio& a, Var v, const Ratio& replacement) {
  if (replacement.depends_on(v)) throw SubstitutionError("occurrence check: replacement contains " + std::string(var_name(v)));
  if (is_base_var(v)) {
    // Only the bare variable may carry v; other generators would need a chain rule.
    auto others = [&](const Poly& p) {
      for (const auto& t : p.terms()) {
        MonoKey k = t.key;
        k.pow[idx(v)] = 0;
        if (key_depends(k, v, a.context())) return true;
      }
      return false;
    };
    bool bad = others(a.num());
    for (const auto& f : a.den_factors()) bad = bad || others(f.base);
    if (bad) throw SubstitutionError("variable " + std::string(var_name(v)) + " occurs inside another generator");
  }
  auto split = [v](const MonoKey& k) {
    MonoKey target;
    MonoKey rest = k;
    target.pow[idx(v)] = k.pow[idx(v)];
    rest.pow[idx(v)] = 0;
    return std::pair{std::move(target), std::move(rest)};
  };
  auto image = [&](const MonoKey& target) { return replacement.pow(target.pow[idx(v)]); };
  return substitute_ratio(a, split, image);
}

Ratio substitute(const Ratio& a, FuncTarget f, const Ratio& replacement) {
  const Var arg = func_arg(f.name);
  for (Var v : kBaseVars)
    if (v != arg) require_free_of(replacement, {v}, "function symbol");
  require_free_of(replacement, {Var::ut, Var::ux, Var::utt, Var::utx, Var::uxx}, "function symbol");
  auto is_target = [&](const Sym& s) { return s.kind == SymKind::Func && s.id == static_cast<std::uint8_t>(f.name); };
  require_radicand_free(a, [&](const MonoKey& k) {
    return std::any_of(k.syms.begin(), k.syms.end(), [&](const auto& e) { return is_target(e.first); });
  });
  std::vector<Ratio> derivs{replacement};
  auto derivative = [&](int order) -> const Ratio& {
    while (derivs.size() <= static_cast<std::size_t>(order)) derivs.push_back(differentiate(derivs.back(), arg));
    return derivs[static_cast<std::size_t>(order)];
  };
  auto split = [&](const MonoKey& k) {
    MonoKey target;
    MonoKey rest = k;
    for (const auto& [s, e] : k.syms)
      if (is_target(s)) {
        target.set_sym_power(s, e);
        rest.set_sym_power(s, 0);
      }
    return std::pair{std::move(target), std::move(rest)};
  };
  auto image = [&](const MonoKey& target) {
    Ratio r(1);
    for (const auto& [s, e] : target.syms) r *= derivative(s.order).pow(e);
    return r;
  };
  return substitute_ratio(a, split, image);
}

Ratio substitute(const Ratio& a, ConstTarget, const Ratio& replacement) {
  require_free_of(replacement, {Var::t, Var::x, Var::u, Var::ut, Var::ux, Var::utt, Var::utx, Var::uxx}, "c");
  const Sym c = Sym::constant();
  require_radicand_free(a, [&](const MonoKey& k) { return k.sym_power(c) != 0; });
  auto split = [&](const MonoKey& k) {
    MonoKey target;
    MonoKey rest = k;
    target.set_sym_power(c, k.sym_power(c));
    rest.set_sym_power(c, 0);
    return std::pair{std::move(target), std::move(rest)};
  };
  auto image = [&](const MonoKey& target) { return replacement.pow(target.sym_power(c)); };
  return substitute_ratio(a, split, image);
}

Ratio substitute(const Ratio& a, RadTarget, const Ratio& replacement) {
  const Poly* radicand = a.radicand();
  if (radicand == nullptr) return a;
  if (replacement.has_rad()) throw SubstitutionError("replacement for rad contains rad");
  if (!equal(replacement * replacement, Ratio::from_poly(*radicand))) throw SubstitutionError("replacement squared is not the radicand");
  auto split = [](const MonoKey& k) {
    MonoKey target;
    MonoKey rest = k;
    target.rad = k.rad;
    rest.rad = false;
    return std::pair{std::move(target), std::move(rest)};
  };
  auto image = [&](const MonoKey&) { return replacement; };
  return substitute_ratio(a, split, image);
}

}  // namespace witt
