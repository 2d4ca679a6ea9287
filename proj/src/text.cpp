#include "witt/symexpr.hpp"

#include <cctype>
#include <sstream>

namespace witt {

ParseError::ParseError(Kind kind, std::size_t offset, const std::string& what)
    : Error(what + " at offset " + std::to_string(offset)), kind_(kind), offset_(offset) {}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_linear(std::ostream& os, const std::array<std::int32_t, 3>& e) {
  bool first = true;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto c = e[i];
    if (c == 0) continue;
    if (c < 0)
      os << '-';
    else if (!first)
      os << '+';
    if (std::abs(c) != 1) os << std::abs(c) << '*';
    os << var_name(kBaseVars[i]);
    first = false;
  }
}

void print_power(std::ostream& os, std::int32_t p) {
  if (p != 1) os << '^' << p;
}

// Generators of a key joined with '*'; empty for the unit key.
std::string key_string(const MonoKey& k, const Context* ctx) {
  std::ostringstream os;
  bool any = false;
  auto sep = [&] {
    if (any) os << '*';
    any = true;
  };
  if (k.exp != std::array<std::int32_t, 3>{}) {
    sep();
    os << "exp(";
    print_linear(os, k.exp);
    os << ')';
  }
  for (std::size_t i = 0; i < kVarCount; ++i) {
    if (k.pow[i] == 0) continue;
    sep();
    os << var_name(static_cast<Var>(i));
    print_power(os, k.pow[i]);
  }
  for (const auto& [s, e] : k.syms) {
    sep();
    switch (s.kind) {
      case SymKind::Func: {
        const auto f = static_cast<FuncName>(s.id);
        os << func_name(f) << std::string(s.order, '\'') << '(' << var_name(func_arg(f)) << ')';
        break;
      }
      case SymKind::Const:
        os << 'c';
        break;
      case SymKind::Declared:
        if (ctx != nullptr && s.id < ctx->declared().size())
          os << ctx->declared()[s.id].name;
        else
          os << "declared" << static_cast<int>(s.id);
        break;
    }
    print_power(os, e);
  }
  if (k.rad) {
    sep();
    os << (ctx != nullptr ? ctx->rad_name() : std::string("rad"));
  }
  return os.str();
}

}  // namespace

std::string print(const Poly& p, const Context* ctx) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Descending key order reads naturally ("exp(x) - 1").
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const Rational& c = it->coeff;
    const bool negative = sgn(c) < 0;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    const Rational mag = abs(c);
    const std::string gens = key_string(it->key, ctx);
    if (gens.empty()) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << gens;
    }
  }
  return os.str();
}

std::string print(const Ratio& a) {
  const Context* ctx = a.context().get();
  if (a.den_factors().empty()) return print(a.num(), ctx);
  const bool several = a.den_factors().size() > 1;
  std::string out = "(" + print(a.num(), ctx) + ")/";
  if (several) out += '(';
  bool first = true;
  for (const auto& f : a.den_factors()) {
    if (!first) out += '*';
    first = false;
    out += "(" + print(f.base, ctx) + ")";
    if (f.exp != 1) out += "^" + std::to_string(f.exp);
  }
  if (several) out += ')';
  return out;
}

// ---------------------------------------------------------------------------
// Parsing
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' ['-'] int | '^' '(' ['-'] int ')')?
//   primary := int | '(' expr ')' | 'exp' '(' expr ')' | ident

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ContextPtr& ctx) : text_(text), ctx_(ctx) {}

  Ratio run() {
    Ratio r = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(ParseError::Kind::Syntax, pos_, what); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Ratio expr() {
    Ratio r = term();
    for (;;) {
      if (accept('+'))
        r += term();
      else if (accept('-'))
        r -= term();
      else
        return r;
    }
  }

  Ratio term() {
    Ratio r = unary();
    for (;;) {
      if (accept('*')) {
        r *= unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        Ratio d = unary();
        if (d.is_zero()) throw ParseError(ParseError::Kind::Syntax, at, "division by zero");
        r = r / d;
      } else {
        return r;
      }
    }
  }

  Ratio unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  long integer_exponent() {
    const bool paren = accept('(');
    const bool negative = accept('-');
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    const long value = std::stol(std::string(text_.substr(start, pos_ - start)));
    if (paren) expect(')');
    return negative ? -value : value;
  }

  Ratio power() {
    Ratio base = primary();
    if (accept('^')) {
      const std::size_t at = pos_;
      const long k = integer_exponent();
      if (k < 0 && base.is_zero()) throw ParseError(ParseError::Kind::Syntax, at, "division by zero");
      return base.pow(static_cast<int>(k));
    }
    return base;
  }

  Ratio primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Ratio(Rational(mpz_class(std::string(text_.substr(start, pos_ - start)))));
    }
    if (c == '(') {
      ++pos_;
      Ratio r = expr();
      expect(')');
      return r;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Ratio exponential() {
    expect('(');
    const std::size_t at = pos_;
    Ratio arg = expr();
    expect(')');
    std::array<int, 3> coeffs{};
    auto bad = [&] { throw ParseError(ParseError::Kind::Syntax, at, "exp argument must be an integer combination of t, x, u"); };
    if (!arg.den_factors().empty()) bad();
    for (const auto& term : arg.num().terms()) {
      if (term.coeff.get_den() != 1) bad();
      const MonoKey& k = term.key;
      if (k.rad || !k.syms.empty() || k.exp != std::array<std::int32_t, 3>{}) bad();
      int which = -1;
      for (std::size_t i = 0; i < kVarCount; ++i) {
        if (k.pow[i] == 0) continue;
        if (which != -1 || k.pow[i] != 1 || i >= 3) bad();
        which = static_cast<int>(i);
      }
      if (which == -1) bad();
      coeffs[static_cast<std::size_t>(which)] = static_cast<int>(term.coeff.get_num().get_si());
    }
    return Ratio::exp(coeffs[0], coeffs[1], coeffs[2]);
  }

  Ratio identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    auto unknown = [&] { throw ParseError(ParseError::Kind::UnknownSymbol, start, "unknown symbol '" + std::string(name) + "'"); };

    if (name == "exp") return exponential();
    if (auto v = var_from_name(name)) return Ratio::var(*v);
    if (name == "c") return Ratio::constant_symbol();
    if (auto f = func_from_name(name)) {
      int order = 0;
      while (pos_ < text_.size() && text_[pos_] == '\'') {
        ++order;
        ++pos_;
      }
      expect('(');
      skip();
      const std::size_t arg_start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const auto arg = var_from_name(text_.substr(arg_start, pos_ - arg_start));
      if (!arg || *arg != func_arg(*f))
        throw ParseError(ParseError::Kind::UnknownSymbol, arg_start,
                         std::string(name) + " takes argument " + std::string(var_name(func_arg(*f))));
      expect(')');
      return Ratio::func(*f, order);
    }
    if (ctx_) {
      if (ctx_->radicand() && name == ctx_->rad_name()) return ctx_->rad();
      if (auto d = ctx_->find_declared(name)) return ctx_->atom(*d);
    }
    unknown();
    return {};
  }

  std::string_view text_;
  const ContextPtr& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Ratio parse(std::string_view text, const ContextPtr& ctx) {
  Ratio r = Parser(text, ctx).run();
  if (ctx && !r.context()) r = r + Ratio::from_poly({}, ctx);
  return r;
}

}  // namespace witt
