#include "witt/catalog.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <string>
#include <utility>

namespace witt {

namespace {

struct IdInfo {
  RealizationId id;
  const char* name;
  std::uint32_t fields;
};

constexpr std::uint32_t kW4Fields = kGamma | kSign | kFSign | kPhi;

const std::array<IdInfo, 33> kIds{{
    {RealizationId::W1, "W1", 0},
    {RealizationId::W2, "W2", kAlpha},
    {RealizationId::W3, "W3", kGamma},
    {RealizationId::W4, "W4", kW4Fields},
    {RealizationId::W5, "W5", kSign},
    {RealizationId::W6, "W6", kGamma},
    {RealizationId::W7, "W7", kGamma | kPhi},
    {RealizationId::W8, "W8", kGamma},
    {RealizationId::W9, "W9", kPhi},
    {RealizationId::W10, "W10", 0},
    {RealizationId::W11, "W11", kAlpha},
    {RealizationId::REP1, "REP1", 0},
    {RealizationId::REP2, "REP2", kAlpha | kBeta | kPhi},
    {RealizationId::D1, "D1", 0},
    {RealizationId::D2, "D2", 0},
    {RealizationId::D3, "D3", 0},
    {RealizationId::D4, "D4", kGamma},
    {RealizationId::D5, "D5", kGamma},
    {RealizationId::D6, "D6", kSign},
    {RealizationId::D7, "D7", kGamma},
    {RealizationId::D8, "D8", kPhi},
    {RealizationId::D9, "D9", kW4Fields},
    {RealizationId::D10, "D10", kGamma | kPhi},
    {RealizationId::C1, "C1", 0},
    {RealizationId::C2, "C2", kLambda},
    {RealizationId::C3, "C3", 0},
    {RealizationId::C4, "C4", 0},
    {RealizationId::C5, "C5", 0},
    {RealizationId::C6, "C6", 0},
    {RealizationId::V4_CASE1, "V4_CASE1", 0},
    {RealizationId::V4_CASE2, "V4_CASE2", 0},
    {RealizationId::LIOUVILLE_F, "LIOUVILLE_F", 0},
    {RealizationId::LIOUVILLE_G, "LIOUVILLE_G", 0},
}};

const IdInfo& info(RealizationId id) { return kIds[static_cast<std::size_t>(id)]; }

Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

int sgn(int n) { return (n > 0) - (n < 0); }

// sum_{j=1}^{|n|-1} j(j+1)
long sum_jj1(int n) {
  long s = 0;
  for (long j = 1; j <= std::abs(n) - 1; ++j) s += j * (j + 1);
  return s;
}

// sum_{j=1}^{|n|-1} (2j+1)
long sum_odd(int n) {
  long s = 0;
  for (long j = 1; j <= std::abs(n) - 1; ++j) s += 2 * j + 1;
  return s;
}

// sum_{j=1}^{|n|} j(j-1)
long sum_jjm1(int n) {
  long s = 0;
  for (long j = 1; j <= std::abs(n); ++j) s += j * (j - 1);
  return s;
}

// Coordinate roles: families written in (t, x) are reused on (x, u).
struct Plane {
  std::size_t a;
  std::size_t b;
};
constexpr Plane kTX{0, 1};
constexpr Plane kXU{1, 2};

Ratio E(Plane pl, int p, int r) {
  std::array<int, 3> e{};
  e[pl.a] += p;
  e[pl.b] += r;
  return Ratio::exp(e[0], e[1], e[2]);
}

VectorField on(Plane pl, Ratio ca, Ratio cb) {
  VectorField v;
  v[pl.a] = std::move(ca);
  v[pl.b] = std::move(cb);
  return v;
}

VectorField w1(Plane pl, int n) { return on(pl, E(pl, -n, 0), 0); }

VectorField w2(Plane pl, int n, int alpha) {
  const Ratio e = E(pl, -n, 0);
  return on(pl, e, e * (Ratio(n) + Ratio(q(n * (n - 1) * alpha, 2)) * E(pl, 0, -1)));
}

VectorField w3(Plane pl, int n, int gamma, const Rational& last) {
  const Ratio base = E(pl, -n, n - 1);
  const Ratio d = E(pl, 0, 1) - Ratio(gamma);
  const Ratio tau = base * (E(pl, 0, 2) - Ratio((n + 1) * gamma) * E(pl, 0, 1) + Ratio(q(n * (n + 1), 2) * last)) *
                    d.pow(-n - 1);
  const Ratio xi = base * (Ratio(n) * E(pl, 0, 1) - Ratio(q(n * (n + 1) * gamma, 2))) * d.pow(-n);
  return on(pl, tau, xi);
}

VectorField w5(Plane pl, int n, int s) {
  const Ratio base = E(pl, -n, n - 1);
  const Ratio d = E(pl, 0, 1) + Ratio(s);
  return on(pl, base * (E(pl, 0, 1) + Ratio(s * n)) * d.pow(-n), Ratio(n) * base * d.pow(1 - n));
}

VectorField w6(Plane pl, int n, int gamma) {
  const Ratio e = E(pl, -n, 0);
  const Ratio d = E(pl, 0, 1) - Ratio(gamma);
  return on(pl, e, Ratio(gamma) * e * (E(pl, 0, n) - d.pow(n)) * d.pow(1 - n));
}

VectorField w8(Plane pl, int n, int gamma) {
  const Ratio e = E(pl, -n, 0);
  return on(pl, e, e * (Ratio(n) - Ratio(q(sgn(n) * gamma * sum_jj1(n), 2)) * E(pl, 0, -2)));
}

VectorField w9(Plane pl, int n, const Ratio& phi) {
  const Ratio base = E(pl, -n, n - 1);
  const Ratio d = E(pl, 0, 1) - Ratio(1);
  const Ratio corr = Ratio(q(sgn(n) * sum_jj1(n), 2)) * phi;
  const long s2 = sum_odd(n);
  const Ratio tau = base * d.pow(-n - 2) *
                    (Ratio((-1 + s2) * n) + Ratio(2 * n + 1) * E(pl, 0, 1) - Ratio(n + 2) * E(pl, 0, 2) +
                     E(pl, 0, 3) + corr);
  const Ratio xi = base * d.pow(-n - 1) *
                   (Ratio((1 - s2) * n) - Ratio(2 * n) * E(pl, 0, 1) + Ratio(n) * E(pl, 0, 2) - corr);
  return on(pl, tau, xi);
}

VectorField w10(int n) {
  const Ratio e = Ratio::exp(-n, 0, 0);
  return {e, Ratio(n) * e, Ratio(q(sgn(n) * sum_jjm1(n), 2)) * Ratio::exp(-n, -2, 0)};
}

VectorField w11(int n, int alpha) {
  const Ratio e = Ratio::exp(-n, 0, 0);
  return {e, e * (Ratio(n) + Ratio(q(alpha * n * (n - 1), 2)) * Ratio::exp(0, -1, 0)),
          Ratio(q(n * (n - 1), 2)) * Ratio::exp(-n, -1, 0)};
}

// Shared seeds L0, L1, L-1 of the two recursive families.
VectorField seed_l1(Plane pl) { return on(pl, E(pl, -1, 0), E(pl, -1, 0)); }

VectorField seed_lm1(Plane pl, int gamma, const Ratio& phi) {
  const Ratio e = E(pl, 1, 0);
  return on(pl, e * (Ratio(1) + Ratio(gamma) * E(pl, 0, -2)),
            e * (Ratio(-1) + Ratio(gamma) * E(pl, 0, -2) + E(pl, 0, -1) * phi));
}

std::optional<Rational> rational_sqrt(const Rational& v) {
  if (v < 0) return std::nullopt;
  const mpz_class& n = v.get_num();
  const mpz_class& d = v.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return q(0) + Rational(rn, rd);
}

// The square root of 4 gamma + phi^2, as a rational when it is one.
struct Root {
  ContextPtr ctx;
  Ratio r;
};

Root root_of(int gamma, const Phi& phi) {
  if (phi.kind == Phi::Kind::constant) {
    const Rational p = 4 * gamma + phi.value * phi.value;
    if (p < 0) throw ParamError("4*gamma + phi^2 is negative: non-real radical");
    if (auto s = rational_sqrt(p)) return {nullptr, Ratio(*s)};
    auto ctx = Context::make(Poly(p));
    return {ctx, ctx->rad()};
  }
  if (phi.kind != Phi::Kind::u && phi.kind != Phi::Kind::symbol) throw ParamError("phi must be u, c or a constant here");
  const Ratio p = Ratio(4 * gamma) + phi.expr() * phi.expr();
  auto ctx = Context::make(p.num());
  return {ctx, ctx->rad()};
}

struct Seeds {
  VectorField l2;
  VectorField lm2;
};

Seeds w4_seeds(Plane pl, int gamma, int s1, int s2, const Phi& phi) {
  const Root root = root_of(gamma, phi);
  const Ratio ph = phi.expr();
  const Ratio g(gamma);
  const Ratio p32 = (Ratio(4 * gamma) + ph * ph) * root.r;
  const Ratio ph2 = ph * ph, ph3 = ph2 * ph, ph4 = ph3 * ph, ph5 = ph4 * ph;
  const Ratio S1(s1), S2(s2);
  auto e = [&](int k) { return E(pl, 0, k); };

  const Ratio inner = Ratio(6) * g * ph + ph3 + S1 * p32;
  const Ratio half(q(1, 2));
  Seeds s;
  s.lm2 = on(pl, E(pl, 2, 0) * (Ratio(1) + Ratio(3) * g * e(-2) - half * e(-3) * inner),
             E(pl, 2, 0) * (Ratio(-2) + Ratio(3) * e(-1) * ph + Ratio(6) * g * e(-2) - half * e(-3) * inner));

  const Ratio tail = Ratio(-64) * g * g - Ratio(54) * g * ph2 - Ratio(9) * ph4 - S2 * Ratio(9) * ph * p32;
  const Ratio fb = Ratio(4) * e(4) - Ratio(10) * e(3) * ph - Ratio(36) * g * e(2) +
                   Ratio(2) * e(1) * (Ratio(31) * g * ph + Ratio(6) * ph3 + S2 * Ratio(6) * p32) + tail;
  const Ratio gb = Ratio(8) * e(4) - Ratio(16) * e(3) * ph - Ratio(2) * e(2) * (Ratio(44) * g + Ratio(5) * ph2) +
                   Ratio(2) * e(1) * (Ratio(44) * g * ph + Ratio(9) * ph3 + S2 * Ratio(9) * p32) + tail;
  const Ratio r = Ratio(4) * e(5) - Ratio(10) * e(4) * ph - Ratio(40) * g * e(3) +
                  Ratio(10) * e(2) * (Ratio(6) * g * ph + ph3 + S2 * p32) -
                  Ratio(10) * e(1) * (Ratio(6) * g * g + Ratio(6) * g * ph2 + ph4 + S2 * ph * p32) +
                  Ratio(30) * g * g * ph + Ratio(20) * g * ph3 + Ratio(3) * ph5 +
                  S2 * (Ratio(2) * g + Ratio(3) * ph2) * p32;
  if (r.is_zero()) throw ParamError("the denominator r vanishes identically");
  s.l2 = on(pl, E(pl, -2, 0) * e(1) * fb / r, E(pl, -2, 0) * e(1) * gb / r);
  return s;
}

Seeds w7_seeds(Plane pl, int gamma, const Ratio& ph) {
  const Ratio g(gamma);
  auto e = [&](int k) { return E(pl, 0, k); };
  const Ratio den = e(2) - e(1) * ph - g;
  Seeds s;
  s.l2 = on(pl, E(pl, -2, 1) * (e(1) - ph) / den, E(pl, -2, 1) * (Ratio(2) * e(1) - ph) / den);
  s.lm2 = on(pl, E(pl, 2, -3) * (e(3) + Ratio(3) * g * e(1) - g * ph),
             E(pl, 2, -3) * (Ratio(2) * e(1) - ph) * (-e(2) + e(1) * ph + g));
  return s;
}

void check_phi(RealizationId id, const Phi& phi) {
  const bool mapped = id == RealizationId::D8 || id == RealizationId::D9 || id == RealizationId::D10;
  switch (phi.kind) {
    case Phi::Kind::u:
      if (mapped) throw ParamError(std::string(id_name(id)) + ": phi must be a constant or c");
      return;
    case Phi::Kind::constant:
    case Phi::Kind::symbol:
      return;
    case Phi::Kind::function:
      if (id != RealizationId::REP2) throw ParamError(std::string(id_name(id)) + ": phi(u) only applies to REP2");
      return;
  }
}

void check_params(RealizationId id, const Params& p) {
  const std::uint32_t want = declared_fields(id);
  if (p.fields() != want)
    throw ParamError(std::string(id_name(id)) + ": parameters '" + p.key() + "' do not match the declared set");
  if (want & kAlpha && std::abs(p.alpha()) > 1) throw ParamError("alpha must be 0 or +-1");
  if (want & kBeta && p.beta() != 0 && p.beta() != 1) throw ParamError("beta must be 0 or 1");
  if (want & kGamma && std::abs(p.gamma()) != 1) throw ParamError("gamma must be +-1");
  if (want & kSign && std::abs(p.sign()) != 1) throw ParamError("sign must be +-1");
  if (want & kFSign && std::abs(p.fsign()) != 1) throw ParamError("fsign must be +-1");
  if (want & kPhi) check_phi(id, p.phi());
}

std::vector<Phi> phi_values(bool with_u) {
  std::vector<Phi> out;
  if (with_u) out.push_back({Phi::Kind::u, 0});
  for (const Rational& c : {q(0), q(1), q(-2), q(1, 3)}) out.push_back({Phi::Kind::constant, c});
  out.push_back({Phi::Kind::symbol, 0});
  return out;
}

bool real_radical(int gamma, const Phi& phi) {
  return phi.kind != Phi::Kind::constant || 4 * gamma + phi.value * phi.value >= 0;
}

Ratio parse_with(std::string text, const std::vector<std::pair<std::string, int>>& subs) {
  for (const auto& [token, value] : subs) {
    const std::string rep = "(" + std::to_string(value) + ")";
    for (std::size_t pos = text.find(token); pos != std::string::npos; pos = text.find(token, pos + rep.size()))
      text.replace(pos, token.size(), rep);
  }
  return parse(text);
}

}  // namespace

// ---------------------------------------------------------------------------
// Ids

std::string_view id_name(RealizationId id) { return info(id).name; }

std::optional<RealizationId> id_from_name(std::string_view name) {
  for (const auto& i : kIds)
    if (name == i.name) return i.id;
  return std::nullopt;
}

const std::vector<RealizationId>& all_ids() {
  static const std::vector<RealizationId> ids = [] {
    std::vector<RealizationId> out;
    for (const auto& i : kIds) out.push_back(i.id);
    return out;
  }();
  return ids;
}

bool is_witt(RealizationId id) { return id <= RealizationId::W11; }
bool is_direct_sum(RealizationId id) { return id >= RealizationId::D1 && id <= RealizationId::D10; }
bool is_central(RealizationId id) { return id >= RealizationId::C1 && id <= RealizationId::C6; }
bool is_recursive(RealizationId id) {
  return id == RealizationId::W4 || id == RealizationId::W7 || id == RealizationId::D9 || id == RealizationId::D10;
}

std::uint32_t declared_fields(RealizationId id) { return info(id).fields; }

// ---------------------------------------------------------------------------
// Params

Ratio Phi::expr() const {
  switch (kind) {
    case Kind::u:
      return Ratio::var(Var::u);
    case Kind::constant:
      return Ratio(value);
    case Kind::symbol:
      return Ratio::constant_symbol();
    case Kind::function:
      return Ratio::func(FuncName::phi);
  }
  return {};
}

std::string Phi::str() const {
  switch (kind) {
    case Kind::u:
      return "u";
    case Kind::constant:
      return value.get_str();
    case Kind::symbol:
      return "c";
    case Kind::function:
      return "phi";
  }
  return {};
}

Params& Params::set_alpha(int v) { alpha_ = v; fields_ |= kAlpha; return *this; }
Params& Params::set_beta(int v) { beta_ = v; fields_ |= kBeta; return *this; }
Params& Params::set_gamma(int v) { gamma_ = v; fields_ |= kGamma; return *this; }
Params& Params::set_sign(int v) { sign_ = v; fields_ |= kSign; return *this; }
Params& Params::set_fsign(int v) { fsign_ = v; fields_ |= kFSign; return *this; }
Params& Params::set_phi(Phi v) { phi_ = std::move(v); fields_ |= kPhi; return *this; }
Params& Params::set_lambda(Rational v) { lambda_ = std::move(v); fields_ |= kLambda; return *this; }

void Params::require(ParamField f, const char* name) const {
  if (!(fields_ & f)) throw ParamError(std::string("parameter '") + name + "' is not set");
}

int Params::alpha() const { require(kAlpha, "alpha"); return alpha_; }
int Params::beta() const { require(kBeta, "beta"); return beta_; }
int Params::gamma() const { require(kGamma, "gamma"); return gamma_; }
int Params::sign() const { require(kSign, "sign"); return sign_; }
int Params::fsign() const { require(kFSign, "fsign"); return fsign_; }
const Phi& Params::phi() const { require(kPhi, "phi"); return phi_; }
const Rational& Params::lambda() const { require(kLambda, "lambda"); return lambda_; }

std::string Params::key() const {
  std::string out;
  auto add = [&](const char* k, const std::string& v) {
    if (!out.empty()) out += ',';
    out += k;
    out += '=';
    out += v;
  };
  auto pm = [](int s) { return std::string(s > 0 ? "+" : "-"); };
  if (fields_ & kAlpha) add("alpha", std::to_string(alpha_));
  if (fields_ & kBeta) add("beta", std::to_string(beta_));
  if (fields_ & kGamma) add("gamma", std::to_string(gamma_));
  if (fields_ & kSign) add("sign", pm(sign_));
  if (fields_ & kFSign) add("fsign", pm(fsign_));
  if (fields_ & kPhi) add("phi", phi_.str());
  if (fields_ & kLambda) add("lambda", lambda_.get_str());
  return out;
}

namespace {

int parse_int(std::string_view key, std::string_view v) {
  const std::string s(v);
  char* end = nullptr;
  const long n = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0') throw ParamError("bad integer for " + std::string(key) + ": '" + s + "'");
  return static_cast<int>(n);
}

Rational parse_rational(std::string_view key, std::string_view v) {
  Rational r;
  std::string s(v);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0)
    throw ParamError("bad rational for " + std::string(key) + ": '" + std::string(v) + "'");
  r.canonicalize();
  return r;
}

int parse_sign(std::string_view key, std::string_view v) {
  if (v == "+" || v == "1" || v == "+1") return 1;
  if (v == "-" || v == "-1") return -1;
  throw ParamError("bad sign for " + std::string(key) + ": '" + std::string(v) + "'");
}

}  // namespace

Params Params::parse(std::string_view text) {
  Params p;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string_view item = text.substr(pos, comma - pos);
    pos = comma + 1;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ParamError("expected key=value, got '" + std::string(item) + "'");
    const std::string_view k = item.substr(0, eq);
    const std::string_view v = item.substr(eq + 1);
    if (k == "alpha") p.set_alpha(parse_int(k, v));
    else if (k == "beta") p.set_beta(parse_int(k, v));
    else if (k == "gamma") p.set_gamma(parse_int(k, v));
    else if (k == "sign") p.set_sign(parse_sign(k, v));
    else if (k == "fsign") p.set_fsign(parse_sign(k, v));
    else if (k == "lambda") p.set_lambda(parse_rational(k, v));
    else if (k == "phi") {
      if (v == "u") p.set_phi({Phi::Kind::u, 0});
      else if (v == "c") p.set_phi({Phi::Kind::symbol, 0});
      else if (v == "phi") p.set_phi({Phi::Kind::function, 0});
      else p.set_phi({Phi::Kind::constant, parse_rational(k, v)});
    } else {
      throw ParamError("unknown parameter '" + std::string(k) + "'");
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Grids

std::vector<Params> param_grid(RealizationId id) {
  using R = RealizationId;
  std::vector<Params> out;
  auto gammas = {-1, 1};
  auto signs = {1, -1};
  switch (id) {
    case R::W2:
    case R::W11:
      for (int a : {-1, 0, 1}) out.push_back(Params().set_alpha(a));
      break;
    case R::W3:
    case R::W6:
    case R::W8:
    case R::D4:
    case R::D5:
    case R::D7:
      for (int g : gammas) out.push_back(Params().set_gamma(g));
      break;
    case R::W5:
    case R::D6:
      for (int s : signs) out.push_back(Params().set_sign(s));
      break;
    case R::W4:
    case R::D9:
      for (int g : gammas)
        for (int s1 : signs)
          for (int s2 : signs)
            for (const Phi& ph : phi_values(id == R::W4))
              if (real_radical(g, ph)) out.push_back(Params().set_gamma(g).set_sign(s1).set_fsign(s2).set_phi(ph));
      break;
    case R::W7:
    case R::D10:
      for (int g : gammas)
        for (const Phi& ph : phi_values(id == R::W7)) out.push_back(Params().set_gamma(g).set_phi(ph));
      break;
    case R::W9:
    case R::D8:
      for (const Phi& ph : phi_values(id == R::W9)) out.push_back(Params().set_phi(ph));
      break;
    case R::REP2: {
      std::vector<Phi> phis = phi_values(true);
      phis.insert(phis.begin() + 1, Phi{Phi::Kind::function, 0});
      for (int a : {-1, 0, 1})
        for (int b : {0, 1})
          for (const Phi& ph : phis) out.push_back(Params().set_alpha(a).set_beta(b).set_phi(ph));
      break;
    }
    case R::C2:
      for (int l : {1, -1, 2}) out.push_back(Params().set_lambda(l));
      break;
    default:
      out.push_back(Params());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Catalog

struct Catalog::Sequence {
  std::mutex mutex;
  std::map<int, VectorField> fields;
  std::optional<FieldPartials> d1, dm1;
};

Catalog::Catalog(int recursion_bound) : bound_(recursion_bound) {
  if (recursion_bound < 2) throw ParamError("recursion bound must be at least 2");
}

Catalog::~Catalog() = default;

Catalog::Sequence& Catalog::sequence(RealizationId id, const Params& p, int factor) const {
  const std::string key = std::string(id_name(id)) + "|" + p.key() + "|" + std::to_string(factor);
  std::lock_guard<std::mutex> lock(mutex_);
  auto& slot = sequences_[key];
  if (!slot) {
    auto s = std::make_unique<Sequence>();
    const bool w4 = id == RealizationId::W4 || id == RealizationId::D9;
    const Plane pl = is_direct_sum(id) ? kXU : kTX;
    const Seeds seeds = w4 ? w4_seeds(pl, p.gamma(), p.sign(), p.fsign(), p.phi())
                           : w7_seeds(pl, p.gamma(), p.phi().expr());
    s->fields[0] = on(pl, 1, 0);
    s->fields[1] = seed_l1(pl);
    s->fields[-1] = seed_lm1(pl, p.gamma(), p.phi().expr());
    s->fields[2] = seeds.l2;
    s->fields[-2] = seeds.lm2;
    slot = std::move(s);
  }
  return *slot;
}

VectorField Catalog::generator(RealizationId id, int n, const Params& p, int factor) const {
  using R = RealizationId;
  check_params(id, p);
  if (is_direct_sum(id)) {
    if (factor != 0 && factor != 1) throw ParamError("direct-sum factor must be 0 or 1");
    if (factor == 0) {
      if (id == R::D3) return {Ratio::exp(-n, 0, 0), Ratio(n) * Ratio::exp(-n, 0, 0), 0};
      return w1(kTX, n);
    }
  } else if (factor != 0) {
    throw ParamError(std::string(id_name(id)) + " has a single factor");
  }

  auto want_index = [&](std::initializer_list<int> ok) {
    if (std::find(ok.begin(), ok.end(), n) == ok.end())
      throw ParamError(std::string(id_name(id)) + ": index " + std::to_string(n) + " out of range");
  };

  switch (id) {
    case R::W1: return w1(kTX, n);
    case R::W2: return w2(kTX, n, p.alpha());
    case R::W3: return w3(kTX, n, p.gamma(), p.gamma() * p.gamma());
    case R::W5: return w5(kTX, n, p.sign());
    case R::W6: return w6(kTX, n, p.gamma());
    case R::W8: return w8(kTX, n, p.gamma());
    case R::W9: return w9(kTX, n, p.phi().expr());
    case R::W10: return w10(n);
    case R::W11: return w11(n, p.alpha());
    case R::D1: return w1(kXU, n);
    case R::D2: return w2(kXU, n, 0);
    case R::D3: return {0, Ratio(n) * Ratio::exp(0, 0, -n), Ratio::exp(0, 0, -n)};
    case R::D4: return w6(kXU, n, p.gamma());
    case R::D5: return w8(kXU, n, p.gamma());
    case R::D6: return w5(kXU, n, p.sign());
    // Written with 1/2 n(n+1) where the three-space family has gamma^2.
    case R::D7: return w3(kXU, n, p.gamma(), 1);
    case R::D8: return w9(kXU, n, p.phi().expr());

    case R::W4:
    case R::W7:
    case R::D9:
    case R::D10: {
      if (std::abs(n) > bound_)
        throw RecursionBoundError(std::string(id_name(id)) + ": |n| = " + std::to_string(std::abs(n)) +
                                  " exceeds the recursion bound " + std::to_string(bound_));
      Sequence& s = sequence(id, p, factor);
      std::lock_guard<std::mutex> lock(s.mutex);
      if (auto it = s.fields.find(n); it != s.fields.end()) return it->second;
      if (n > 0) {
        if (!s.d1) s.d1.emplace(s.fields.at(1));
        for (int k = 2; k < n; ++k) {
          if (s.fields.count(k + 1)) continue;
          const VectorField& lk = s.fields.at(k);
          s.fields[k + 1] = Ratio(q(1, 1 - k)) * bracket(s.fields.at(1), *s.d1, lk, FieldPartials(lk));
        }
      } else {
        if (!s.dm1) s.dm1.emplace(s.fields.at(-1));
        for (int k = 2; k < -n; ++k) {
          if (s.fields.count(-k - 1)) continue;
          const VectorField& lk = s.fields.at(-k);
          s.fields[-k - 1] = Ratio(q(1, k - 1)) * bracket(s.fields.at(-1), *s.dm1, lk, FieldPartials(lk));
        }
      }
      return s.fields.at(n);
    }

    case R::REP1:
      want_index({-1, 0, 1});
      return {Ratio::exp(-n, 0, 0), 0, 0};
    case R::REP2:
      want_index({-1, 0, 1});
      if (n == 0) return VectorField::dt();
      if (n == 1) return seed_l1(kTX);
      return {Ratio::exp(1, 0, 0) * (Ratio(1) + Ratio(p.alpha()) * Ratio::exp(0, -2, 0)),
              Ratio::exp(1, 0, 0) *
                  (Ratio(-1) + p.phi().expr() * Ratio::exp(0, -1, 0) + Ratio(p.alpha()) * Ratio::exp(0, -2, 0)),
              Ratio(p.beta()) * Ratio::exp(1, -1, 0)};

    case R::C1:
    case R::C2:
    case R::C3:
    case R::C4:
    case R::C5:
    case R::C6:
      want_index({0});
      return central(id, p);

    case R::V4_CASE1:
      want_index({-1, 0, 1, 2});
      return {Ratio::exp(-n, 0, 0), 0, 0};
    case R::V4_CASE2: {
      want_index({-1, 0, 1, 2});
      if (n == 0) return VectorField::dt();
      if (n == 1) return seed_l1(kTX);
      const Ratio u = Ratio::var(Var::u);
      const Ratio w = u * Ratio::exp(0, 1, 0);  // u e^x
      if (n == -1)
        return {Ratio::exp(1, -2, 0) * (w * w - Ratio(1)) / (u * u),
                -Ratio::exp(1, -2, 0) * (w + Ratio(1)).pow(2) / (u * u), 0};
      return {w * (w + Ratio(2)) * Ratio::exp(-2, 0, 0) / (w + Ratio(1)).pow(2),
              Ratio(2) * w * Ratio::exp(-2, 0, 0) / (w + Ratio(1)), 0};
    }

    case R::LIOUVILLE_F:
      want_index({0});
      return {Ratio::func(FuncName::f), 0, -Ratio::func(FuncName::f, 1)};
    case R::LIOUVILLE_G:
      want_index({0});
      return {0, Ratio::func(FuncName::g), -Ratio::func(FuncName::g, 1)};
  }
  throw ParamError("unknown realization");
}

VectorField Catalog::central(RealizationId id, const Params& p) const {
  using R = RealizationId;
  check_params(id, p);
  const Ratio emx = Ratio::exp(0, -1, 0);
  switch (id) {
    case R::C1: return {emx, emx + Ratio::var(Var::u), 0};
    case R::C2: return {emx, emx + Ratio(p.lambda()), 0};
    case R::C3: return {emx, emx, 1};
    case R::C4: return VectorField::du();
    case R::C5: return {0, Ratio::var(Var::u), 0};
    case R::C6: return VectorField::dx();
    case R::V4_CASE1: return VectorField::du();
    case R::V4_CASE2: return {emx, emx + Ratio::var(Var::u), 0};
    default: throw ParamError(std::string(id_name(id)) + " has no central element");
  }
}

std::array<VectorField, 3> sl2_triplet(RealizationId rep, const Params& p) {
  if (rep != RealizationId::REP1 && rep != RealizationId::REP2) throw ParamError("sl2_triplet takes REP1 or REP2");
  static const Catalog catalog;
  return {catalog.generator(rep, 0, p), catalog.generator(rep, 1, p), catalog.generator(rep, -1, p)};
}

// ---------------------------------------------------------------------------
// Invariant equations

namespace {

using RI = RealizationId;
using EI = EquationId;

const std::array<std::pair<EquationId, const char*>, 11> kEqNames{{
    {EI::T1_W1, "T1_W1"}, {EI::T1_W2_a0, "T1_W2_a0"}, {EI::T1_W2_a1, "T1_W2_a1"}, {EI::T1_W6, "T1_W6"},
    {EI::T1_W8, "T1_W8"}, {EI::T1_W10, "T1_W10"}, {EI::D1_EQ, "D1_EQ"}, {EI::D2_EQ, "D2_EQ"},
    {EI::D3_EQ, "D3_EQ"}, {EI::D6_EQ, "D6_EQ"}, {EI::LIO_EQ, "LIO_EQ"},
}};

const std::array<InvariantEquation, 11> kEquations{{
    {EI::T1_W1, {RI::W1}, 0, true},
    {EI::T1_W2_a0, {RI::W2}, 0, true},
    {EI::T1_W2_a1, {RI::W2}, kAlpha, true},
    {EI::T1_W6, {RI::W6}, kGamma, true},
    {EI::T1_W8, {RI::W8}, kGamma, true},
    {EI::T1_W10, {RI::W10}, 0, true},
    {EI::D1_EQ, {RI::D1}, 0, true},
    {EI::D2_EQ, {RI::D2}, kLambda, true},
    {EI::D3_EQ, {RI::D3}, kLambda, true},
    {EI::D6_EQ, {RI::D6}, kSign, true},
    {EI::LIO_EQ, {RI::LIOUVILLE_F, RI::LIOUVILLE_G}, 0, false},
}};

void check_eq_params(EquationId id, const Params& p) {
  if (p.fields() != equation(id).fields)
    throw ParamError(std::string(equation_name(id)) + ": unexpected parameters '" + p.key() + "'");
}

}  // namespace

std::string_view equation_name(EquationId id) { return kEqNames[static_cast<std::size_t>(id)].second; }

std::optional<EquationId> equation_from_name(std::string_view name) {
  for (const auto& [id, n] : kEqNames)
    if (name == n) return id;
  return std::nullopt;
}

const std::vector<EquationId>& all_equations() {
  static const std::vector<EquationId> ids = [] {
    std::vector<EquationId> out;
    for (const auto& e : kEqNames) out.push_back(e.first);
    return out;
  }();
  return ids;
}

const InvariantEquation& equation(EquationId id) { return kEquations[static_cast<std::size_t>(id)]; }

std::vector<Params> equation_grid(EquationId id) {
  std::vector<Params> out;
  switch (id) {
    case EI::T1_W2_a1:
      for (int a : {-1, 1}) out.push_back(Params().set_alpha(a));
      break;
    case EI::T1_W6:
    case EI::T1_W8:
      for (int g : {-1, 1}) out.push_back(Params().set_gamma(g));
      break;
    case EI::D2_EQ:
    case EI::D3_EQ:
      for (int l : {1, -1, 2}) out.push_back(Params().set_lambda(l));
      break;
    case EI::D6_EQ:
      for (int s : {1, -1}) out.push_back(Params().set_sign(s));
      break;
    default:
      out.push_back(Params());
  }
  return out;
}

Params symmetry_params(EquationId id, const Params& p) {
  check_eq_params(id, p);
  switch (id) {
    case EI::T1_W2_a0: return Params().set_alpha(0);
    case EI::T1_W2_a1: return Params().set_alpha(p.alpha());
    case EI::T1_W6:
    case EI::T1_W8: return Params().set_gamma(p.gamma());
    case EI::D6_EQ: return Params().set_sign(p.sign());
    default: return Params();
  }
}

std::vector<JetExpr> invariant_set(EquationId id, const Params& p) {
  check_eq_params(id, p);
  std::vector<std::string> texts;
  std::vector<std::pair<std::string, int>> subs;
  switch (id) {
    case EI::T1_W1:
      texts = {"x", "u", "u_x", "u_xx", "u_tx/u_t"};
      break;
    case EI::T1_W2_a0:
      texts = {"u", "u_x", "u_xx", "(u_t*u_xx - u_x*u_tx)/(exp(x)*u_x)"};
      break;
    case EI::T1_W2_a1:
      texts = {"u", "(u_xx - u_x)/u_x^2", "(u_t*u_x - u_t*u_xx + u_x*u_tx + u_x^2)/(exp(x)*u_x) - 2*ALPHA*u_x"};
      subs = {{"ALPHA", p.alpha()}};
      break;
    case EI::T1_W6:
      texts = {"u", "(GAMMA*(u_xx + u_tx) - exp(x)*(u_x + u_xx))/(u_x*(GAMMA*(u_t + u_x) - exp(x)*u_x))"};
      subs = {{"GAMMA", p.gamma()}};
      break;
    case EI::T1_W8:
      texts = {"u", "(u_xx - 2*u_x)/u_x^2"};
      break;
    case EI::T1_W10:
      texts = {"u_x + 2*u", "u_xx - 4*u"};
      break;
    case EI::D1_EQ:
      texts = {"u", "u_tx/(u_t*u_x)"};
      break;
    case EI::D2_EQ:
      texts = {"u_tx/u_t*exp(-u)"};
      break;
    case EI::D3_EQ:
      texts = {"(u_t*u_xx - u_x*u_tx)/u_x^3*exp(-x)"};
      break;
    case EI::D6_EQ:
      texts = {"(u_tx*(1 - u_x + S*exp(u)) + u_t*(u_xx - u_x^2 + u_x))/"
               "(u_t*(exp(2*u) + (u_x - 1)*(u_x - 1 - S*2*exp(u))))"};
      subs = {{"S", p.sign()}};
      break;
    case EI::LIO_EQ:
      texts = {"u_tx - exp(u)"};
      break;
  }
  std::vector<JetExpr> out;
  for (const auto& t : texts) out.push_back(parse_with(t, subs));
  return out;
}

std::optional<JetExpr> solved_form(EquationId id, const Params& p) {
  check_eq_params(id, p);
  switch (id) {
    case EI::D1_EQ: return parse("phi(u)*u_t*u_x");
    case EI::D2_EQ: return Ratio(p.lambda()) * parse("u_t*exp(u)");
    case EI::D3_EQ: return (parse("u_t*u_xx") - Ratio(p.lambda()) * parse("exp(x)*u_x^3")) / parse("u_x");
    case EI::LIO_EQ: return parse("exp(u)");
    default: return std::nullopt;
  }
}

std::optional<JetExpr> manifold_expr(EquationId id, const Params& p) {
  auto rhs = solved_form(id, p);
  if (!rhs) return std::nullopt;
  return Ratio::var(Var::utx) - *rhs;
}

}  // namespace witt
