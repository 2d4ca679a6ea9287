#include "witt/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <tuple>
#include <utility>

#include "witt/jet.hpp"

namespace witt {

namespace {

constexpr std::array<std::pair<CheckKind, const char*>, 8> kKinds{{
    {CheckKind::WITT_TABLE, "WITT_TABLE"},
    {CheckKind::SL2, "SL2"},
    {CheckKind::CENTRAL, "CENTRAL"},
    {CheckKind::DIRECT_SUM, "DIRECT_SUM"},
    {CheckKind::INVARIANCE, "INVARIANCE"},
    {CheckKind::SOLUTION_D2, "SOLUTION_D2"},
    {CheckKind::LIOUVILLE, "LIOUVILLE"},
    {CheckKind::VIRASORO_CASE, "VIRASORO_CASE"},
}};

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::string opt_str(const std::optional<int>& v) { return v ? std::to_string(*v) : "-"; }

// One term c * T of an expected bracket.
struct Summand {
  Rational c;
  const VectorField* field;
};

VectorField combine(const std::vector<Summand>& terms) {
  VectorField out;
  for (const auto& t : terms) out = out + Ratio(t.c) * *t.field;
  return out;
}

// [q, p] - sum c_i T_i, numerically.
NumericRoute bracket_route(const VectorField& q, const VectorField& p, std::vector<Summand> rhs) {
  return [&q, &p, rhs = std::move(rhs)](const Assignment& a) {
    auto b = numeric_bracket(q, p, a);
    for (const auto& t : rhs) {
      const auto v = eval_field(*t.field, a);
      for (std::size_t i = 0; i < 3; ++i) b[i] = b[i] - t.c * v[i];
    }
    return std::vector<Approx>(b.begin(), b.end());
  };
}

void judge(CheckRecord& r, const VectorField& residual, const NumericRoute& route, const SamplePlan& plan) {
  r.status = residual.is_zero() ? Status::pass : Status::fail;
  if (r.status == Status::fail) r.residual = print(residual);
  r.oracle = cross_check(route, plan);
}

void judge(CheckRecord& r, const Ratio& residual, const NumericRoute& route, const SamplePlan& plan) {
  r.status = residual.is_zero() ? Status::pass : Status::fail;
  if (r.status == Status::fail) r.residual = print(residual);
  r.oracle = cross_check(route, plan);
}

CheckRecord make_record(CheckKind kind, std::string id, std::string params, std::optional<int> m,
                        std::optional<int> n, std::string check) {
  CheckRecord r;
  r.kind = kind;
  r.id = std::move(id);
  r.params = std::move(params);
  r.m = m;
  r.n = n;
  r.check = std::move(check);
  return r;
}

std::vector<int> range(int N) {
  std::vector<int> out;
  for (int k = -N; k <= N; ++k) out.push_back(k);
  return out;
}

}  // namespace

std::string_view kind_name(CheckKind k) { return kKinds[static_cast<std::size_t>(k)].second; }

std::optional<CheckKind> kind_from_name(std::string_view name) {
  for (const auto& [k, n] : kKinds)
    if (name == n) return k;
  return std::nullopt;
}

bool CheckRecord::agrees() const {
  return (status == Status::pass && oracle.verdict == Verdict::zero) ||
         (status == Status::fail && oracle.verdict == Verdict::nonzero);
}

void Report::append(Report other) {
  records.insert(records.end(), std::make_move_iterator(other.records.begin()),
                 std::make_move_iterator(other.records.end()));
}

void Report::sort() {
  auto key = [](const CheckRecord& r) {
    return std::make_tuple(static_cast<int>(r.kind), std::cref(r.id), std::cref(r.params), r.m.value_or(-1000),
                           r.n.value_or(-1000), std::cref(r.check));
  };
  std::stable_sort(records.begin(), records.end(),
                   [&](const CheckRecord& a, const CheckRecord& b) { return key(a) < key(b); });
}

int Report::passes() const {
  return static_cast<int>(std::count_if(records.begin(), records.end(), [](auto& r) { return r.status == Status::pass; }));
}
int Report::fails() const { return static_cast<int>(records.size()) - passes(); }
int Report::disagreements() const {
  return static_cast<int>(std::count_if(records.begin(), records.end(), [](auto& r) { return !r.agrees(); }));
}

// ---------------------------------------------------------------------------

struct Verifier::Task {
  CheckRecord head;
  Params params;
  std::function<void(CheckRecord&, SamplePlan&)> body;
};

Verifier::Verifier(VerifyOptions options) : options_(options) {
  if (options_.jobs < 1) options_.jobs = 1;
}

Verifier::~Verifier() = default;

const Catalog& Verifier::catalog_for(int N) {
  // A Witt table to N needs L_{m+n} up to 2N.
  const int bound = std::max(4, 2 * N);
  auto& slot = catalogs_[bound];
  if (!slot) slot = std::make_unique<Catalog>(bound);
  return *slot;
}

SamplePlan Verifier::plan_for(const CheckRecord& r, const Params& p) const {
  SamplePlan plan;
  const std::string ident = std::string(kind_name(r.kind)) + "|" + r.id + "|" + r.params + "|" + opt_str(r.m) + "|" +
                            opt_str(r.n) + "|" + r.check;
  plan.seed = splitmix(options_.seed ^ fnv1a(ident));
  plan.points = options_.points;
  // 4 gamma + u^2 needs |u| > 2 when gamma = -1.
  if ((p.fields() & kGamma) && (p.fields() & kPhi) && p.gamma() == -1 && p.phi().kind == Phi::Kind::u)
    plan.set_range(Var::u, -3, 3);
  return plan;
}

Report Verifier::run(std::vector<Task> tasks) {
  Report out;
  out.records.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        CheckRecord r = tasks[i].head;
        SamplePlan plan = plan_for(r, tasks[i].params);
        const auto t0 = std::chrono::steady_clock::now();
        tasks[i].body(r, plan);
        if (options_.timing)
          r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        out.records[i] = std::move(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = tasks.size();
      }
    }
  };
  const int jobs = std::min<int>(options_.jobs, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  out.sort();
  return out;
}

// ---------------------------------------------------------------------------
// Witt tables

namespace {

// Generators L_k for |k| <= 2N and their partials for |k| <= N.
struct Table {
  std::map<int, VectorField> gen;
  std::map<int, FieldPartials> partials;
};

Table build_table(const Catalog& cat, RealizationId id, const Params& p, int factor, int N) {
  Table t;
  for (int k = -2 * N; k <= 2 * N; ++k) t.gen.emplace(k, cat.generator(id, k, p, factor));
  for (int k = -N; k <= N; ++k) t.partials.emplace(k, FieldPartials(t.gen.at(k)));
  return t;
}

}  // namespace

Report Verifier::check_witt(RealizationId id, const Params& p, int N) {
  if (!is_witt(id)) throw ParamError(std::string(id_name(id)) + " is not a Witt realization");
  const Table t = build_table(catalog_for(N), id, p, 0, N);
  std::vector<Task> tasks;
  for (int m : range(N))
    for (int n : range(N)) {
      CheckRecord head = make_record(CheckKind::WITT_TABLE, std::string(id_name(id)), p.key(), m, n, "[L_m,L_n]-(m-n)L_{m+n}");
      tasks.push_back({head, p, [&t, m, n](CheckRecord& r, SamplePlan& plan) {
                         const VectorField& lm = t.gen.at(m);
                         const VectorField& ln = t.gen.at(n);
                         const VectorField& lmn = t.gen.at(m + n);
                         const VectorField residual =
                             bracket(lm, t.partials.at(m), ln, t.partials.at(n)) - Ratio(m - n) * lmn;
                         judge(r, residual, bracket_route(lm, ln, {{Rational(m - n), &lmn}}), plan);
                       }});
    }
  return run(std::move(tasks));
}

Report Verifier::check_direct_sum(RealizationId id, const Params& p, int N) {
  if (!is_direct_sum(id)) throw ParamError(std::string(id_name(id)) + " is not a direct sum");
  const Catalog& cat = catalog_for(N);
  const std::array<Table, 2> t{build_table(cat, id, p, 0, N), build_table(cat, id, p, 1, N)};
  std::vector<Task> tasks;
  for (int m : range(N))
    for (int n : range(N)) {
      for (int f = 0; f < 2; ++f) {
        CheckRecord head = make_record(CheckKind::DIRECT_SUM, std::string(id_name(id)), p.key(), m, n, "factor" + std::to_string(f));
        tasks.push_back({head, p, [&t, f, m, n](CheckRecord& r, SamplePlan& plan) {
                           const Table& tf = t[f];
                           const VectorField& lm = tf.gen.at(m);
                           const VectorField& ln = tf.gen.at(n);
                           const VectorField& lmn = tf.gen.at(m + n);
                           const VectorField residual =
                               bracket(lm, tf.partials.at(m), ln, tf.partials.at(n)) - Ratio(m - n) * lmn;
                           judge(r, residual, bracket_route(lm, ln, {{Rational(m - n), &lmn}}), plan);
                         }});
      }
      CheckRecord head = make_record(CheckKind::DIRECT_SUM, std::string(id_name(id)), p.key(), m, n, "cross");
      tasks.push_back({head, p, [&t, m, n](CheckRecord& r, SamplePlan& plan) {
                         const VectorField& a = t[0].gen.at(m);
                         const VectorField& b = t[1].gen.at(n);
                         judge(r, bracket(a, t[0].partials.at(m), b, t[1].partials.at(n)), bracket_route(a, b, {}),
                               plan);
                       }});
    }
  return run(std::move(tasks));
}

// ---------------------------------------------------------------------------
// Fixed relation lists

namespace {

struct Relation {
  std::optional<int> m, n;
  std::string label;
  const VectorField* a;
  const VectorField* b;
  std::vector<Summand> rhs;
};

}  // namespace

Report Verifier::check_sl2(RealizationId rep, const Params& p) {
  const auto l = std::make_shared<std::array<VectorField, 3>>(sl2_triplet(rep, p));
  const VectorField& l0 = (*l)[0];
  const VectorField& l1 = (*l)[1];
  const VectorField& lm1 = (*l)[2];
  const std::vector<Relation> rels{
      {0, 1, "[L_0,L_1]=-L_1", &l0, &l1, {{Rational(-1), &l1}}},
      {0, -1, "[L_0,L_-1]=L_-1", &l0, &lm1, {{Rational(1), &lm1}}},
      {1, -1, "[L_1,L_-1]=2L_0", &l1, &lm1, {{Rational(2), &l0}}},
  };
  std::vector<Task> tasks;
  for (const auto& rel : rels) {
    CheckRecord head = make_record(CheckKind::SL2, std::string(id_name(rep)), p.key(), rel.m, rel.n, rel.label);
    tasks.push_back({head, p, [rel, l](CheckRecord& r, SamplePlan& plan) {
                       judge(r, bracket(*rel.a, *rel.b) - combine(rel.rhs), bracket_route(*rel.a, *rel.b, rel.rhs),
                             plan);
                     }});
  }
  return run(std::move(tasks));
}

Report Verifier::check_central(RealizationId id, const Params& p) {
  if (!is_central(id)) throw ParamError(std::string(id_name(id)) + " is not a central candidate");
  const Catalog& cat = catalog_for(2);
  auto fields = std::make_shared<std::array<VectorField, 3>>(
      std::array<VectorField, 3>{VectorField::dt(), cat.generator(RealizationId::REP2, 1, Params::parse("alpha=0,beta=0,phi=0")),
                                 cat.central(id, p)});
  std::vector<Task> tasks;
  for (int i : {0, 1}) {
    CheckRecord head = make_record(CheckKind::CENTRAL, std::string(id_name(id)), p.key(), i, std::nullopt,
                     "[L_" + std::to_string(i) + ",C]=0");
    tasks.push_back({head, p, [fields, i](CheckRecord& r, SamplePlan& plan) {
                       const VectorField& li = (*fields)[i];
                       const VectorField& c = (*fields)[2];
                       judge(r, bracket(li, c), bracket_route(li, c, {}), plan);
                     }});
  }
  return run(std::move(tasks));
}

Report Verifier::check_virasoro_case(RealizationId id) {
  if (id != RealizationId::V4_CASE1 && id != RealizationId::V4_CASE2)
    throw ParamError(std::string(id_name(id)) + " is not a Virasoro construction");
  const Catalog& cat = catalog_for(2);
  // l[0..3] = L0, L1, L-1, L2; l[4] = C.
  auto l = std::make_shared<std::array<VectorField, 5>>(std::array<VectorField, 5>{
      cat.generator(id, 0, {}), cat.generator(id, 1, {}), cat.generator(id, -1, {}), cat.generator(id, 2, {}),
      cat.central(id, {})});
  const auto& L0 = (*l)[0];
  const auto& L1 = (*l)[1];
  const auto& Lm1 = (*l)[2];
  const auto& L2 = (*l)[3];
  const auto& C = (*l)[4];
  const std::vector<Relation> rels{
      {0, 1, "[L_0,L_1]=-L_1", &L0, &L1, {{Rational(-1), &L1}}},
      {0, -1, "[L_0,L_-1]=L_-1", &L0, &Lm1, {{Rational(1), &Lm1}}},
      {1, -1, "[L_1,L_-1]=2L_0", &L1, &Lm1, {{Rational(2), &L0}}},
      {0, 2, "[L_0,L_2]=-2L_2", &L0, &L2, {{Rational(-2), &L2}}},
      {-1, 2, "[L_-1,L_2]=-3L_1", &Lm1, &L2, {{Rational(-3), &L1}}},
      {0, std::nullopt, "[L_0,C]=0", &L0, &C, {}},
      {1, std::nullopt, "[L_1,C]=0", &L1, &C, {}},
      {-1, std::nullopt, "[L_-1,C]=0", &Lm1, &C, {}},
      {2, std::nullopt, "[L_2,C]=0", &L2, &C, {}},
  };
  std::vector<Task> tasks;
  for (const auto& rel : rels) {
    CheckRecord head = make_record(CheckKind::VIRASORO_CASE, std::string(id_name(id)), "", rel.m, rel.n, rel.label);
    tasks.push_back({head, {}, [rel, l](CheckRecord& r, SamplePlan& plan) {
                       judge(r, bracket(*rel.a, *rel.b) - combine(rel.rhs), bracket_route(*rel.a, *rel.b, rel.rhs),
                             plan);
                     }});
  }
  return run(std::move(tasks));
}

// ---------------------------------------------------------------------------
// Invariance

namespace {

NumericRoute prolonged_route(const VectorField& q, const JetExpr& e) {
  return [&q, &e](const Assignment& a) { return std::vector<Approx>{numeric_prolonged_apply(q, e, a)}; };
}

std::function<void(Assignment&)> onto(const JetExpr& rhs) {
  return [rhs](Assignment& a) { a[Var::utx] = eval_approx(rhs, a).value; };
}

}  // namespace

Report Verifier::check_invariance(EquationId eq, RealizationId id, const Params& eq_params, int N) {
  const InvariantEquation& info = equation(eq);
  if (std::find(info.symmetries.begin(), info.symmetries.end(), id) == info.symmetries.end())
    throw ParamError(std::string(id_name(id)) + " is not the symmetry of " + std::string(equation_name(eq)));
  const Params p = symmetry_params(eq, eq_params);
  const Catalog& cat = catalog_for(N);

  struct Shared {
    std::vector<JetExpr> args;
    std::optional<JetExpr> manifold, rhs;
    std::map<std::pair<int, int>, VectorField> gen;  // (factor, n)
  };
  auto s = std::make_shared<Shared>();
  if (info.annihilation) s->args = invariant_set(eq, eq_params);
  s->manifold = manifold_expr(eq, eq_params);
  s->rhs = solved_form(eq, eq_params);

  const bool single = id == RealizationId::LIOUVILLE_F || id == RealizationId::LIOUVILLE_G;
  const std::vector<int> ns = single ? std::vector<int>{0} : range(N);
  const int factors = is_direct_sum(id) ? 2 : 1;
  for (int f = 0; f < factors; ++f)
    for (int n : ns) s->gen.emplace(std::make_pair(f, n), cat.generator(id, n, p, f));

  std::vector<Task> tasks;
  for (int f = 0; f < factors; ++f)
    for (int n : ns) {
      const std::string where = std::string(id_name(id)) + (factors > 1 ? "." + std::to_string(f) : "");
      for (std::size_t k = 0; k < s->args.size(); ++k) {
        CheckRecord head = make_record(CheckKind::INVARIANCE, std::string(equation_name(eq)), eq_params.key(), std::nullopt, n,
                         where + ":I" + std::to_string(k + 1));
        tasks.push_back({head, p, [s, f, n, k](CheckRecord& r, SamplePlan& plan) {
                           const VectorField& q = s->gen.at({f, n});
                           judge(r, pr_apply(prolong2(q), s->args[k]), prolonged_route(q, s->args[k]), plan);
                         }});
      }
      if (s->manifold) {
        CheckRecord head = make_record(CheckKind::INVARIANCE, std::string(equation_name(eq)), eq_params.key(), std::nullopt, n,
                         where + ":manifold");
        tasks.push_back({head, p, [s, f, n](CheckRecord& r, SamplePlan& plan) {
                           const VectorField& q = s->gen.at({f, n});
                           plan.project = onto(*s->rhs);
                           judge(r, substitute_jet(pr_apply(prolong2(q), *s->manifold), Var::utx, *s->rhs),
                                 prolonged_route(q, *s->manifold), plan);
                         }});
      }
    }
  return run(std::move(tasks));
}

Report Verifier::check_liouville() {
  const Catalog& cat = catalog_for(2);
  struct Shared {
    JetExpr F = parse("u_tx - exp(u)");
    JetExpr rhs = parse("exp(u)");
    std::array<VectorField, 2> q;
    std::array<Ratio, 2> factor{Ratio::func(FuncName::f, 1), Ratio::func(FuncName::g, 1)};
  };
  auto s = std::make_shared<Shared>();
  s->q = {cat.generator(RealizationId::LIOUVILLE_F, 0, {}), cat.generator(RealizationId::LIOUVILLE_G, 0, {})};
  const std::array<RealizationId, 2> ids{RealizationId::LIOUVILLE_F, RealizationId::LIOUVILLE_G};
  std::vector<Task> tasks;
  for (int i = 0; i < 2; ++i) {
    const std::string fn = i == 0 ? "f'(t)" : "g'(x)";
    CheckRecord pre = make_record(CheckKind::LIOUVILLE, std::string(id_name(ids[i])), "", std::nullopt, std::nullopt,
                    "pr(Q)F+" + fn + "*F");
    tasks.push_back({pre, {}, [s, i](CheckRecord& r, SamplePlan& plan) {
                       const VectorField& q = s->q[i];
                       const Ratio& fac = s->factor[i];
                       NumericRoute route = [s, &q, &fac](const Assignment& a) {
                         const Approx v = numeric_prolonged_apply(q, s->F, a);
                         const Approx ff = eval_approx(fac, a);
                         const Approx F = eval_approx(s->F, a);
                         return std::vector<Approx>{v + ff * F};
                       };
                       judge(r, pr_apply(prolong2(q), s->F) + fac * s->F, route, plan);
                     }});
    CheckRecord on = make_record(CheckKind::LIOUVILLE, std::string(id_name(ids[i])), "", std::nullopt, std::nullopt, "manifold");
    tasks.push_back({on, {}, [s, i](CheckRecord& r, SamplePlan& plan) {
                       const VectorField& q = s->q[i];
                       plan.project = onto(s->rhs);
                       judge(r, substitute_jet(pr_apply(prolong2(q), s->F), Var::utx, s->rhs),
                             prolonged_route(q, s->F), plan);
                     }});
  }
  return run(std::move(tasks));
}

// ---------------------------------------------------------------------------
// Closed-form solution of u_tx = lambda u_t e^u

Report Verifier::check_solution_d2(const Rational& lambda) {
  if (lambda == 0) throw ParamError("lambda must be nonzero");
  const Params p = Params().set_lambda(lambda);
  // w = h(t) - lambda g(x) as a declared atom.
  const Ratio hp = Ratio::func(FuncName::h, 1);
  const Ratio gp = Ratio::func(FuncName::g, 1);
  const Ratio gpp = Ratio::func(FuncName::g, 2);
  const Ratio L(lambda);
  auto ctx = Context::make(std::nullopt, {{"w", {hp, -L * gp, Ratio(0)}}});
  const Ratio w = ctx->atom(0);
  const Ratio eu = gp / w;  // e^u

  struct Item {
    std::string label;
    Ratio residual;
  };
  auto items = std::make_shared<std::vector<Item>>();
  const Ratio ut = -hp / w;
  const Ratio ux = gpp / gp + L * gp / w;
  const Ratio utx = -L * hp * gp / (w * w);
  items->push_back({"u_t", differentiate(eu, Var::t) / eu - ut});
  items->push_back({"u_x", differentiate(eu, Var::x) / eu - ux});
  items->push_back({"u_tx", differentiate(ut, Var::x) - utx});
  items->push_back({"residual", utx - L * ut * eu});

  std::vector<Task> tasks;
  for (std::size_t i = 0; i < items->size(); ++i) {
    CheckRecord head = make_record(CheckKind::SOLUTION_D2, "d2", p.key(), std::nullopt, std::nullopt, (*items)[i].label);
    tasks.push_back({head, p, [items, i, lambda](CheckRecord& r, SamplePlan& plan) {
                       const Ratio& res = (*items)[i].residual;
                       r.status = res.is_zero() ? Status::pass : Status::fail;
                       if (r.status == Status::fail) r.residual = print(res);
                       // Numeric side: the candidate solution differentiated by hyper-dual numbers.
                       const NumericCheck nc = numeric_solution_d2_check(lambda, plan);
                       r.oracle = {nc.pass ? Verdict::zero : Verdict::nonzero, nc.points, nc.worst};
                     }});
  }
  return run(std::move(tasks));
}

// ---------------------------------------------------------------------------

Report Verifier::run_all(int N, const std::set<std::string>& only) {
  if (N < 2) throw ParamError("range must be at least 2");
  auto wanted = [&](std::initializer_list<std::string_view> names) {
    if (only.empty()) return true;
    for (auto n : names)
      if (only.count(std::string(n))) return true;
    return false;
  };
  Report out;
  using R = RealizationId;
  for (R id : all_ids())
    if (is_witt(id) && wanted({id_name(id), "WITT_TABLE"}))
      for (const Params& p : param_grid(id)) out.append(check_witt(id, p, N));
  for (R id : {R::REP1, R::REP2})
    if (wanted({id_name(id), "SL2"}))
      for (const Params& p : param_grid(id)) out.append(check_sl2(id, p));
  for (R id : all_ids())
    if (is_direct_sum(id) && wanted({id_name(id), "DIRECT_SUM"}))
      for (const Params& p : param_grid(id)) out.append(check_direct_sum(id, p, N));
  for (R id : all_ids())
    if (is_central(id) && wanted({id_name(id), "CENTRAL"}))
      for (const Params& p : param_grid(id)) out.append(check_central(id, p));
  for (R id : {R::V4_CASE1, R::V4_CASE2})
    if (wanted({id_name(id), "VIRASORO_CASE"})) out.append(check_virasoro_case(id));
  for (EquationId eq : all_equations()) {
    if (eq == EquationId::LIO_EQ) continue;  // covered by the Liouville suite
    const auto& info = equation(eq);
    for (R sym : info.symmetries)
      if (wanted({equation_name(eq), id_name(sym), "INVARIANCE"}))
        for (const Params& p : equation_grid(eq)) out.append(check_invariance(eq, sym, p, N));
  }
  if (wanted({"LIO_EQ", "LIOUVILLE", "LIOUVILLE_F", "LIOUVILLE_G"})) out.append(check_liouville());
  if (wanted({"SOLUTION_D2", "d2", "D2_EQ"}))
    for (int l : {1, -1, 2}) out.append(check_solution_d2(l));
  out.sort();
  return out;
}

}  // namespace witt
