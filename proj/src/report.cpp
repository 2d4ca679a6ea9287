#include "witt/report.hpp"

#include <iomanip>
#include <map>

#include <json.hpp>

namespace witt {

using json = nlohmann::ordered_json;

namespace {

json opt(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

json record_json(const CheckRecord& r) {
  json j;
  j["kind"] = std::string(kind_name(r.kind));
  j["id"] = r.id;
  j["params"] = r.params;
  j["m"] = opt(r.m);
  j["n"] = opt(r.n);
  j["check"] = r.check;
  j["status"] = r.status == Status::pass ? "pass" : "fail";
  j["residual"] = r.status == Status::fail ? json(r.residual) : json(nullptr);
  j["oracle"] = {{"verdict", std::string(verdict_name(r.oracle.verdict))},
                 {"points", r.oracle.points},
                 {"worst", r.oracle.worst},
                 {"peak", r.oracle.peak},
                 {"agrees", r.agrees()}};
  j["ms"] = r.ms ? json(*r.ms) : json(nullptr);
  return j;
}

struct Tally {
  int pass = 0, fail = 0, disagree = 0;
};

std::map<std::string, Tally> tally(const Report& r) {
  std::map<std::string, Tally> out;
  for (const auto& rec : r.records) {
    auto& t = out[rec.id];
    (rec.status == Status::pass ? t.pass : t.fail)++;
    if (!rec.agrees()) ++t.disagree;
  }
  return out;
}

}  // namespace

std::string report_json(const Report& r, const ReportMeta& meta) {
  json j;
  j["schema"] = kReportSchema;
  j["command"] = meta.command;
  j["seed"] = meta.seed;
  j["range"] = meta.range;
  json recs = json::array();
  for (const auto& rec : r.records) recs.push_back(record_json(rec));
  j["records"] = std::move(recs);
  json by_id = json::object();
  for (const auto& [id, t] : tally(r)) by_id[id] = {{"pass", t.pass}, {"fail", t.fail}, {"disagree", t.disagree}};
  j["summary"] = {{"records", r.records.size()},
                  {"pass", r.passes()},
                  {"fail", r.fails()},
                  {"disagree", r.disagreements()},
                  {"by_id", std::move(by_id)}};
  return j.dump(2) + "\n";
}

void print_summary(std::ostream& os, const Report& r) {
  os << std::left << std::setw(14) << "id" << std::right << std::setw(8) << "pass" << std::setw(8) << "fail"
     << std::setw(10) << "disagree" << "\n";
  for (const auto& [id, t] : tally(r))
    os << std::left << std::setw(14) << id << std::right << std::setw(8) << t.pass << std::setw(8) << t.fail
       << std::setw(10) << t.disagree << "\n";
  os << "total " << r.records.size() << " records: " << r.passes() << " pass, " << r.fails() << " fail, "
     << r.disagreements() << " disagree\n";
  for (const auto& rec : r.records) {
    if (rec.agrees() && rec.status == Status::pass) continue;
    os << (rec.agrees() ? "FAIL " : "DISAGREE ") << kind_name(rec.kind) << " " << rec.id;
    if (!rec.params.empty()) os << " [" << rec.params << "]";
    if (rec.m) os << " m=" << *rec.m;
    if (rec.n) os << " n=" << *rec.n;
    os << " " << rec.check << " oracle=" << verdict_name(rec.oracle.verdict);
    if (rec.status == Status::fail) os << "\n    residual: " << rec.residual;
    os << "\n";
  }
}

int exit_code(const Report& r) {
  if (r.disagreements() > 0) return 3;
  return r.fails() > 0 ? 1 : 0;
}

std::string catalog_json(int N) {
  using R = RealizationId;
  const Catalog cat(std::max(4, N));
  json ids = json::array();
  for (R id : all_ids()) {
    std::vector<int> ns;
    for (int k = -N; k <= N; ++k) ns.push_back(k);
    if (id == R::REP1 || id == R::REP2) ns = {-1, 0, 1};
    if (is_central(id) || id == R::LIOUVILLE_F || id == R::LIOUVILLE_G) ns = {0};
    if (id == R::V4_CASE1 || id == R::V4_CASE2) ns = {-1, 0, 1, 2};
    const int factors = is_direct_sum(id) ? 2 : 1;

    json entry;
    entry["id"] = std::string(id_name(id));
    json grid = json::array();
    for (const Params& p : param_grid(id)) {
      json g;
      g["params"] = p.key();
      json fs = json::array();
      for (int f = 0; f < factors; ++f) {
        json gens = json::object();
        for (int n : ns) gens[std::to_string(n)] = print(cat.generator(id, n, p, f));
        fs.push_back(std::move(gens));
      }
      g["generators"] = factors == 1 ? fs[0] : fs;
      if (id == R::V4_CASE1 || id == R::V4_CASE2) g["central"] = print(cat.central(id, p));
      grid.push_back(std::move(g));
    }
    entry["grid"] = std::move(grid);
    ids.push_back(std::move(entry));
  }
  json eqs = json::array();
  for (EquationId eq : all_equations()) {
    const auto& info = equation(eq);
    json e;
    e["id"] = std::string(equation_name(eq));
    json syms = json::array();
    for (R s : info.symmetries) syms.push_back(std::string(id_name(s)));
    e["symmetries"] = std::move(syms);
    json grid = json::array();
    for (const Params& p : equation_grid(eq)) {
      json g;
      g["params"] = p.key();
      if (info.annihilation) {
        json inv = json::array();
        for (const auto& i : invariant_set(eq, p)) inv.push_back(print(i));
        g["invariants"] = std::move(inv);
      }
      if (auto rhs = solved_form(eq, p)) g["u_tx"] = print(*rhs);
      grid.push_back(std::move(g));
    }
    e["grid"] = std::move(grid);
    eqs.push_back(std::move(e));
  }
  json j;
  j["schema"] = kCatalogSchema;
  j["range"] = N;
  j["realizations"] = std::move(ids);
  j["equations"] = std::move(eqs);
  return j.dump(2) + "\n";
}

}  // namespace witt
