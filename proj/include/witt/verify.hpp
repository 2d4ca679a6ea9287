#ifndef WITT_VERIFY_HPP
#define WITT_VERIFY_HPP

// Runs the stated identities over the catalog and collects one record per
// identity instance. Every record carries both the exact verdict and the
// numeric adjudication from an independent route.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "witt/catalog.hpp"
#include "witt/oracle.hpp"

namespace witt {

enum class CheckKind { WITT_TABLE, SL2, CENTRAL, DIRECT_SUM, INVARIANCE, SOLUTION_D2, LIOUVILLE, VIRASORO_CASE };

std::string_view kind_name(CheckKind k);
std::optional<CheckKind> kind_from_name(std::string_view name);

enum class Status { pass, fail };

struct CheckRecord {
  CheckKind kind = CheckKind::WITT_TABLE;
  std::string id;      // realization, equation, or "d2" / "liouville"
  std::string params;  // Params::key()
  std::optional<int> m;
  std::optional<int> n;
  std::string check;  // which identity, e.g. "[L_m,L_n]-(m-n)L_{m+n}" or "factor1"
  Status status = Status::pass;
  std::string residual;  // printed residual on fail
  CrossCheck oracle;
  std::optional<double> ms;

  // Pass confirmed zero, or fail confirmed nonzero.
  bool agrees() const;
};

struct Report {
  std::vector<CheckRecord> records;

  void append(Report other);
  // Deterministic order: kind, id, params, m, n, check.
  void sort();
  int passes() const;
  int fails() const;
  int disagreements() const;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  int jobs = 1;
  bool timing = false;
  int points = 20;
};

class Verifier {
 public:
  explicit Verifier(VerifyOptions options = {});
  ~Verifier();

  const VerifyOptions& options() const { return options_; }

  Report check_witt(RealizationId id, const Params& p, int N);
  Report check_sl2(RealizationId rep, const Params& p);
  Report check_direct_sum(RealizationId id, const Params& p, int N);
  Report check_central(RealizationId id, const Params& p);
  // The partial Virasoro constructions: V4_CASE1 or V4_CASE2.
  Report check_virasoro_case(RealizationId id);
  Report check_virasoro_case2() { return check_virasoro_case(RealizationId::V4_CASE2); }
  Report check_invariance(EquationId eq, RealizationId id, const Params& eq_params, int N);
  Report check_solution_d2(const Rational& lambda);
  Report check_liouville();

  // Every suite in acceptance order. `only` filters by realization id,
  // equation id or check kind name; empty runs everything.
  Report run_all(int N, const std::set<std::string>& only = {});

  // Sampling plan used for a record, seeded from the record identity.
  SamplePlan plan_for(const CheckRecord& r, const Params& p) const;

 private:
  struct Task;
  Report run(std::vector<Task> tasks);
  const Catalog& catalog_for(int N);

  VerifyOptions options_;
  std::map<int, std::unique_ptr<Catalog>> catalogs_;
};

}  // namespace witt

#endif  // WITT_VERIFY_HPP
