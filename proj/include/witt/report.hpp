#ifndef WITT_REPORT_HPP
#define WITT_REPORT_HPP

// Serialization of reports and of the catalog.

#include <cstdint>
#include <ostream>
#include <string>

#include "witt/verify.hpp"

namespace witt {

inline constexpr const char* kReportSchema = "witt-report/1";
inline constexpr const char* kCatalogSchema = "witt-catalog/1";

struct ReportMeta {
  std::string command;  // e.g. "verify all"
  std::uint64_t seed = 42;
  int range = 0;
};

// {"schema", "command", "seed", "range", "records": [...], "summary": {...}}
std::string report_json(const Report& r, const ReportMeta& meta);

// Per-id pass/fail table followed by totals.
void print_summary(std::ostream& os, const Report& r);

// 0 all pass, 1 confirmed fail, 3 symbolic/numeric disagreement.
int exit_code(const Report& r);

// Every id with its grid and printed generators for |n| <= N.
std::string catalog_json(int N);

}  // namespace witt

#endif  // WITT_REPORT_HPP
