#pragma once

#include <cstdint>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace siegelcy {

using ojson = nlohmann::ordered_json;

enum class Status { pass, fail, report };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    default: return "report";
  }
}

inline Status pass_if(bool ok) { return ok ? Status::pass : Status::fail; }

struct CheckRecord {
  std::string id;
  std::string paper_ref;
  Status status = Status::report;
  ojson data = ojson::object();
};

struct SuiteParams {
  std::int64_t truncation = 12;
  std::uint64_t seed = 0;
  double tol = 1e-8;
};

struct SuiteSummary {
  std::size_t pass = 0, fail = 0, report = 0;
};

struct SuiteReport {
  SuiteParams params;
  std::vector<CheckRecord> checks;

  SuiteSummary summary() const {
    SuiteSummary s;
    for (const auto& c : checks) {
      if (c.status == Status::pass) ++s.pass;
      if (c.status == Status::fail) ++s.fail;
      if (c.status == Status::report) ++s.report;
    }
    return s;
  }
  bool ok() const { return summary().fail == 0; }
};

enum class ReportFormat { text, json };

inline ojson data_object(const CheckRecord& c) { return c.data.is_null() ? ojson::object() : c.data; }

inline ojson to_json(const SuiteReport& r) {
  ojson j;
  j["params"] = {{"N", r.params.truncation}, {"seed", r.params.seed}, {"tol", r.params.tol}};
  j["checks"] = ojson::array();
  for (const auto& c : r.checks)
    j["checks"].push_back({{"id", c.id}, {"paper_ref", c.paper_ref}, {"status", to_string(c.status)},
                         {"data", data_object(c)}});
  const auto s = r.summary();
  j["summary"] = {{"pass", s.pass}, {"fail", s.fail}, {"report", s.report}};
  return j;
}

inline void emit_report(const SuiteReport& r, ReportFormat f, std::ostream& os) {
  if (f == ReportFormat::json) {
    os << to_json(r).dump(2) << '\n';
    return;
  }
  os << "N=" << r.params.truncation << " seed=" << r.params.seed << " tol=" << r.params.tol << '\n';
  for (const auto& c : r.checks)
    os << to_string(c.status) << "  " << c.id << "  [" << c.paper_ref << "]  " << data_object(c).dump() << '\n';
  const auto s = r.summary();
  os << "summary: " << s.pass << " pass, " << s.fail << " fail, " << s.report << " report\n";
}

/// Writes to `path`; throws std::runtime_error if it cannot be opened.
inline void emit_report(const SuiteReport& r, ReportFormat f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report to " + path);
  emit_report(r, f, out);
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace siegelcy
