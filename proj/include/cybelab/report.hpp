#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cybelab {

inline constexpr const char* kReportSchema = "cybelab-report/1";
inline constexpr const char* kArtifactVersion = "0.1.0";

struct CheckRecord {
  enum class Status { Pass, Fail, Skipped };
  std::string id;
  Status status = Status::Pass;
  std::string witness;  // required for Fail
  std::string reason;   // required for Skipped
  std::string detail;   // optional free text
  /// Named findings are informational: they never change the suite status.
  bool finding = false;

  static CheckRecord pass(std::string id, std::string detail = {});
  static CheckRecord fail(std::string id, std::string witness, std::string detail = {});
  static CheckRecord skipped(std::string id, std::string reason);
  static CheckRecord note(std::string id, std::string detail);
  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

const char* status_name(CheckRecord::Status s);

struct Report {
  std::string suite;
  std::string profile;
  std::uint64_t seed = 0;
  std::string version = kArtifactVersion;
  std::map<std::string, std::string> config;
  std::vector<CheckRecord> checks;
  double timing_ms = 0;

  bool all_pass() const;
  std::size_t count(CheckRecord::Status s) const;
  /// Orders checks by id; the emission order.
  void sort_checks();
  friend bool operator==(const Report&, const Report&) = default;
};

/// One JSON object per line: header, checks in id order, summary.
std::string serialize_report(const Report& r);
/// Throws std::invalid_argument on schema violations.
Report parse_report(const std::string& text);
/// Human-readable form.
std::string format_text(const Report& r);
/// serialize_report with the timing value replaced by 0.
std::string strip_timing(const std::string& machine);

}  // namespace cybelab
