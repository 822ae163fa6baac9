#include "cybelab/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cybelab {

using nlohmann::json;

CheckRecord CheckRecord::pass(std::string id, std::string detail) {
  return {std::move(id), Status::Pass, {}, {}, std::move(detail), false};
}

CheckRecord CheckRecord::fail(std::string id, std::string witness, std::string detail) {
  if (witness.empty()) throw std::invalid_argument("failing check " + id + " needs a witness");
  return {std::move(id), Status::Fail, std::move(witness), {}, std::move(detail), false};
}

CheckRecord CheckRecord::skipped(std::string id, std::string reason) {
  if (reason.empty()) throw std::invalid_argument("skipped check " + id + " needs a reason");
  return {std::move(id), Status::Skipped, {}, std::move(reason), {}, false};
}

CheckRecord CheckRecord::note(std::string id, std::string detail) {
  return {std::move(id), Status::Pass, {}, {}, std::move(detail), true};
}

const char* status_name(CheckRecord::Status s) {
  switch (s) {
    case CheckRecord::Status::Pass: return "pass";
    case CheckRecord::Status::Fail: return "fail";
    case CheckRecord::Status::Skipped: return "skipped";
  }
  return "?";
}

namespace {

CheckRecord::Status status_of(const std::string& s) {
  if (s == "pass") return CheckRecord::Status::Pass;
  if (s == "fail") return CheckRecord::Status::Fail;
  if (s == "skipped") return CheckRecord::Status::Skipped;
  throw std::invalid_argument("unknown check status '" + s + "'");
}

}  // namespace

bool Report::all_pass() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckRecord& c) { return c.status == CheckRecord::Status::Fail; });
}

std::size_t Report::count(CheckRecord::Status s) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [&](const CheckRecord& c) { return c.status == s; }));
}

void Report::sort_checks() {
  std::stable_sort(checks.begin(), checks.end(), [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
}

std::string serialize_report(const Report& r) {
  Report sorted = r;
  sorted.sort_checks();
  std::ostringstream os;
  json header = {{"record", "header"},  {"schema", kReportSchema}, {"version", r.version}, {"suite", r.suite},
                 {"profile", r.profile}, {"seed", r.seed},          {"config", r.config}};
  os << header.dump() << "\n";
  for (const auto& c : sorted.checks) {
    json j = {{"record", "check"}, {"id", c.id}, {"status", status_name(c.status)}};
    if (c.status == CheckRecord::Status::Fail) j["witness"] = c.witness;
    if (c.status == CheckRecord::Status::Skipped) j["reason"] = c.reason;
    if (!c.detail.empty()) j["detail"] = c.detail;
    if (c.finding) j["finding"] = true;
    os << j.dump() << "\n";
  }
  json summary = {{"record", "summary"},
                  {"passed", r.count(CheckRecord::Status::Pass)},
                  {"failed", r.count(CheckRecord::Status::Fail)},
                  {"skipped", r.count(CheckRecord::Status::Skipped)},
                  {"status", r.all_pass() ? "pass" : "fail"},
                  {"timing_ms", r.timing_ms}};
  os << summary.dump() << "\n";
  return os.str();
}

Report parse_report(const std::string& text) {
  Report r;
  std::istringstream is(text);
  std::string line;
  bool have_header = false, have_summary = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (have_summary) throw std::invalid_argument("record after summary");
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(std::string("malformed report line: ") + e.what());
    }
    const std::string kind = j.at("record").get<std::string>();
    if (kind == "header") {
      if (have_header) throw std::invalid_argument("duplicate header");
      if (j.at("schema").get<std::string>() != kReportSchema) throw std::invalid_argument("unsupported schema");
      r.version = j.at("version").get<std::string>();
      r.suite = j.at("suite").get<std::string>();
      r.profile = j.at("profile").get<std::string>();
      r.seed = j.at("seed").get<std::uint64_t>();
      r.config = j.at("config").get<std::map<std::string, std::string>>();
      have_header = true;
    } else if (kind == "check") {
      if (!have_header) throw std::invalid_argument("check before header");
      CheckRecord c;
      c.id = j.at("id").get<std::string>();
      c.status = status_of(j.at("status").get<std::string>());
      if (c.status == CheckRecord::Status::Fail) c.witness = j.at("witness").get<std::string>();
      if (c.status == CheckRecord::Status::Skipped) c.reason = j.at("reason").get<std::string>();
      c.detail = j.value("detail", "");
      c.finding = j.value("finding", false);
      r.checks.push_back(std::move(c));
    } else if (kind == "summary") {
      r.timing_ms = j.at("timing_ms").get<double>();
      if (j.at("failed").get<std::size_t>() != r.count(CheckRecord::Status::Fail))
        throw std::invalid_argument("summary count disagrees with check records");
      have_summary = true;
    } else {
      throw std::invalid_argument("unknown record kind '" + kind + "'");
    }
  }
  if (!have_header || !have_summary) throw std::invalid_argument("report needs a header and a summary");
  return r;
}

std::string format_text(const Report& r) {
  Report sorted = r;
  sorted.sort_checks();
  std::ostringstream os;
  os << "suite " << r.suite << " (seed " << r.seed << ", " << r.profile << ")\n";
  for (const auto& c : sorted.checks) {
    os << "  [" << (c.finding ? "note" : status_name(c.status)) << "] " << c.id;
    if (c.status == CheckRecord::Status::Fail) os << ": " << c.witness;
    if (c.status == CheckRecord::Status::Skipped) os << ": " << c.reason;
    if (!c.detail.empty()) os << " -- " << c.detail;
    os << "\n";
  }
  os << (r.all_pass() ? "PASS" : "FAIL") << " " << r.count(CheckRecord::Status::Pass) << " passed, "
     << r.count(CheckRecord::Status::Fail) << " failed, " << r.count(CheckRecord::Status::Skipped) << " skipped\n";
  return os.str();
}

std::string strip_timing(const std::string& machine) {
  Report r = parse_report(machine);
  r.timing_ms = 0;
  return serialize_report(r);
}

}  // namespace cybelab
