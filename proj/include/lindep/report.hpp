#pragma once

// Check records and reports: plain text for people, one JSON object per
// line for machines. Output order is canonical (suite, then check).

#include <algorithm>
#include <map>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

namespace lindep {

enum class Status { Pass, Fail, Inconclusive };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

/// Where the expected value of a check comes from.
enum class Provenance { PublishedIdentity, IndependentOracle, Direct, Plumbing };

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::PublishedIdentity: return "published-identity";
    case Provenance::IndependentOracle: return "independent-oracle";
    case Provenance::Direct: return "direct";
    case Provenance::Plumbing: return "plumbing";
  }
  return "?";
}

struct Record {
  std::string suite;
  std::string check;
  Status status = Status::Fail;
  Provenance expected_from = Provenance::Direct;
  std::string anchor;
  nlohmann::json values = nlohmann::json::object();
  std::string detail;

  nlohmann::json to_json() const {
    return {{"suite", suite},   {"check", check},   {"status", to_string(status)},
            {"expected_from", to_string(expected_from)}, {"anchor", anchor},
            {"values", values}, {"detail", detail}};
  }
};

inline Status pass_if(bool ok) { return ok ? Status::Pass : Status::Fail; }

class Report {
 public:
  void add(Record r) { records_.push_back(std::move(r)); }
  void add(const std::vector<Record>& rs) { records_.insert(records_.end(), rs.begin(), rs.end()); }

  void sort() {
    std::stable_sort(records_.begin(), records_.end(), [](const Record& a, const Record& b) {
      return std::tie(a.suite, a.check) < std::tie(b.suite, b.check);
    });
  }

  const std::vector<Record>& records() const { return records_; }

  std::size_t count(Status s) const {
    return static_cast<std::size_t>(
        std::count_if(records_.begin(), records_.end(), [s](const Record& r) { return r.status == s; }));
  }

  /// 0 all pass, 1 any failure, 3 inconclusive records but no failure.
  int exit_code() const {
    if (count(Status::Fail)) return 1;
    if (count(Status::Inconclusive)) return 3;
    return 0;
  }

  void write_text(std::ostream& os) const {
    for (const auto& r : records_) {
      os << '[' << to_string(r.status) << "] " << r.suite << " / " << r.check;
      for (const auto& [k, v] : r.values.items()) {
        if (v.is_array() && v.size() > 8) {
          os << "  " << k << "=[" << v.size() << " values]";
        } else {
          os << "  " << k << '=' << v.dump();
        }
      }
      os << "\n    " << to_string(r.expected_from) << ": " << r.anchor;
      if (!r.detail.empty()) os << "\n    " << r.detail;
      os << '\n';
    }
    os << "summary: " << count(Status::Pass) << " pass, " << count(Status::Fail) << " fail, "
       << count(Status::Inconclusive) << " inconclusive\n";
  }

  void write_jsonl(std::ostream& os) const {
    for (const auto& r : records_) os << r.to_json().dump() << '\n';
    os << nlohmann::json{{"summary",
                          {{"pass", count(Status::Pass)},
                           {"fail", count(Status::Fail)},
                           {"inconclusive", count(Status::Inconclusive)}}}}
              .dump()
       << '\n';
  }

 private:
  std::vector<Record> records_;
};

}  // namespace lindep
