#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ig {

enum class Verdict { pass, fail, inconclusive };

const char* to_string(Verdict v);

struct CheckRecord {
  std::string name;
  double estimate = 0.0;
  double standard_error = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

/// Structured record of a verification run. Serialization is byte-stable for
/// fixed inputs: fixed field order, 17-significant-digit numbers, no clocks.
struct VerificationReport {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> parameters;  // ordered, preformatted
  std::uint64_t seed = 0;
  std::string artifact_version;
  std::vector<CheckRecord> checks;

  void add(CheckRecord rec) { checks.push_back(std::move(rec)); }
  bool all_pass() const;
  bool any_fail() const;
};

/// %.17g formatting used for every number in emitted reports.
std::string format_g17(double x);

std::string to_json(const VerificationReport& r);
std::string to_csv(const VerificationReport& r);

/// 0 if every check passes; 2 on any fail; 3 when inconclusive-only.
int exit_code_for(const VerificationReport& r);

}  // namespace ig
