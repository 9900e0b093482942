#include "igeom/report.hpp"

#include <cstdio>
#include <sstream>

namespace ig {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "inconclusive";
  }
}

bool VerificationReport::all_pass() const {
  for (const auto& c : checks)
    if (c.verdict != Verdict::pass) return false;
  return true;
}

bool VerificationReport::any_fail() const {
  for (const auto& c : checks)
    if (c.verdict == Verdict::fail) return true;
  return false;
}

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {
std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}
}  // namespace

std::string to_json(const VerificationReport& r) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"suite\": \"" << json_escape(r.suite) << "\",\n";
  os << "  \"artifact_version\": \"" << json_escape(r.artifact_version) << "\",\n";
  os << "  \"seed\": " << r.seed << ",\n";
  os << "  \"parameters\": {";
  for (std::size_t i = 0; i < r.parameters.size(); ++i) {
    if (i) os << ", ";
    os << "\"" << json_escape(r.parameters[i].first) << "\": "
       << r.parameters[i].second;
  }
  os << "},\n";
  os << "  \"checks\": [\n";
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    const auto& c = r.checks[i];
    os << "    {\"name\": \"" << json_escape(c.name) << "\", \"estimate\": "
       << format_g17(c.estimate) << ", \"standard_error\": " << format_g17(c.standard_error)
       << ", \"tolerance\": " << format_g17(c.tolerance) << ", \"verdict\": \""
       << to_string(c.verdict) << "\"}";
    os << (i + 1 < r.checks.size() ? ",\n" : "\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

std::string to_csv(const VerificationReport& r) {
  std::ostringstream os;
  os << "name,estimate,standard_error,tolerance,verdict\n";
  for (const auto& c : r.checks) {
    os << c.name << "," << format_g17(c.estimate) << "," << format_g17(c.standard_error) << ","
       << format_g17(c.tolerance) << "," << to_string(c.verdict) << "\n";
  }
  return os.str();
}

int exit_code_for(const VerificationReport& r) {
  if (r.any_fail()) return 2;
  if (!r.all_pass()) return 3;
  return 0;
}

}  // namespace ig
