#include "tmkit/diagnostic.hpp"

#include <algorithm>
#include <tuple>

#include <nlohmann/json.hpp>

namespace tmkit {

std::string_view to_string(Severity s) {
  return s == Severity::Error ? "error" : "warning";
}

std::string to_json_line(const Diagnostic& d) {
  nlohmann::ordered_json j;
  j["severity"] = to_string(d.severity);
  j["code"] = d.code;
  j["message"] = d.message;
  j["subject"] = d.subject;
  j["line"] = d.span ? d.span->line : 0;
  j["col"] = d.span ? d.span->col : 0;
  return j.dump();
}

std::string to_json_lines(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    out += to_json_line(d);
    out += '\n';
  }
  return out;
}

bool has_errors(const std::vector<Diagnostic>& ds) {
  return std::any_of(ds.begin(), ds.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

void sort_diagnostics(std::vector<Diagnostic>& ds) {
  std::stable_sort(ds.begin(), ds.end(), [](const Diagnostic& a, const Diagnostic& b) {
    auto key = [](const Diagnostic& d) {
      return std::make_tuple(d.span.value_or(SourceSpan{}), d.code, d.subject);
    };
    return key(a) < key(b);
  });
}

}  // namespace tmkit
