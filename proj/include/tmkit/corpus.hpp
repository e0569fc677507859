#pragma once

#include <map>
#include <string>
#include <vector>

namespace tmkit {

struct Fixture {
  std::string name;
  std::string source;  // .tm text
  /// Analysis name ("check", "chronology", "simplified", "trace", "format")
  /// to expected output. Analyses that do not apply are absent.
  std::map<std::string, std::string> goldens;
  std::string provenance;
};

/// The documented corpus, in listing order.
const std::vector<std::string>& fixture_names();
/// Documented corpus plus companion fixtures (add-service-alt).
const std::vector<std::string>& all_fixture_names();

/// Throws Error(UnknownFixture).
Fixture load_fixture(const std::string& name);

/// Runs the pipeline over `source` and returns what the goldens should hold.
std::map<std::string, std::string> compute_goldens(const std::string& source);

/// Trace golden settings.
inline constexpr unsigned kGoldenSeed = 1;
inline constexpr std::size_t kGoldenSteps = 25;

}  // namespace tmkit
