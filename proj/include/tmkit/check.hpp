#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "tmkit/core.hpp"
#include "tmkit/diagnostic.hpp"

namespace tmkit {

struct CheckResult {
  std::optional<Model> model;  // absent on syntax or assembly errors
  std::vector<Diagnostic> diagnostics;
};

/// Full pipeline: parse, assemble, static rules, event regions, chronology.
/// Assembly failures come back as a single E_ASSEMBLY diagnostic.
CheckResult check_source(std::string_view text, const AssembleOptions& opts = {});

}  // namespace tmkit
