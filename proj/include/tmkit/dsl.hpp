#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tmkit/core.hpp"
#include "tmkit/diagnostic.hpp"

namespace tmkit {

/// Result of parsing one `.tm` file. On syntax errors `decls` holds every
/// statement that parsed cleanly and `diagnostics` lists the rest.
struct ParseResult {
  std::string model_name = "unnamed";
  std::vector<Declaration> decls;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
};

ParseResult parse(std::string_view text);

/// Canonical text: thimacs in path order, then flows, triggers, events and
/// behavior edges in declaration order, one statement per line.
std::string format(const Model& model);

/// parse + assemble; throws Error on assembly failure and on syntax errors
/// (the latter as Errc::ConfigError carrying the first diagnostic).
Model load_model(std::string_view text, const AssembleOptions& opts = {});

}  // namespace tmkit
