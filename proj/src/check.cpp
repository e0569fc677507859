#include "tmkit/check.hpp"

#include "tmkit/behavior.hpp"
#include "tmkit/dsl.hpp"
#include "tmkit/validate.hpp"

namespace tmkit {

CheckResult check_source(std::string_view text, const AssembleOptions& opts) {
  CheckResult result;
  ParseResult parsed = parse(text);
  if (!parsed.ok()) {
    result.diagnostics = std::move(parsed.diagnostics);
    sort_diagnostics(result.diagnostics);
    return result;
  }
  try {
    result.model = assemble_model(parsed.model_name, parsed.decls, opts);
  } catch (const Error& err) {
    result.diagnostics.push_back(
        {Severity::Error, codes::kAssembly, err.what(), std::string(to_string(err.code())), {}});
    return result;
  }
  const Model& m = *result.model;
  auto& out = result.diagnostics;
  auto add = [&out](std::vector<Diagnostic> ds) {
    out.insert(out.end(), std::make_move_iterator(ds.begin()), std::make_move_iterator(ds.end()));
  };
  add(check_static(m));
  for (const auto& e : model_events(m)) add(check_event_region(m, e));
  add(check_behavior(m));
  sort_diagnostics(out);
  return result;
}

}  // namespace tmkit
