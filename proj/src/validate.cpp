#include "tmkit/validate.hpp"

#include <set>

namespace tmkit {

bool flow_adjacency_legal(StageKind src, StageKind dst, bool same_thimac) {
  using K = StageKind;
  if (!same_thimac) return src == K::Transfer && dst == K::Transfer;
  switch (src) {
    case K::Create: return dst == K::Process || dst == K::Release;
    case K::Receive: return dst == K::Process || dst == K::Release;
    case K::Process: return dst == K::Release;
    case K::Release: return dst == K::Transfer;
    case K::Transfer: return dst == K::Receive;
  }
  return false;
}

std::vector<Diagnostic> check_static(const Model& model) {
  std::vector<Diagnostic> out;
  auto add = [&](Severity sev, const char* code, std::string msg, std::string subject,
                 SourceSpan span) {
    out.push_back(Diagnostic{sev, code, std::move(msg), std::move(subject), span});
  };

  std::set<std::pair<StageRef, StageRef>> flow_pairs;
  std::set<StageRef> touched;
  for (const auto& f : model.flows()) {
    flow_pairs.emplace(f.source, f.target);
    touched.insert(f.source);
    touched.insert(f.target);
    const bool same = f.source.thimac == f.target.thimac;
    const std::string arrow = f.label + ": " + f.source.str() + " -> " + f.target.str();
    if (flow_adjacency_legal(f.source.kind, f.target.kind, same)) continue;
    if (f.target.kind == StageKind::Create) {
      add(Severity::Error, codes::kFlowIntoCreate,
          "flow " + arrow + " ends in a create stage; creation can only be triggered", f.id,
          f.span);
    } else if (same && f.source.kind == StageKind::Transfer &&
               f.target.kind == StageKind::Transfer) {
      add(Severity::Error, codes::kSelfBoundary,
          "flow " + arrow + " connects a thimac's transfer stage to itself", f.id, f.span);
    } else {
      add(Severity::Error, codes::kIllegalFlow,
          "flow " + arrow + " is not a legal " +
              (same ? std::string("within-thimac") : std::string("cross-thimac")) + " step",
          f.id, f.span);
    }
  }

  for (const auto& t : model.triggers()) {
    touched.insert(t.source);
    touched.insert(t.target);
    const std::string arrow = t.source.str() + " ~> " + t.target.str();
    if (!is_transforming(t.target.kind)) {
      add(Severity::Error, codes::kTriggerTarget,
          "trigger " + arrow + " must land on a create or process stage", t.id, t.span);
    }
    if (flow_pairs.contains({t.source, t.target})) {
      add(Severity::Warning, codes::kTriggerShadowsFlow,
          "trigger " + arrow + " duplicates a flow between the same stages", t.id, t.span);
    }
    if (t.source.kind == StageKind::Release || t.source.kind == StageKind::Transfer) {
      add(Severity::Warning, codes::kUnusualTriggerSource,
          "trigger " + arrow + " starts at a " + std::string(to_string(t.source.kind)) +
              " stage",
          t.id, t.span);
    }
  }

  for (const auto& s : model.stages()) {
    if (!touched.contains(s)) {
      add(Severity::Warning, codes::kOrphanStage, "stage " + s.str() + " has no flow or trigger",
          s.str(), model.stage_span(s));
    }
  }

  sort_diagnostics(out);
  return out;
}

}  // namespace tmkit
