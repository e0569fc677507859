#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tmkit/core.hpp"

namespace tmkit {

enum class Severity { Error, Warning };

/// Stable diagnostic codes. Tools match on these strings; never rename one.
namespace codes {
inline constexpr const char* kSyntax = "E_SYNTAX";
inline constexpr const char* kUnknownStageKind = "E_UNKNOWN_STAGE_KIND";
inline constexpr const char* kUnterminatedBlock = "E_UNTERMINATED_BLOCK";
inline constexpr const char* kAssembly = "E_ASSEMBLY";
inline constexpr const char* kIllegalFlow = "E_ILLEGAL_FLOW";
inline constexpr const char* kFlowIntoCreate = "E_FLOW_INTO_CREATE";
inline constexpr const char* kSelfBoundary = "E_SELF_BOUNDARY";
inline constexpr const char* kTriggerTarget = "E_TRIGGER_TARGET";
inline constexpr const char* kTriggerShadowsFlow = "W_TRIGGER_SHADOWS_FLOW";
inline constexpr const char* kOrphanStage = "W_ORPHAN_STAGE";
inline constexpr const char* kUnusualTriggerSource = "W_UNUSUAL_TRIGGER_SOURCE";
inline constexpr const char* kEmptyRegion = "E_EMPTY_REGION";
inline constexpr const char* kUnresolvedRef = "E_UNRESOLVED_REF";
inline constexpr const char* kDisconnectedRegion = "E_DISCONNECTED_REGION";
inline constexpr const char* kOverlapAmbiguity = "E_OVERLAP_AMBIGUITY";
inline constexpr const char* kChronologyGap = "E_CHRONOLOGY_GAP";
inline constexpr const char* kUnsupportedEdge = "W_UNSUPPORTED_EDGE";
}  // namespace codes

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  std::string subject;
  std::optional<SourceSpan> span;
};

std::string_view to_string(Severity s);

/// One JSON object per line: severity, code, message, subject, line, col.
std::string to_json_line(const Diagnostic& d);
std::string to_json_lines(const std::vector<Diagnostic>& ds);

bool has_errors(const std::vector<Diagnostic>& ds);

/// Orders by source span (absent spans first), then code, then subject.
void sort_diagnostics(std::vector<Diagnostic>& ds);

}  // namespace tmkit
