#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tmkit {

/// The five generic operations a thimac can perform on things.
enum class StageKind : std::uint8_t { Create, Process, Release, Transfer, Receive };

inline constexpr std::array<StageKind, 5> kAllStageKinds = {
    StageKind::Create, StageKind::Process, StageKind::Release, StageKind::Transfer,
    StageKind::Receive};

std::string_view to_string(StageKind kind);
std::optional<StageKind> parse_stage_kind(std::string_view text);

/// Create and Process survive simplification; the others only move things.
constexpr bool is_transforming(StageKind k) {
  return k == StageKind::Create || k == StageKind::Process;
}

enum class Errc {
  DuplicatePath,
  UnknownParent,
  DanglingRef,
  DuplicateArc,
  SelfTrigger,
  DuplicateEvent,
  UnknownEvent,
  SelfLoop,
  OverlapAmbiguity,
  UnknownGoal,
  NoInitialEvents,
  ConfigError,
  AmbiguousSplice,
  UnknownFixture,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

struct SourceSpan {
  int line = 0;
  int col = 0;
  auto operator<=>(const SourceSpan&) const = default;
};

/// Addresses one stage of one thimac, written `Path.kind` in text.
struct StageRef {
  std::string thimac;
  StageKind kind = StageKind::Create;

  std::string str() const;
  auto operator<=>(const StageRef&) const = default;
};

struct Thimac {
  int id = 0;
  std::string name;
  std::string path;  // "" for the root
  std::vector<int> children;
  std::set<StageKind> stages;
};

struct FlowArc {
  std::string id;
  std::string label;
  StageRef source;
  StageRef target;
  SourceSpan span;
};

struct TriggerArc {
  std::string id;
  StageRef source;
  StageRef target;
  SourceSpan span;
};

struct Event {
  std::string name;
  std::optional<std::string> description;
  std::set<StageRef> region;
  std::optional<std::string> time;
  SourceSpan span;
};

struct BehaviorGraph {
  std::vector<std::string> nodes;  // first-appearance order
  std::vector<std::pair<std::string, std::string>> edges;

  bool empty() const { return nodes.empty(); }
  bool has_node(std::string_view name) const;
};

// ---- declarations (produced by the parser or built by hand) ----

struct ThimacDecl {
  std::string path;
  std::vector<StageKind> stages;
};
struct FlowDecl {
  std::string label;
  std::vector<StageRef> chain;
};
struct TriggerDecl {
  StageRef source;
  StageRef target;
};
/// Region members are stage refs or arc ids ("f3", "t1").
struct EventDecl {
  std::string name;
  std::optional<std::string> description;
  std::vector<std::variant<StageRef, std::string>> members;
  std::optional<std::string> time;
};
struct BehaviorDecl {
  std::vector<std::string> chain;
};

struct Declaration {
  std::variant<ThimacDecl, FlowDecl, TriggerDecl, EventDecl, BehaviorDecl> item;
  SourceSpan span;
};

struct AssembleOptions {
  /// Thimacs referenced only by flows/triggers are created on the fly.
  bool implicit_thimacs = true;
};

/// Immutable assembled model. Construct through assemble_model().
class Model {
 public:
  const std::string& name() const { return name_; }
  const std::map<std::string, Thimac>& thimacs() const { return thimacs_; }
  const std::vector<FlowArc>& flows() const { return flows_; }
  const std::vector<TriggerArc>& triggers() const { return triggers_; }
  const std::map<std::string, Event>& events() const { return events_; }
  /// Events in declaration order.
  const std::vector<std::string>& event_order() const { return event_order_; }
  const BehaviorGraph& behavior() const { return behavior_; }

  /// Every stage of every thimac, sorted by (path, kind).
  const std::vector<StageRef>& stages() const { return stages_; }
  std::optional<std::size_t> stage_index(const StageRef& ref) const;
  bool has_stage(const StageRef& ref) const { return stage_index(ref).has_value(); }
  SourceSpan stage_span(const StageRef& ref) const;

  const Thimac& root() const { return thimacs_.at(""); }

 private:
  friend Model assemble_model(std::string name, const std::vector<Declaration>& decls,
                              const AssembleOptions& opts);

  std::string name_;
  std::map<std::string, Thimac> thimacs_;
  std::vector<FlowArc> flows_;
  std::vector<TriggerArc> triggers_;
  std::map<std::string, Event> events_;
  std::vector<std::string> event_order_;
  BehaviorGraph behavior_;
  std::vector<StageRef> stages_;
  std::map<StageRef, std::size_t> stage_ids_;
  std::map<StageRef, SourceSpan> stage_spans_;
};

Model assemble_model(std::string name, const std::vector<Declaration>& decls,
                     const AssembleOptions& opts = {});

/// Parent path of a dotted path; "" for top-level paths.
std::string parent_path(std::string_view path);
/// Last dotted segment of a path.
std::string leaf_name(std::string_view path);

}  // namespace tmkit
