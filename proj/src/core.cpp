#include "tmkit/core.hpp"

#include <algorithm>
#include <tuple>

namespace tmkit {

std::string_view to_string(StageKind kind) {
  switch (kind) {
    case StageKind::Create: return "create";
    case StageKind::Process: return "process";
    case StageKind::Release: return "release";
    case StageKind::Transfer: return "transfer";
    case StageKind::Receive: return "receive";
  }
  return "?";
}

std::optional<StageKind> parse_stage_kind(std::string_view text) {
  for (StageKind k : kAllStageKinds) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DuplicatePath: return "DuplicatePath";
    case Errc::UnknownParent: return "UnknownParent";
    case Errc::DanglingRef: return "DanglingRef";
    case Errc::DuplicateArc: return "DuplicateArc";
    case Errc::SelfTrigger: return "SelfTrigger";
    case Errc::DuplicateEvent: return "DuplicateEvent";
    case Errc::UnknownEvent: return "UnknownEvent";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::OverlapAmbiguity: return "OverlapAmbiguity";
    case Errc::UnknownGoal: return "UnknownGoal";
    case Errc::NoInitialEvents: return "NoInitialEvents";
    case Errc::ConfigError: return "ConfigError";
    case Errc::AmbiguousSplice: return "AmbiguousSplice";
    case Errc::UnknownFixture: return "UnknownFixture";
  }
  return "?";
}

std::string StageRef::str() const {
  std::string out = thimac;
  out += '.';
  out += to_string(kind);
  return out;
}

bool BehaviorGraph::has_node(std::string_view name) const {
  return std::find(nodes.begin(), nodes.end(), name) != nodes.end();
}

std::string parent_path(std::string_view path) {
  auto dot = path.rfind('.');
  return dot == std::string_view::npos ? std::string{} : std::string(path.substr(0, dot));
}

std::string leaf_name(std::string_view path) {
  auto dot = path.rfind('.');
  return std::string(dot == std::string_view::npos ? path : path.substr(dot + 1));
}

std::optional<std::size_t> Model::stage_index(const StageRef& ref) const {
  auto it = stage_ids_.find(ref);
  if (it == stage_ids_.end()) return std::nullopt;
  return it->second;
}

SourceSpan Model::stage_span(const StageRef& ref) const {
  auto it = stage_spans_.find(ref);
  return it == stage_spans_.end() ? SourceSpan{} : it->second;
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

class Assembler {
 public:
  Assembler(std::map<std::string, Thimac>& thimacs, const AssembleOptions& opts)
      : thimacs_(thimacs), opts_(opts) {}

  Thimac& ensure(const std::string& path) {
    if (auto it = thimacs_.find(path); it != thimacs_.end()) return it->second;
    Thimac& parent = ensure(parent_path(path));
    Thimac t;
    t.id = next_id_++;
    t.name = leaf_name(path);
    t.path = path;
    parent.children.push_back(t.id);
    return thimacs_.emplace(path, std::move(t)).first->second;
  }

  void add_stage(const StageRef& ref, SourceSpan span, std::map<StageRef, SourceSpan>& spans) {
    if (!thimacs_.contains(ref.thimac)) {
      if (!opts_.implicit_thimacs) {
        throw Error(Errc::DanglingRef, "reference to undeclared thimac '" + ref.thimac + "'");
      }
    }
    ensure(ref.thimac).stages.insert(ref.kind);
    spans.emplace(ref, span);
  }

  int next_id_ = 1;

 private:
  std::map<std::string, Thimac>& thimacs_;
  const AssembleOptions& opts_;
};

}  // namespace

Model assemble_model(std::string name, const std::vector<Declaration>& decls,
                     const AssembleOptions& opts) {
  Model m;
  m.name_ = std::move(name);

  Thimac root;
  root.id = 0;
  root.name = m.name_;
  m.thimacs_.emplace("", root);

  // Explicit thimacs first so parent checks see the whole file.
  std::set<std::string> explicit_paths;
  for (const auto& d : decls) {
    if (const auto* t = std::get_if<ThimacDecl>(&d.item)) {
      if (t->path.empty()) throw Error(Errc::DanglingRef, "empty thimac path");
      if (!explicit_paths.insert(t->path).second) {
        throw Error(Errc::DuplicatePath, "thimac '" + t->path + "' declared twice");
      }
    }
  }
  for (const auto& p : explicit_paths) {
    std::string parent = parent_path(p);
    if (!parent.empty() && !explicit_paths.contains(parent)) {
      throw Error(Errc::UnknownParent,
                  "thimac '" + p + "' has undeclared parent '" + parent + "'");
    }
  }

  Assembler as(m.thimacs_, opts);
  for (const auto& d : decls) {
    if (const auto* t = std::get_if<ThimacDecl>(&d.item)) {
      Thimac& th = as.ensure(t->path);
      for (StageKind k : t->stages) {
        th.stages.insert(k);
        m.stage_spans_.emplace(StageRef{t->path, k}, d.span);
      }
    }
  }

  std::set<std::tuple<std::string, StageRef, StageRef>> seen_flows;
  std::set<std::pair<StageRef, StageRef>> seen_triggers;
  for (const auto& d : decls) {
    std::visit(Overloaded{
                   [&](const FlowDecl& f) {
                     if (f.chain.size() < 2) {
                       throw Error(Errc::ConfigError, "flow '" + f.label + "' needs two stages");
                     }
                     for (const auto& ref : f.chain) as.add_stage(ref, d.span, m.stage_spans_);
                     for (std::size_t i = 0; i + 1 < f.chain.size(); ++i) {
                       const auto& s = f.chain[i];
                       const auto& t = f.chain[i + 1];
                       if (!seen_flows.emplace(f.label, s, t).second) {
                         throw Error(Errc::DuplicateArc, "duplicate flow " + f.label + ": " +
                                                             s.str() + " -> " + t.str());
                       }
                       m.flows_.push_back(FlowArc{"f" + std::to_string(m.flows_.size() + 1),
                                                  f.label, s, t, d.span});
                     }
                   },
                   [&](const TriggerDecl& t) {
                     if (t.source == t.target) {
                       throw Error(Errc::SelfTrigger, "trigger from " + t.source.str() +
                                                          " to itself");
                     }
                     as.add_stage(t.source, d.span, m.stage_spans_);
                     as.add_stage(t.target, d.span, m.stage_spans_);
                     if (!seen_triggers.emplace(t.source, t.target).second) {
                       throw Error(Errc::DuplicateArc, "duplicate trigger " + t.source.str() +
                                                           " ~> " + t.target.str());
                     }
                     m.triggers_.push_back(
                         TriggerArc{"t" + std::to_string(m.triggers_.size() + 1), t.source,
                                    t.target, d.span});
                   },
                   [](const auto&) {},
               },
               d.item);
  }

  auto resolves = [&](const StageRef& r) {
    auto it = m.thimacs_.find(r.thimac);
    return it != m.thimacs_.end() && it->second.stages.contains(r.kind);
  };

  for (const auto& d : decls) {
    const auto* e = std::get_if<EventDecl>(&d.item);
    if (e == nullptr) continue;
    if (m.events_.contains(e->name)) {
      throw Error(Errc::DuplicateEvent, "event '" + e->name + "' declared twice");
    }
    Event ev{e->name, e->description, {}, e->time, d.span};
    for (const auto& member : e->members) {
      if (const auto* ref = std::get_if<StageRef>(&member)) {
        if (!resolves(*ref)) {
          throw Error(Errc::DanglingRef,
                      "event '" + e->name + "' names unknown stage " + ref->str());
        }
        ev.region.insert(*ref);
        continue;
      }
      const auto& arc_id = std::get<std::string>(member);
      bool found = false;
      for (const auto& f : m.flows_) {
        if (f.id == arc_id) {
          ev.region.insert(f.source);
          ev.region.insert(f.target);
          found = true;
        }
      }
      for (const auto& t : m.triggers_) {
        if (t.id == arc_id) {
          ev.region.insert(t.source);
          ev.region.insert(t.target);
          found = true;
        }
      }
      if (!found) {
        throw Error(Errc::DanglingRef, "event '" + e->name + "' names unknown arc " + arc_id);
      }
    }
    m.event_order_.push_back(e->name);
    m.events_.emplace(e->name, std::move(ev));
  }

  std::set<std::pair<std::string, std::string>> seen_edges;
  auto add_node = [&](const std::string& n) {
    if (!m.behavior_.has_node(n)) m.behavior_.nodes.push_back(n);
  };
  for (const auto& d : decls) {
    const auto* b = std::get_if<BehaviorDecl>(&d.item);
    if (b == nullptr) continue;
    for (const auto& n : b->chain) {
      if (!m.events_.contains(n)) {
        throw Error(Errc::UnknownEvent, "behavior names undeclared event '" + n + "'");
      }
      add_node(n);
    }
    for (std::size_t i = 0; i + 1 < b->chain.size(); ++i) {
      const auto& a = b->chain[i];
      const auto& c = b->chain[i + 1];
      if (a == c) throw Error(Errc::SelfLoop, "behavior edge " + a + " -> " + a);
      if (seen_edges.emplace(a, c).second) m.behavior_.edges.emplace_back(a, c);
    }
  }

  for (const auto& [path, th] : m.thimacs_) {
    for (StageKind k : th.stages) m.stages_.push_back(StageRef{path, k});
  }
  std::sort(m.stages_.begin(), m.stages_.end());
  for (std::size_t i = 0; i < m.stages_.size(); ++i) m.stage_ids_.emplace(m.stages_[i], i);
  return m;
}

}  // namespace tmkit
