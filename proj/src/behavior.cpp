#include "tmkit/behavior.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace tmkit {

namespace {

struct ArcEnds {
  std::string id;
  StageRef source;
  StageRef target;
};

std::vector<ArcEnds> all_arcs(const Model& model) {
  std::vector<ArcEnds> arcs;
  arcs.reserve(model.flows().size() + model.triggers().size());
  for (const auto& f : model.flows()) arcs.push_back({f.id, f.source, f.target});
  for (const auto& t : model.triggers()) arcs.push_back({t.id, t.source, t.target});
  return arcs;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

using Adjacency = std::map<std::string, std::vector<std::string>>;

Adjacency adjacency(const std::vector<std::pair<std::string, std::string>>& edges) {
  Adjacency adj;
  for (const auto& [a, b] : edges) adj[a].push_back(b);
  return adj;
}

std::set<std::string> reachable_from(const Adjacency& adj, const std::string& start) {
  std::set<std::string> seen{start};
  std::queue<std::string> q;
  q.push(start);
  while (!q.empty()) {
    auto cur = q.front();
    q.pop();
    auto it = adj.find(cur);
    if (it == adj.end()) continue;
    for (const auto& nxt : it->second) {
      if (seen.insert(nxt).second) q.push(nxt);
    }
  }
  return seen;
}

}  // namespace

std::vector<Event> model_events(const Model& model) {
  std::vector<Event> out;
  for (const auto& name : model.event_order()) out.push_back(model.events().at(name));
  return out;
}

std::vector<std::string> closed_arcs(const Model& model, const Event& event) {
  std::vector<std::string> ids;
  for (const auto& a : all_arcs(model)) {
    if (event.region.contains(a.source) && event.region.contains(a.target)) ids.push_back(a.id);
  }
  return ids;
}

std::vector<Diagnostic> check_event_region(const Model& model, const Event& event) {
  std::vector<Diagnostic> out;
  if (event.region.empty()) {
    out.push_back({Severity::Error, codes::kEmptyRegion, "event " + event.name + " has an empty region",
                   event.name, event.span});
    return out;
  }
  std::vector<StageRef> members;
  for (const auto& ref : event.region) {
    if (model.has_stage(ref)) {
      members.push_back(ref);
    } else {
      out.push_back({Severity::Error, codes::kUnresolvedRef,
                     "event " + event.name + " names unknown stage " + ref.str(), event.name,
                     event.span});
    }
  }
  if (members.size() > 1) {
    std::map<StageRef, std::size_t> index;
    for (std::size_t i = 0; i < members.size(); ++i) index.emplace(members[i], i);
    DisjointSets sets(members.size());
    for (const auto& a : all_arcs(model)) {
      auto s = index.find(a.source);
      auto t = index.find(a.target);
      if (s != index.end() && t != index.end()) sets.unite(s->second, t->second);
    }
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < members.size(); ++i) roots.insert(sets.find(i));
    if (roots.size() > 1) {
      out.push_back({Severity::Error, codes::kDisconnectedRegion,
                     "event " + event.name + " region splits into " +
                         std::to_string(roots.size()) + " disconnected parts",
                     event.name, event.span});
    }
  }
  return out;
}

std::set<Dependency> infer_dependencies(const Model& model, const std::vector<Event>& events) {
  // Membership bitmap: one row per model stage, one bit per event.
  const std::size_t n_stages = model.stages().size();
  const std::size_t n_events = events.size();
  std::vector<std::vector<bool>> member(n_stages, std::vector<bool>(n_events, false));
  for (std::size_t e = 0; e < n_events; ++e) {
    for (const auto& ref : events[e].region) {
      if (auto idx = model.stage_index(ref)) member[*idx][e] = true;
    }
  }

  std::set<Dependency> deps;
  std::vector<std::string> ambiguous;
  for (const auto& a : all_arcs(model)) {
    auto s = model.stage_index(a.source);
    auto t = model.stage_index(a.target);
    if (!s || !t) continue;
    const auto& src_bits = member[*s];
    const auto& dst_bits = member[*t];
    if (std::count(src_bits.begin(), src_bits.end(), true) >= 2 &&
        std::count(dst_bits.begin(), dst_bits.end(), true) >= 2) {
      ambiguous.push_back(a.id);
      continue;
    }
    for (std::size_t i = 0; i < n_events; ++i) {
      if (!src_bits[i]) continue;
      for (std::size_t j = 0; j < n_events; ++j) {
        if (i != j && dst_bits[j]) deps.emplace(events[i].name, events[j].name);
      }
    }
  }
  if (!ambiguous.empty()) {
    std::string ids;
    for (const auto& id : ambiguous) ids += (ids.empty() ? "" : ", ") + id;
    throw Error(Errc::OverlapAmbiguity, "arcs lie inside several overlapping regions: " + ids);
  }
  return deps;
}

std::set<Dependency> infer_dependencies(const Model& model) {
  return infer_dependencies(model, model_events(model));
}

std::vector<Diagnostic> check_behavior(const Model& model, const std::vector<Event>& events,
                                       const BehaviorGraph& behavior) {
  std::vector<Diagnostic> out;
  std::map<std::string, SourceSpan> spans;
  for (const auto& e : events) spans[e.name] = e.span;
  auto span_of = [&](const std::string& name) -> std::optional<SourceSpan> {
    auto it = spans.find(name);
    if (it == spans.end()) return std::nullopt;
    return it->second;
  };

  std::set<Dependency> inferred;
  try {
    inferred = infer_dependencies(model, events);
  } catch (const Error& err) {
    if (err.code() != Errc::OverlapAmbiguity) throw;
    out.push_back({Severity::Error, codes::kOverlapAmbiguity, err.what(), "", std::nullopt});
    return out;
  }

  const Adjacency declared = adjacency(behavior.edges);
  for (const auto& [a, b] : inferred) {
    if (!reachable_from(declared, a).contains(b)) {
      out.push_back({Severity::Error, codes::kChronologyGap,
                     "event " + b + " depends on " + a + " but the behavior never orders " + a +
                         " before " + b,
                     a + " -> " + b, span_of(b)});
    }
  }

  const Adjacency implied = adjacency({inferred.begin(), inferred.end()});
  for (const auto& [a, b] : behavior.edges) {
    if (!reachable_from(implied, a).contains(b)) {
      out.push_back({Severity::Warning, codes::kUnsupportedEdge,
                     "behavior edge " + a + " -> " + b + " has no supporting flow or trigger",
                     a + " -> " + b, span_of(a)});
    }
  }
  sort_diagnostics(out);
  return out;
}

std::vector<Diagnostic> check_behavior(const Model& model) {
  return check_behavior(model, model_events(model), model.behavior());
}

std::set<std::string> nonfunctional_events(const BehaviorGraph& behavior,
                                           const std::set<std::string>& goals) {
  for (const auto& g : goals) {
    if (!behavior.has_node(g)) throw Error(Errc::UnknownGoal, "goal '" + g + "' is not an event of the behavior");
  }
  // Walk backwards from the goals; whatever is not reached cannot contribute.
  std::vector<std::pair<std::string, std::string>> reversed;
  for (const auto& [a, b] : behavior.edges) reversed.emplace_back(b, a);
  const Adjacency back = adjacency(reversed);
  std::set<std::string> useful;
  for (const auto& g : goals) {
    auto r = reachable_from(back, g);
    useful.insert(r.begin(), r.end());
  }
  std::set<std::string> out;
  for (const auto& n : behavior.nodes) {
    if (!useful.contains(n)) out.insert(n);
  }
  return out;
}

}  // namespace tmkit
