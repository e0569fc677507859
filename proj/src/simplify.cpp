#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "tmkit/match.hpp"

namespace tmkit {

std::string_view to_string(EdgeKind k) { return k == EdgeKind::Flow ? "flow" : "trigger"; }

void SimplifiedGraph::normalize() {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

std::string SimplifiedGraph::to_edge_list() const {
  std::ostringstream out;
  for (const auto& n : nodes) {
    out << "# node " << n.id << ": " << n.role << '.' << to_string(n.kind);
    if (!n.origin.empty()) out << " (" << n.origin << ')';
    out << '\n';
  }
  for (const auto& e : edges) {
    out << e.from << " -> " << e.to << " [" << to_string(e.kind) << ", "
        << (e.thing.empty() ? "-" : e.thing) << "]\n";
  }
  return out.str();
}

SimplifiedGraph SimplifiedGraph::permuted(const std::vector<int>& perm) const {
  SimplifiedGraph g;
  g.nodes.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    SimplifiedNode n = nodes[i];
    n.id = perm[i];
    g.nodes[static_cast<std::size_t>(perm[i])] = std::move(n);
  }
  for (const auto& e : edges) {
    g.edges.push_back({perm[static_cast<std::size_t>(e.from)],
                       perm[static_cast<std::size_t>(e.to)], e.kind, e.thing});
  }
  g.normalize();
  return g;
}

namespace {

class Splicer {
 public:
  explicit Splicer(const Model& m) : model_(m) {
    const auto& stages = m.stages();
    out_.resize(stages.size());
    in_.resize(stages.size());
    for (std::size_t i = 0; i < m.flows().size(); ++i) {
      const auto& f = m.flows()[i];
      out_[*m.stage_index(f.source)].push_back(i);
      in_[*m.stage_index(f.target)].push_back(i);
    }
    for (std::size_t s = 0; s < stages.size(); ++s) {
      if (is_transforming(stages[s].kind)) {
        node_of_[s] = static_cast<int>(graph_.nodes.size());
        graph_.nodes.push_back({static_cast<int>(graph_.nodes.size()), leaf_name(stages[s].thimac),
                                stages[s].kind, false, stages[s].str()});
      }
    }
  }

  SimplifiedGraph run() {
    const auto& flows = model_.flows();
    for (std::size_t i = 0; i < flows.size(); ++i) {
      const auto& f = flows[i];
      std::size_t s = *model_.stage_index(f.source);
      Endpoint start;
      if (is_transforming(f.source.kind)) {
        start = Endpoint{false, s};
      } else if (!has_incoming_label(s, f.label)) {
        start = Endpoint{true, s};
      } else {
        continue;  // interior arc, covered by the path through it
      }
      for (const Endpoint& end : ends_after(i)) pending_.push_back({start, end, EdgeKind::Flow, f.label});
    }
    for (const auto& t : model_.triggers()) {
      Endpoint a = nearest(*model_.stage_index(t.source), /*forward=*/false);
      Endpoint b = nearest(*model_.stage_index(t.target), /*forward=*/true);
      pending_.push_back({a, b, EdgeKind::Trigger, ""});
    }

    // Environment nodes get ids after the create/process nodes, in stage order.
    std::set<std::size_t> env_stages;
    for (const auto& p : pending_) {
      if (p.from.env) env_stages.insert(p.from.stage);
      if (p.to.env) env_stages.insert(p.to.stage);
    }
    for (std::size_t s : env_stages) {
      env_node_[s] = static_cast<int>(graph_.nodes.size());
      graph_.nodes.push_back({static_cast<int>(graph_.nodes.size()), "env", StageKind::Create,
                              true, model_.stages()[s].str()});
    }
    for (const auto& p : pending_) {
      graph_.edges.push_back({id_of(p.from), id_of(p.to), p.kind, p.thing});
    }
    graph_.normalize();
    return std::move(graph_);
  }

 private:
  struct Endpoint {
    bool env = false;
    std::size_t stage = 0;
    auto operator<=>(const Endpoint&) const = default;
  };
  struct Pending {
    Endpoint from;
    Endpoint to;
    EdgeKind kind;
    std::string thing;
  };

  bool has_incoming_label(std::size_t s, const std::string& label) const {
    return std::any_of(in_[s].begin(), in_[s].end(),
                       [&](std::size_t f) { return model_.flows()[f].label == label; });
  }

  int id_of(const Endpoint& e) const {
    return e.env ? env_node_.at(e.stage) : node_of_.at(e.stage);
  }

  // Where the thing carried by `flow` ends up once elided stages are skipped.
  std::vector<Endpoint> ends_after(std::size_t flow) {
    const auto& f = model_.flows()[flow];
    std::size_t t = *model_.stage_index(f.target);
    if (is_transforming(f.target.kind)) return {Endpoint{false, t}};
    std::set<std::size_t> visiting;
    auto ends = interior_ends(t, f.label, visiting);
    return {ends.begin(), ends.end()};
  }

  std::set<Endpoint> interior_ends(std::size_t s, const std::string& label,
                                   std::set<std::size_t>& visiting) {
    visiting.insert(s);
    std::set<Endpoint> ends;
    bool continued = false;
    for (std::size_t fi : out_[s]) {
      const auto& f = model_.flows()[fi];
      if (f.label != label) continue;
      continued = true;
      std::size_t t = *model_.stage_index(f.target);
      if (is_transforming(f.target.kind)) {
        ends.insert(Endpoint{false, t});
      } else if (!visiting.contains(t)) {
        auto sub = interior_ends(t, label, visiting);
        ends.insert(sub.begin(), sub.end());
      }
    }
    if (!continued) ends.insert(Endpoint{true, s});
    visiting.erase(s);

    const auto transforming =
        std::count_if(ends.begin(), ends.end(), [](const Endpoint& e) { return !e.env; });
    if (transforming >= 2) {
      throw Error(Errc::AmbiguousSplice, "stage " + model_.stages()[s].str() + " passes " + label +
                                             " on to several create/process stages");
    }
    return ends;
  }

  // Closest create/process stage against (or along) the flow direction; the
  // boundary stage where the walk runs out becomes an environment node.
  Endpoint nearest(std::size_t s, bool forward) const {
    if (is_transforming(model_.stages()[s].kind)) return Endpoint{false, s};
    std::deque<std::size_t> queue{s};
    std::map<std::size_t, int> dist{{s, 0}};
    std::optional<std::pair<int, std::size_t>> best_node;
    std::optional<std::pair<int, std::size_t>> best_boundary;
    while (!queue.empty()) {
      std::size_t cur = queue.front();
      queue.pop_front();
      int d = dist[cur];
      if (cur != s && is_transforming(model_.stages()[cur].kind)) {
        auto cand = std::make_pair(d, static_cast<std::size_t>(node_of_.at(cur)));
        if (!best_node || cand < *best_node) best_node = cand;
        continue;
      }
      const auto& arcs = forward ? out_[cur] : in_[cur];
      if (arcs.empty()) {
        auto cand = std::make_pair(d, cur);
        if (!best_boundary || cand < *best_boundary) best_boundary = cand;
      }
      for (std::size_t fi : arcs) {
        const auto& f = model_.flows()[fi];
        std::size_t nxt = *model_.stage_index(forward ? f.target : f.source);
        if (dist.emplace(nxt, d + 1).second) queue.push_back(nxt);
      }
    }
    if (best_node) {
      for (const auto& [stage, node] : node_of_) {
        if (static_cast<std::size_t>(node) == best_node->second) return Endpoint{false, stage};
      }
    }
    if (best_boundary) return Endpoint{true, best_boundary->second};
    return Endpoint{true, s};
  }

  const Model& model_;
  SimplifiedGraph graph_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::map<std::size_t, int> node_of_;
  std::map<std::size_t, int> env_node_;
  std::vector<Pending> pending_;
};

}  // namespace

SimplifiedGraph simplify(const Model& model) { return Splicer(model).run(); }

}  // namespace tmkit
