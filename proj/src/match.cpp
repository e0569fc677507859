#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "tmkit/match.hpp"

namespace tmkit {

std::string node_label(const SimplifiedNode& n, const MatchPolicy& policy) {
  std::string out = n.env ? "env:" : "";
  if (policy.match_role_names && !n.env) out += n.role + ".";
  out += to_string(n.kind);
  return out;
}

std::string edge_label(const SimplifiedEdge& e, const MatchPolicy& policy) {
  std::string out(to_string(e.kind));
  if (policy.match_thing_labels) out += "|" + e.thing;
  return out;
}

namespace {

/// Labeled multigraph with string labels, the common input of refinement.
struct LabeledGraph {
  std::vector<std::string> labels;
  struct Arc {
    int from;
    int to;
    std::string label;
  };
  std::vector<Arc> arcs;
};

LabeledGraph to_labeled(const SimplifiedGraph& g, const MatchPolicy& policy) {
  LabeledGraph lg;
  for (const auto& n : g.nodes) lg.labels.push_back(node_label(n, policy));
  for (const auto& e : g.edges) lg.arcs.push_back({e.from, e.to, edge_label(e, policy)});
  return lg;
}

LabeledGraph disjoint_union(const LabeledGraph& a, const LabeledGraph& b) {
  LabeledGraph u = a;
  const int off = static_cast<int>(a.labels.size());
  u.labels.insert(u.labels.end(), b.labels.begin(), b.labels.end());
  for (const auto& arc : b.arcs) u.arcs.push_back({arc.from + off, arc.to + off, arc.label});
  return u;
}

// Colors are ranks of sorted signature strings, so they do not depend on
// node numbering.
std::vector<int> compress(const std::vector<std::string>& keys) {
  std::vector<std::string> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> out;
  out.reserve(keys.size());
  for (const auto& k : keys) {
    out.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), k) - sorted.begin()));
  }
  return out;
}

std::size_t distinct(const std::vector<int>& colors) {
  return std::set<int>(colors.begin(), colors.end()).size();
}

std::vector<int> refine(const LabeledGraph& g) {
  const std::size_t n = g.labels.size();
  std::vector<int> colors = compress(g.labels);
  for (std::size_t round = 0; round < n; ++round) {
    std::vector<std::vector<std::string>> parts(n);
    for (const auto& a : g.arcs) {
      parts[static_cast<std::size_t>(a.from)].push_back("o" + a.label + "#" +
                                                        std::to_string(colors[static_cast<std::size_t>(a.to)]));
      parts[static_cast<std::size_t>(a.to)].push_back("i" + a.label + "#" +
                                                      std::to_string(colors[static_cast<std::size_t>(a.from)]));
    }
    std::vector<std::string> keys(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::sort(parts[v].begin(), parts[v].end());
      std::string k = std::to_string(colors[v]);
      for (const auto& p : parts[v]) k += ";" + p;
      keys[v] = std::move(k);
    }
    std::vector<int> next = compress(keys);
    const bool stable = distinct(next) == distinct(colors);
    colors = std::move(next);
    if (stable) break;
  }
  return colors;
}

/// Interned view of two graphs for search: shared label ids and a per-pair
/// edge-label multiset.
class PairIndex {
 public:
  PairIndex(const SimplifiedGraph& g1, const SimplifiedGraph& g2, const MatchPolicy& policy) {
    side_[0].build(g1, policy, interner_);
    side_[1].build(g2, policy, interner_);
    auto lg1 = to_labeled(g1, policy);
    auto lg2 = to_labeled(g2, policy);
    auto colors = refine(disjoint_union(lg1, lg2));
    side_[0].color.assign(colors.begin(), colors.begin() + static_cast<long>(g1.nodes.size()));
    side_[1].color.assign(colors.begin() + static_cast<long>(g1.nodes.size()), colors.end());
  }

  struct Side {
    std::vector<int> label;
    std::vector<int> color;
    std::vector<std::map<int, std::vector<int>>> out;
    std::vector<std::set<int>> neighbors;  // undirected, excluding self
    std::vector<int> out_degree;
    std::vector<int> in_degree;

    void build(const SimplifiedGraph& g, const MatchPolicy& policy,
               std::map<std::string, int>& interner) {
      const std::size_t n = g.nodes.size();
      out.resize(n);
      neighbors.resize(n);
      out_degree.assign(n, 0);
      in_degree.assign(n, 0);
      auto intern = [&](const std::string& s) {
        return interner.emplace(s, static_cast<int>(interner.size())).first->second;
      };
      for (const auto& node : g.nodes) label.push_back(intern("n:" + node_label(node, policy)));
      for (const auto& e : g.edges) {
        out[static_cast<std::size_t>(e.from)][e.to].push_back(intern("e:" + edge_label(e, policy)));
        ++out_degree[static_cast<std::size_t>(e.from)];
        ++in_degree[static_cast<std::size_t>(e.to)];
        if (e.from != e.to) {
          neighbors[static_cast<std::size_t>(e.from)].insert(e.to);
          neighbors[static_cast<std::size_t>(e.to)].insert(e.from);
        }
      }
      for (auto& row : out) {
        for (auto& [_, tokens] : row) std::sort(tokens.begin(), tokens.end());
      }
    }

    const std::vector<int>& arcs(int u, int v) const {
      static const std::vector<int> kNone;
      const auto& row = out[static_cast<std::size_t>(u)];
      auto it = row.find(v);
      return it == row.end() ? kNone : it->second;
    }
    std::size_t size() const { return label.size(); }
  };

  const Side& g1() const { return side_[0]; }
  const Side& g2() const { return side_[1]; }

  /// Edges among mapped nodes (and self-loops) agree when u -> v is added.
  bool compatible(int u, int v, const std::vector<int>& map12) const {
    const Side& a = side_[0];
    const Side& b = side_[1];
    if (a.label[static_cast<std::size_t>(u)] != b.label[static_cast<std::size_t>(v)]) return false;
    if (a.arcs(u, u) != b.arcs(v, v)) return false;
    for (std::size_t w = 0; w < map12.size(); ++w) {
      int x = map12[w];
      if (x < 0) continue;
      int wi = static_cast<int>(w);
      if (a.arcs(u, wi) != b.arcs(v, x)) return false;
      if (a.arcs(wi, u) != b.arcs(x, v)) return false;
    }
    return true;
  }

 private:
  std::map<std::string, int> interner_;
  Side side_[2];
};

// ---------------------------------------------------------------------------
// Isomorphism

class IsoSearch {
 public:
  explicit IsoSearch(const PairIndex& idx) : idx_(idx), n_(idx.g1().size()) {
    const auto& a = idx.g1();
    std::map<int, int> class_size;
    for (int c : a.color) ++class_size[c];
    // Rarest color first; afterwards prefer nodes adjacent to those already
    // placed so edge checks prune early.
    std::vector<bool> placed(n_, false);
    for (std::size_t step = 0; step < n_; ++step) {
      int best = -1;
      std::tuple<int, int, int> best_key{};
      for (std::size_t u = 0; u < n_; ++u) {
        if (placed[u]) continue;
        int links = 0;
        for (int w : a.neighbors[u]) links += placed[static_cast<std::size_t>(w)] ? 1 : 0;
        auto key = std::make_tuple(links > 0 ? 0 : 1, class_size[a.color[u]], static_cast<int>(u));
        if (best < 0 || key < best_key) {
          best = static_cast<int>(u);
          best_key = key;
        }
      }
      placed[static_cast<std::size_t>(best)] = true;
      order_.push_back(best);
    }
  }

  bool candidate(int u, int v) const {
    const auto& a = idx_.g1();
    const auto& b = idx_.g2();
    auto su = static_cast<std::size_t>(u);
    auto sv = static_cast<std::size_t>(v);
    return a.color[su] == b.color[sv] && a.out_degree[su] == b.out_degree[sv] &&
           a.in_degree[su] == b.in_degree[sv];
  }

  /// Completes `fixed` (g1 -> g2, -1 = free) to a full isomorphism if possible.
  std::optional<std::vector<int>> complete(std::vector<int> fixed) {
    map12_ = std::move(fixed);
    used_.assign(n_, false);
    for (std::size_t u = 0; u < n_; ++u) {
      int v = map12_[u];
      if (v < 0) continue;
      if (used_[static_cast<std::size_t>(v)]) return std::nullopt;
      used_[static_cast<std::size_t>(v)] = true;
    }
    if (!extend(0)) return std::nullopt;
    return map12_;
  }

 private:
  bool extend(std::size_t depth) {
    if (depth == n_) return true;
    int u = order_[depth];
    if (map12_[static_cast<std::size_t>(u)] >= 0) {
      int v = map12_[static_cast<std::size_t>(u)];
      map12_[static_cast<std::size_t>(u)] = -1;
      bool ok = candidate(u, v) && idx_.compatible(u, v, map12_);
      map12_[static_cast<std::size_t>(u)] = v;
      return ok && extend(depth + 1);
    }
    for (std::size_t v = 0; v < n_; ++v) {
      if (used_[v] || !candidate(u, static_cast<int>(v))) continue;
      if (!idx_.compatible(u, static_cast<int>(v), map12_)) continue;
      map12_[static_cast<std::size_t>(u)] = static_cast<int>(v);
      used_[v] = true;
      if (extend(depth + 1)) return true;
      map12_[static_cast<std::size_t>(u)] = -1;
      used_[v] = false;
    }
    return false;
  }

  const PairIndex& idx_;
  std::size_t n_;
  std::vector<int> order_;
  std::vector<int> map12_;
  std::vector<bool> used_;
};

}  // namespace

std::string canonical_signature(const SimplifiedGraph& g, const MatchPolicy& policy) {
  if (g.nodes.empty() && g.edges.empty()) return kEmptySignature;
  const LabeledGraph lg = to_labeled(g, policy);
  const std::vector<int> colors = refine(lg);
  const std::size_t n = lg.labels.size();

  std::vector<std::string> palette = lg.labels;
  std::sort(palette.begin(), palette.end());

  std::vector<int> indeg(n, 0);
  std::vector<int> outdeg(n, 0);
  std::vector<std::vector<std::string>> outs(n);
  for (const auto& a : lg.arcs) {
    ++outdeg[static_cast<std::size_t>(a.from)];
    ++indeg[static_cast<std::size_t>(a.to)];
    outs[static_cast<std::size_t>(a.from)].push_back(a.label + ">" +
                                                     std::to_string(colors[static_cast<std::size_t>(a.to)]));
  }
  std::vector<std::string> rows;
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(outs[v].begin(), outs[v].end());
    std::string row = std::to_string(colors[v]) + "/" + std::to_string(indeg[v]) + "/" +
                      std::to_string(outdeg[v]) + "[";
    for (std::size_t i = 0; i < outs[v].size(); ++i) row += (i ? "," : "") + outs[v][i];
    rows.push_back(row + "]");
  }
  std::sort(rows.begin(), rows.end());

  std::ostringstream out;
  out << "tmsig1:n=" << n << ";e=" << lg.arcs.size() << ";labels=";
  for (std::size_t i = 0; i < palette.size(); ++i) out << (i ? "," : "") << palette[i];
  out << ";nodes=";
  for (std::size_t i = 0; i < rows.size(); ++i) out << (i ? " " : "") << rows[i];
  return out.str();
}

std::optional<NodeMapping> isomorphic(const SimplifiedGraph& g1, const SimplifiedGraph& g2,
                                      const MatchPolicy& policy) {
  const std::size_t n = g1.nodes.size();
  if (n != g2.nodes.size() || g1.edges.size() != g2.edges.size()) return std::nullopt;
  if (canonical_signature(g1, policy) != canonical_signature(g2, policy)) return std::nullopt;

  PairIndex idx(g1, g2, policy);
  {
    auto c1 = idx.g1().color;
    auto c2 = idx.g2().color;
    std::sort(c1.begin(), c1.end());
    std::sort(c2.begin(), c2.end());
    if (c1 != c2) return std::nullopt;
  }
  IsoSearch search(idx);
  std::vector<int> fixed(n, -1);
  auto any = search.complete(fixed);
  if (!any) return std::nullopt;

  // Fix g1 nodes in id order to the smallest g2 node that still completes.
  std::vector<int> witness = *any;
  std::vector<bool> taken(n, false);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (taken[v] || !search.candidate(static_cast<int>(u), static_cast<int>(v))) continue;
      if (witness[u] == static_cast<int>(v)) {
        fixed[u] = static_cast<int>(v);
        break;
      }
      fixed[u] = static_cast<int>(v);
      if (auto done = search.complete(fixed)) {
        witness = *done;
        break;
      }
      fixed[u] = -1;
    }
    taken[static_cast<std::size_t>(fixed[u])] = true;
  }

  NodeMapping m;
  for (std::size_t u = 0; u < n; ++u) m.pairs.emplace_back(static_cast<int>(u), fixed[u]);
  return m;
}

// ---------------------------------------------------------------------------
// Common connected subgraphs

namespace {

class SharedSearch {
 public:
  SharedSearch(const PairIndex& idx, const SharedOptions& opts, bool beam)
      : idx_(idx), opts_(opts), beam_(beam) {
    const auto& a = idx.g1();
    const auto& b = idx.g2();
    for (std::size_t u = 0; u < a.size(); ++u) ++count1_[a.label[u]];
    for (std::size_t v = 0; v < b.size(); ++v) ++count2_[b.label[v]];
  }

  void run() {
    const auto& a = idx_.g1();
    const auto& b = idx_.g2();
    std::vector<int> map12(a.size(), -1);
    std::vector<bool> used(b.size(), false);
    for (std::size_t u = 0; u < a.size(); ++u) {
      for (std::size_t v = 0; v < b.size(); ++v) {
        if (out_of_budget()) return;
        if (!idx_.compatible(static_cast<int>(u), static_cast<int>(v), map12)) continue;
        map12[u] = static_cast<int>(v);
        used[v] = true;
        visit(map12, used, 1);
        map12[u] = -1;
        used[v] = false;
      }
    }
  }

  bool truncated() const { return truncated_; }

  std::vector<SharedMatch> results() const {
    std::vector<SharedMatch> out;
    for (const auto& [sets, mapping] : found_) out.push_back({mapping, mapping.pairs.size()});
    std::stable_sort(out.begin(), out.end(), [](const SharedMatch& x, const SharedMatch& y) {
      if (x.size != y.size) return x.size > y.size;
      return x.mapping.pairs < y.mapping.pairs;
    });
    if (out.size() > opts_.max_results) out.resize(opts_.max_results);
    return out;
  }

 private:
  bool out_of_budget() {
    if (seen_.size() >= opts_.state_budget) truncated_ = true;
    return truncated_;
  }

  std::size_t upper_bound(const std::vector<int>& map12, const std::vector<bool>& used,
                          std::size_t size) const {
    std::map<int, int> left1 = count1_;
    std::map<int, int> left2 = count2_;
    for (std::size_t u = 0; u < map12.size(); ++u) {
      if (map12[u] >= 0) --left1[idx_.g1().label[u]];
    }
    for (std::size_t v = 0; v < used.size(); ++v) {
      if (used[v]) --left2[idx_.g2().label[v]];
    }
    std::size_t bound = size;
    for (const auto& [label, c] : left1) {
      auto it = left2.find(label);
      if (it != left2.end()) bound += static_cast<std::size_t>(std::min(c, it->second));
    }
    return bound;
  }

  void visit(std::vector<int>& map12, std::vector<bool>& used, std::size_t size) {
    std::vector<std::pair<int, int>> key;
    for (std::size_t u = 0; u < map12.size(); ++u) {
      if (map12[u] >= 0) key.emplace_back(static_cast<int>(u), map12[u]);
    }
    if (!seen_.insert(key).second || out_of_budget()) return;
    if (upper_bound(map12, used, size) < opts_.min_size) return;

    // Extensions keep the match connected: the new g1 node must touch a
    // mapped one, and compatibility then forces the same on the g2 side.
    std::vector<std::pair<int, int>> ext;
    std::set<int> frontier;
    for (const auto& [u, v] : key) {
      for (int w : idx_.g1().neighbors[static_cast<std::size_t>(u)]) {
        if (map12[static_cast<std::size_t>(w)] < 0) frontier.insert(w);
      }
    }
    for (int u : frontier) {
      for (std::size_t v = 0; v < used.size(); ++v) {
        if (used[v]) continue;
        if (idx_.compatible(u, static_cast<int>(v), map12)) ext.emplace_back(u, static_cast<int>(v));
      }
    }
    if (ext.empty()) {
      record(key);
      return;
    }
    if (beam_ && ext.size() > opts_.beam_width) {
      truncated_ = true;
      ext.resize(opts_.beam_width);
    }
    for (const auto& [u, v] : ext) {
      map12[static_cast<std::size_t>(u)] = v;
      used[static_cast<std::size_t>(v)] = true;
      visit(map12, used, size + 1);
      map12[static_cast<std::size_t>(u)] = -1;
      used[static_cast<std::size_t>(v)] = false;
    }
  }

  void record(const std::vector<std::pair<int, int>>& pairs) {
    if (pairs.size() < opts_.min_size) return;
    std::vector<int> s1;
    std::vector<int> s2;
    for (const auto& [u, v] : pairs) {
      s1.push_back(u);
      s2.push_back(v);
    }
    std::sort(s2.begin(), s2.end());
    auto k = std::make_pair(s1, s2);
    auto it = found_.find(k);
    if (it == found_.end() || pairs < it->second.pairs) found_[k] = NodeMapping{pairs};
  }

  const PairIndex& idx_;
  const SharedOptions& opts_;
  bool beam_;
  bool truncated_ = false;
  std::map<int, int> count1_;
  std::map<int, int> count2_;
  std::set<std::vector<std::pair<int, int>>> seen_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, NodeMapping> found_;
};

}  // namespace

SharedResult find_shared_functionality(const SimplifiedGraph& g1, const SimplifiedGraph& g2,
                                       const MatchPolicy& policy, const SharedOptions& options) {
  if (options.min_size < 2) throw Error(Errc::ConfigError, "min size must be at least 2");
  PairIndex idx(g1, g2, policy);
  const bool beam =
      g1.nodes.size() > options.exact_limit || g2.nodes.size() > options.exact_limit;
  SharedSearch search(idx, options, beam);
  search.run();
  SharedResult r;
  r.matches = search.results();
  r.approximate = search.truncated();
  return r;
}

}  // namespace tmkit
