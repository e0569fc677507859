#pragma once
// Shared helpers for the test binaries: random generators and brute-force
// oracles that deliberately avoid the library's own search code.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tmkit/match.hpp"

namespace tmtest {

using tmkit::EdgeKind;
using tmkit::MatchPolicy;
using tmkit::SimplifiedGraph;
using tmkit::StageKind;

/// Random simplified graph. Roles, kinds and things come from tiny alphabets
/// so that label collisions (and therefore real search) are common.
inline SimplifiedGraph random_graph(std::mt19937_64& rng, int n, double density,
                                    bool with_env = true) {
  static const char* roles[] = {"A", "B"};
  static const char* things[] = {"x", "y"};
  SimplifiedGraph g;
  for (int i = 0; i < n; ++i) {
    tmkit::SimplifiedNode node;
    node.id = i;
    node.env = with_env && rng() % 6 == 0;
    node.role = node.env ? "env" : roles[rng() % 2];
    node.kind = node.env || rng() % 2 ? StageKind::Create : StageKind::Process;
    node.origin = "s" + std::to_string(i);
    g.nodes.push_back(node);
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b || coin(rng) >= density) continue;
      if (rng() % 3 == 0) {
        g.edges.push_back({a, b, EdgeKind::Trigger, ""});
      } else {
        g.edges.push_back({a, b, EdgeKind::Flow, things[rng() % 2]});
      }
    }
  }
  g.normalize();
  return g;
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// Sorted edge labels per ordered node pair.
inline std::map<std::pair<int, int>, std::vector<std::string>> edge_table(
    const SimplifiedGraph& g, const MatchPolicy& policy) {
  std::map<std::pair<int, int>, std::vector<std::string>> t;
  for (const auto& e : g.edges) t[{e.from, e.to}].push_back(tmkit::edge_label(e, policy));
  for (auto& [k, v] : t) std::sort(v.begin(), v.end());
  return t;
}

/// Node and edge labels of a pair of graphs, precomputed for the brute-force
/// searches below.
class PairTables {
 public:
  PairTables(const SimplifiedGraph& g1, const SimplifiedGraph& g2, const MatchPolicy& policy)
      : t1_(edge_table(g1, policy)), t2_(edge_table(g2, policy)) {
    for (const auto& n : g1.nodes) l1_.push_back(tmkit::node_label(n, policy));
    for (const auto& n : g2.nodes) l2_.push_back(tmkit::node_label(n, policy));
  }

  /// True when mapping domain[i] to image[i] preserves node labels and the
  /// induced edge labels exactly.
  bool preserves(const std::vector<int>& domain, const std::vector<int>& image) const {
    for (std::size_t i = 0; i < domain.size(); ++i) {
      if (l1_[static_cast<std::size_t>(domain[i])] != l2_[static_cast<std::size_t>(image[i])]) {
        return false;
      }
    }
    for (std::size_t i = 0; i < domain.size(); ++i) {
      for (std::size_t j = 0; j < domain.size(); ++j) {
        if (at(t1_, domain[i], domain[j]) != at(t2_, image[i], image[j])) return false;
      }
    }
    return true;
  }

 private:
  using Table = std::map<std::pair<int, int>, std::vector<std::string>>;
  static const std::vector<std::string>& at(const Table& t, int a, int b) {
    static const std::vector<std::string> kNone;
    auto it = t.find({a, b});
    return it == t.end() ? kNone : it->second;
  }

  Table t1_, t2_;
  std::vector<std::string> l1_, l2_;
};

inline bool preserves(const SimplifiedGraph& g1, const SimplifiedGraph& g2,
                      const std::vector<int>& domain, const std::vector<int>& image,
                      const MatchPolicy& policy) {
  return PairTables(g1, g2, policy).preserves(domain, image);
}

/// Bijection enumeration.
inline bool brute_isomorphic(const SimplifiedGraph& g1, const SimplifiedGraph& g2,
                             const MatchPolicy& policy) {
  if (g1.nodes.size() != g2.nodes.size() || g1.edges.size() != g2.edges.size()) return false;
  const PairTables tables(g1, g2, policy);
  std::vector<int> domain(g1.nodes.size());
  std::iota(domain.begin(), domain.end(), 0);
  std::vector<int> image = domain;
  do {
    if (tables.preserves(domain, image)) return true;
  } while (std::next_permutation(image.begin(), image.end()));
  return false;
}

inline bool weakly_connected(const SimplifiedGraph& g, const std::vector<int>& nodes) {
  if (nodes.empty()) return false;
  std::set<int> in(nodes.begin(), nodes.end());
  std::set<int> seen{nodes.front()};
  std::vector<int> stack{nodes.front()};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    for (const auto& e : g.edges) {
      int other = e.from == cur ? e.to : e.to == cur ? e.from : -1;
      if (other >= 0 && in.contains(other) && seen.insert(other).second) stack.push_back(other);
    }
  }
  return seen.size() == in.size();
}

/// Size of the largest common connected induced subgraph, by enumerating
/// every connected g1 subset (largest first) and every injective image.
inline std::size_t brute_max_common(const SimplifiedGraph& g1, const SimplifiedGraph& g2,
                                    const MatchPolicy& policy) {
  const PairTables tables(g1, g2, policy);
  const int n1 = static_cast<int>(g1.nodes.size());
  const int n2 = static_cast<int>(g2.nodes.size());
  std::vector<std::vector<int>> subsets;
  for (int mask = 1; mask < (1 << n1); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n1; ++i) {
      if (mask & (1 << i)) s.push_back(i);
    }
    if (static_cast<int>(s.size()) <= n2 && weakly_connected(g1, s)) subsets.push_back(s);
  }
  std::sort(subsets.begin(), subsets.end(),
            [](const auto& a, const auto& b) { return a.size() > b.size(); });
  for (const auto& s : subsets) {
    // Choose |s| distinct g2 nodes in every order.
    const std::size_t k = s.size();
    std::vector<int> pick(static_cast<std::size_t>(n2), 0);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), 1);
    do {
      std::vector<int> chosen;
      for (int j = 0; j < n2; ++j) {
        if (pick[static_cast<std::size_t>(j)]) chosen.push_back(j);
      }
      do {
        if (tables.preserves(s, chosen)) return k;
      } while (std::next_permutation(chosen.begin(), chosen.end()));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return 0;
}

}  // namespace tmtest
