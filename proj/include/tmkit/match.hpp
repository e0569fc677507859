#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tmkit/core.hpp"

namespace tmkit {

enum class EdgeKind { Flow, Trigger };
std::string_view to_string(EdgeKind k);

struct SimplifiedNode {
  int id = 0;
  std::string role;  // leaf name of the owning thimac, "env" for environment nodes
  StageKind kind = StageKind::Create;
  bool env = false;
  std::string origin;  // stage the node stands for, e.g. "Mill.process"
};

struct SimplifiedEdge {
  int from = 0;
  int to = 0;
  EdgeKind kind = EdgeKind::Flow;
  std::string thing;  // empty for triggers

  auto operator<=>(const SimplifiedEdge&) const = default;
};

/// Create/Process stages (plus environment endpoints) joined by spliced flows
/// and remapped triggers.
struct SimplifiedGraph {
  std::vector<SimplifiedNode> nodes;  // nodes[i].id == i
  std::vector<SimplifiedEdge> edges;  // sorted, no duplicates

  /// `# node` comment lines, then one `from -> to [kind, thing]` line per edge.
  std::string to_edge_list() const;

  /// Node i of this graph becomes node perm[i] of the result.
  SimplifiedGraph permuted(const std::vector<int>& perm) const;

  void normalize();  // sort and dedupe edges
};

/// Throws Error(AmbiguousSplice) when an elided stage fans out to two
/// different create/process stages for the same thing.
SimplifiedGraph simplify(const Model& model);

struct MatchPolicy {
  bool match_thing_labels = true;
  bool match_role_names = true;
};

/// Node label under a policy. StageKind and the env marker always count.
std::string node_label(const SimplifiedNode& n, const MatchPolicy& policy);
/// Edge label under a policy.
std::string edge_label(const SimplifiedEdge& e, const MatchPolicy& policy);

inline constexpr const char* kEmptySignature = "tmsig1:empty";

/// Renumbering-invariant summary built from color refinement. Equal for
/// isomorphic graphs; equality does not prove isomorphism.
std::string canonical_signature(const SimplifiedGraph& g, const MatchPolicy& policy = {});

/// pairs[i] = (node of g1, node of g2); sorted by the g1 node.
struct NodeMapping {
  std::vector<std::pair<int, int>> pairs;

  bool operator==(const NodeMapping&) const = default;
};

/// The lexicographically least isomorphism (by g1 node id order), or none.
std::optional<NodeMapping> isomorphic(const SimplifiedGraph& g1, const SimplifiedGraph& g2,
                                      const MatchPolicy& policy = {});

struct SharedMatch {
  NodeMapping mapping;
  std::size_t size = 0;
};

struct SharedOptions {
  std::size_t min_size = 2;
  std::size_t max_results = 32;
  /// Above this many nodes in either graph the search is beam-limited.
  std::size_t exact_limit = 25;
  std::size_t beam_width = 4;
  std::size_t state_budget = 500000;
};

struct SharedResult {
  std::vector<SharedMatch> matches;  // largest first
  bool approximate = false;
};

/// Maximal common connected induced subgraphs with at least `min_size` nodes.
SharedResult find_shared_functionality(const SimplifiedGraph& g1, const SimplifiedGraph& g2,
                                       const MatchPolicy& policy = {},
                                       const SharedOptions& options = {});

}  // namespace tmkit
