#include "tmkit/render.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace tmkit {

namespace {

constexpr const char* kHeader =
    "// tmkit DOT export\n"
    "// solid edges: flows, dashed edges: triggers\n";

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Plain identifiers stay bare; anything else is quoted.
std::string dot_id(const std::string& s) {
  bool plain = !s.empty() && !std::isdigit(static_cast<unsigned char>(s[0]));
  for (char c : s) plain = plain && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
  static const std::set<std::string> kKeywords = {"graph", "digraph", "node", "edge", "strict",
                                                  "subgraph"};
  std::string lower;
  for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return plain && !kKeywords.contains(lower) ? s : quoted(s);
}

std::string graph_open(const std::string& name) {
  return std::string(kHeader) + "digraph " + dot_id(name) + " {";
}

void emit_cluster(std::ostream& out, const Model& m, const Thimac& th, int depth,
                  const RenderOptions& opts) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const bool cluster = opts.cluster_by_thimac && !th.path.empty();
  std::string inner = pad;
  if (cluster) {
    out << pad << "subgraph " << quoted("cluster_" + th.path) << " {\n";
    out << pad << "  label=" << quoted(th.name) << ";\n";
    inner = pad + "  ";
  }
  for (StageKind k : th.stages) {
    StageRef ref{th.path, k};
    out << inner << quoted(ref.str()) << " [shape=box, label=" << quoted(std::string(to_string(k)))
        << "];\n";
  }
  // Children in path order, matching the model's map.
  for (const auto& [path, child] : m.thimacs()) {
    if (path.empty() || parent_path(path) != th.path) continue;
    emit_cluster(out, m, child, cluster ? depth + 1 : depth, opts);
  }
  if (cluster) out << pad << "}\n";
}

}  // namespace

std::string to_dot(const Model& model, const RenderOptions& opts) {
  if (opts.view == View::Behavior) return to_dot(model.behavior(), model.name(), opts);
  if (opts.view == View::Simplified) {
    throw Error(Errc::ConfigError, "simplified view renders a SimplifiedGraph");
  }
  std::ostringstream body;
  emit_cluster(body, model, model.root(), 1, opts);
  for (const auto& f : model.flows()) {
    body << "  " << quoted(f.source.str()) << " -> " << quoted(f.target.str()) << " [style=solid";
    if (opts.show_thing_labels) body << ", label=" << quoted(f.label);
    body << "];\n";
  }
  for (const auto& t : model.triggers()) {
    body << "  " << quoted(t.source.str()) << " -> " << quoted(t.target.str())
         << " [style=dashed];\n";
  }
  const std::string text = body.str();
  if (text.empty()) return graph_open(model.name()) + " }\n";
  return graph_open(model.name()) + "\n" + text + "}\n";
}

std::string to_dot(const BehaviorGraph& behavior, const std::string& name,
                   const RenderOptions& /*opts*/) {
  std::ostringstream body;
  for (const auto& n : behavior.nodes) body << "  " << quoted(n) << " [shape=ellipse];\n";
  for (const auto& [a, b] : behavior.edges) body << "  " << quoted(a) << " -> " << quoted(b) << ";\n";
  const std::string text = body.str();
  if (text.empty()) return graph_open(name) + " }\n";
  return graph_open(name) + "\n" + text + "}\n";
}

std::string to_dot(const SimplifiedGraph& graph, const std::string& name,
                   const RenderOptions& opts) {
  std::ostringstream body;
  for (const auto& n : graph.nodes) {
    body << "  n" << n.id << " [shape=box, label="
         << quoted(n.role + "." + std::string(to_string(n.kind))) << "];\n";
  }
  for (const auto& e : graph.edges) {
    body << "  n" << e.from << " -> n" << e.to << " [style="
         << (e.kind == EdgeKind::Flow ? "solid" : "dashed");
    if (opts.show_thing_labels && !e.thing.empty()) body << ", label=" << quoted(e.thing);
    body << "];\n";
  }
  const std::string text = body.str();
  if (text.empty()) return graph_open(name) + " }\n";
  return graph_open(name) + "\n" + text + "}\n";
}

}  // namespace tmkit
