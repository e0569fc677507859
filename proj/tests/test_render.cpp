#include <doctest.h>

#include "dot_check.hpp"
#include "tmkit/corpus.hpp"
#include "tmkit/dsl.hpp"
#include "tmkit/render.hpp"

using namespace tmkit;
using tmtest::dot_errors;

namespace {

Model fixture(const std::string& name) { return load_model(load_fixture(name).source); }

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("checker rejects broken DOT") {
  CHECK(dot_errors("digraph G { a -> b; }").empty());
  CHECK(dot_errors("// c\ndigraph \"x y\" { subgraph cluster_a { label=\"A\"; n; } n -> m [style=dashed]; }").empty());
  CHECK_FALSE(dot_errors("digraph G { a -- b }").empty());
  CHECK_FALSE(dot_errors("digraph G { a -> }").empty());
  CHECK_FALSE(dot_errors("digraph G { a [label=] }").empty());
  CHECK_FALSE(dot_errors("digraph G { node }").empty());
  CHECK_FALSE(dot_errors("digraph G { \"open }").empty());
  CHECK_FALSE(dot_errors("digraph graph { }").empty());
}

TEST_CASE("empty model") {
  const std::string dot = to_dot(load_model("model M { }"));
  CHECK(dot ==
        "// tmkit DOT export\n"
        "// solid edges: flows, dashed edges: triggers\n"
        "digraph M { }\n");
  CHECK(dot_errors(dot).empty());
}

TEST_CASE("automobile static view") {
  const std::string dot = to_dot(fixture("automobile"));
  CHECK(dot_errors(dot) == "");
  CHECK(count(dot, "subgraph \"cluster_") == 6);
  CHECK(dot.find("subgraph \"cluster_Place1.Automobile\"") != std::string::npos);
  CHECK(count(dot, "style=solid") == 11);
  CHECK(count(dot, "style=dashed") == 2);
  CHECK(dot.find("label=\"Things\"") != std::string::npos);
  CHECK(count(dot, "shape=box") == 14);
}

TEST_CASE("automobile behavior view") {
  Model m = fixture("automobile");
  RenderOptions opts;
  opts.view = View::Behavior;
  const std::string dot = to_dot(m, opts);
  CHECK(dot_errors(dot) == "");
  CHECK(count(dot, "shape=ellipse") == 3);
  CHECK(count(dot, " -> ") == 2);
  CHECK(dot.find("\"E1\" -> \"E2\"") != std::string::npos);
  CHECK(dot.find("\"E2\" -> \"E3\"") != std::string::npos);
}

TEST_CASE("options") {
  Model m = fixture("coffee-mill");
  RenderOptions flat;
  flat.cluster_by_thimac = false;
  flat.show_thing_labels = false;
  const std::string dot = to_dot(m, flat);
  CHECK(dot_errors(dot) == "");
  CHECK(dot.find("subgraph") == std::string::npos);
  CHECK(dot.find("label=\"Beans\"") == std::string::npos);
  RenderOptions simplified;
  simplified.view = View::Simplified;
  CHECK_THROWS_AS(to_dot(m, simplified), Error);
}

TEST_CASE("awkward names are quoted") {
  Model m = load_model("model graph { flow x: A.create -> A.release }");
  CHECK(dot_errors(to_dot(m)) == "");
  CHECK(to_dot(m).find("digraph \"graph\"") != std::string::npos);
  CHECK(dot_errors(to_dot(m.behavior(), "my model")) == "");
  CHECK(dot_errors(to_dot(simplify(m), "3d")) == "");
}

TEST_CASE("every fixture renders in every view, deterministically") {
  for (const auto& name : all_fixture_names()) {
    CAPTURE(name);
    Model m = fixture(name);
    RenderOptions behavior;
    behavior.view = View::Behavior;
    const std::vector<std::string> outputs = {
        to_dot(m), to_dot(m, behavior), to_dot(simplify(m), m.name())};
    for (const auto& dot : outputs) {
      CHECK(dot_errors(dot) == "");
    }
    Model again = fixture(name);
    CHECK(to_dot(again) == outputs[0]);
    CHECK(to_dot(again, behavior) == outputs[1]);
    CHECK(to_dot(simplify(again), again.name()) == outputs[2]);
  }
}
