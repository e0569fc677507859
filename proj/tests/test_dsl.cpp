#include <doctest.h>

#include <nlohmann/json.hpp>

#include "tmkit/corpus.hpp"
#include "tmkit/diagnostic.hpp"
#include "tmkit/dsl.hpp"
#include "tmkit/match.hpp"

using namespace tmkit;

namespace {

std::vector<std::string> codes_of(const ParseResult& r) {
  std::vector<std::string> out;
  for (const auto& d : r.diagnostics) out.push_back(d.code);
  return out;
}

}  // namespace

TEST_CASE("empty input") {
  ParseResult r = parse("");
  CHECK(r.ok());
  CHECK(r.decls.empty());
  CHECK(parse("  # only a comment\n").ok());
}

TEST_CASE("minimal model") {
  ParseResult r = parse("model M { thimac Mill { receive process } }");
  REQUIRE(r.ok());
  CHECK(r.model_name == "M");
  REQUIRE(r.decls.size() == 1);
  const auto& t = std::get<ThimacDecl>(r.decls[0].item);
  CHECK(t.path == "Mill");
  CHECK(t.stages == std::vector<StageKind>{StageKind::Receive, StageKind::Process});
}

TEST_CASE("statement kinds and spans") {
  ParseResult r = parse(
      "model M {\n"
      "  flow Beans: Mill.receive -> Mill.process\n"
      "  trigger Mill.process ~> Powder.create  # comment\n"
      "  event E1 \"say \\\"hi\\\"\" @ \"noon\" { Mill.receive, f1 }\n"
      "  behavior E1 -> E2 -> E3\n"
      "}\n");
  REQUIRE(r.ok());
  REQUIRE(r.decls.size() == 4);
  CHECK(r.decls[0].span.line == 2);
  CHECK(r.decls[0].span.col == 3);
  const auto& f = std::get<FlowDecl>(r.decls[0].item);
  CHECK(f.label == "Beans");
  CHECK(f.chain.size() == 2);
  const auto& t = std::get<TriggerDecl>(r.decls[1].item);
  CHECK(t.target == StageRef{"Powder", StageKind::Create});
  const auto& e = std::get<EventDecl>(r.decls[2].item);
  CHECK(e.description == "say \"hi\"");
  CHECK(e.time == "noon");
  CHECK(std::get<std::string>(e.members[1]) == "f1");
  CHECK(std::get<BehaviorDecl>(r.decls[3].item).chain.size() == 3);
}

TEST_CASE("unknown stage kind is reported at the kind") {
  ParseResult r = parse("model M {\n  flow x: Tank.store -> Tank.release\n}");
  REQUIRE(r.diagnostics.size() == 1);
  const Diagnostic& d = r.diagnostics[0];
  CHECK(d.code == std::string(codes::kUnknownStageKind));
  CHECK(d.span->line == 2);
  CHECK(d.span->col == 16);
}

TEST_CASE("unterminated blocks") {
  CHECK(codes_of(parse("model M { flow x: A.create -> A.release")) ==
        std::vector<std::string>{codes::kUnterminatedBlock});
  CHECK(codes_of(parse("model M { thimac A { create\n flow x: A.create -> A.release }")) ==
        std::vector<std::string>{codes::kUnterminatedBlock});
  CHECK(codes_of(parse("model M { event E { A.create\n behavior E -> F }")) ==
        std::vector<std::string>{codes::kUnterminatedBlock});
}

TEST_CASE("recovery continues after a bad statement") {
  ParseResult r = parse(
      "model M {\n"
      "  flow x A.create -> A.release\n"
      "  thimac B { create store }\n"
      "  event E { }\n"
      "  flow y: C.create -> C.release\n"
      "  $ junk\n"
      "  trigger C.release ~> D.process\n"
      "}\n");
  CHECK(r.diagnostics.size() == 4);
  CHECK(r.decls.size() == 2);  // flow y and the trigger
  for (const auto& d : r.diagnostics) CHECK(d.span.has_value());
}

TEST_CASE("trailing text after the model") {
  ParseResult r = parse("model M { } extra");
  CHECK(codes_of(r) == std::vector<std::string>{codes::kSyntax});
}

TEST_CASE("missing model header") {
  CHECK(codes_of(parse("thimac A")) == std::vector<std::string>{codes::kSyntax});
  CHECK(codes_of(parse("model { }")) == std::vector<std::string>{codes::kSyntax});
}

TEST_CASE("load_model reports the first syntax error") {
  try {
    load_model("model M { flow }");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConfigError);
  }
}

TEST_CASE("format of an empty model") {
  CHECK(format(load_model("model M { }")) == "model M { }\n");
}

TEST_CASE("format output") {
  Model m = load_model(
      "model M { flow b: A.create -> A.release\n trigger A.release ~> B.process\n"
      " event E \"d\" { A.release, A.create } event F { B.process } behavior E -> F }");
  CHECK(format(m) ==
        "model M {\n"
        "  thimac A { create release }\n"
        "  thimac B { process }\n"
        "  flow b: A.create -> A.release\n"
        "  trigger A.release ~> B.process\n"
        "  event E \"d\" { A.create, A.release }\n"
        "  event F { B.process }\n"
        "  behavior E -> F\n"
        "}\n");
}

TEST_CASE("format round trip over the corpus") {
  for (const auto& name : all_fixture_names()) {
    CAPTURE(name);
    Model a = load_model(load_fixture(name).source);
    const std::string once = format(a);
    Model b = load_model(once);
    CHECK(format(b) == once);
    CHECK(canonical_signature(simplify(a)) == canonical_signature(simplify(b)));
    CHECK(a.events().size() == b.events().size());
    CHECK(a.behavior().edges == b.behavior().edges);
    CHECK(a.stages() == b.stages());
  }
}

TEST_CASE("diagnostic json lines") {
  Diagnostic d{Severity::Warning, codes::kOrphanStage, "stage \"x\" unused", "A.create", SourceSpan{3, 4}};
  auto j = nlohmann::json::parse(to_json_line(d));
  CHECK(j["severity"] == "warning");
  CHECK(j["code"] == "W_ORPHAN_STAGE");
  CHECK(j["message"] == "stage \"x\" unused");
  CHECK(j["line"] == 3);
  CHECK(j["col"] == 4);
  Diagnostic nospan{Severity::Error, codes::kAssembly, "m", "", std::nullopt};
  CHECK(nlohmann::json::parse(to_json_line(nospan))["line"] == 0);
  CHECK(to_json_lines({d, nospan}).back() == '\n');
  CHECK(has_errors({d, nospan}));
  CHECK_FALSE(has_errors({d}));
}

TEST_CASE("diagnostic ordering") {
  std::vector<Diagnostic> ds = {
      {Severity::Error, "B", "", "x", SourceSpan{2, 1}},
      {Severity::Error, "A", "", "y", SourceSpan{2, 1}},
      {Severity::Error, "Z", "", "z", std::nullopt},
      {Severity::Error, "A", "", "w", SourceSpan{1, 9}},
  };
  sort_diagnostics(ds);
  CHECK(ds[0].code == "Z");
  CHECK(ds[1].subject == "w");
  CHECK(ds[2].code == "A");
  CHECK(ds[3].code == "B");
}
