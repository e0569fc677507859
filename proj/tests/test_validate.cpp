#include <doctest.h>

#include <set>

#include "tmkit/dsl.hpp"
#include "tmkit/validate.hpp"

using namespace tmkit;

namespace {

std::vector<std::string> codes_for(const std::string& body) {
  std::vector<std::string> out;
  for (const auto& d : check_static(load_model("model M {\n" + body + "\n}"))) {
    out.push_back(d.code);
  }
  return out;
}

}  // namespace

TEST_CASE("adjacency table over all 50 combinations") {
  using K = StageKind;
  const std::set<std::tuple<K, K, bool>> legal = {
      {K::Create, K::Process, true},    {K::Create, K::Release, true},
      {K::Receive, K::Process, true},   {K::Receive, K::Release, true},
      {K::Process, K::Release, true},   {K::Release, K::Transfer, true},
      {K::Transfer, K::Receive, true},  {K::Transfer, K::Transfer, false},
  };
  int count = 0;
  int allowed = 0;
  for (K a : kAllStageKinds) {
    for (K b : kAllStageKinds) {
      for (bool same : {true, false}) {
        ++count;
        const bool expect = legal.contains({a, b, same});
        CAPTURE(to_string(a));
        CAPTURE(to_string(b));
        CAPTURE(same);
        CHECK(flow_adjacency_legal(a, b, same) == expect);
        allowed += expect;
      }
    }
  }
  CHECK(count == 50);
  CHECK(allowed == 8);
}

TEST_CASE("legal chain is clean") {
  CHECK(codes_for("flow x: A.create -> A.release -> A.transfer -> B.transfer -> B.receive -> B.process")
            .empty());
}

TEST_CASE("illegal flows") {
  CHECK(codes_for("flow x: A.process -> A.transfer") == std::vector<std::string>{codes::kIllegalFlow});
  CHECK(codes_for("flow x: A.release -> B.transfer") == std::vector<std::string>{codes::kIllegalFlow});
  CHECK(codes_for("flow x: A.create -> A.transfer") == std::vector<std::string>{codes::kIllegalFlow});
  CHECK(codes_for("flow x: A.transfer -> A.transfer") ==
        std::vector<std::string>{codes::kSelfBoundary});
  // into create: only the dedicated code
  CHECK(codes_for("flow x: A.process -> A.create") ==
        std::vector<std::string>{codes::kFlowIntoCreate});
  CHECK(codes_for("flow x: A.transfer -> B.create") ==
        std::vector<std::string>{codes::kFlowIntoCreate});
}

TEST_CASE("trigger rules") {
  CHECK(codes_for("flow x: A.receive -> A.process\ntrigger A.process ~> B.create").empty());
  CHECK(codes_for("flow x: A.receive -> A.process\nflow y: B.release -> B.transfer\n"
                  "trigger A.process ~> B.release") ==
        std::vector<std::string>{codes::kTriggerTarget});
  CHECK(codes_for("flow x: A.create -> A.release -> A.transfer\n"
                  "flow y: B.create -> B.process\ntrigger A.transfer ~> B.create") ==
        std::vector<std::string>{codes::kUnusualTriggerSource});
  CHECK(codes_for("flow x: A.create -> A.process\ntrigger A.create ~> A.process") ==
        std::vector<std::string>{codes::kTriggerShadowsFlow});
}

TEST_CASE("orphan stages") {
  auto c = codes_for("thimac A { create process }\nflow x: B.create -> B.release");
  CHECK(c == std::vector<std::string>{codes::kOrphanStage, codes::kOrphanStage});
}

TEST_CASE("diagnostics carry subjects and sorted spans") {
  Model m = load_model(
      "model M {\n flow x: A.process -> A.transfer\n flow y: B.process -> B.create\n}");
  auto ds = check_static(m);
  REQUIRE(ds.size() == 2);
  CHECK(ds[0].subject == "f1");
  CHECK(ds[1].subject == "f2");
  CHECK(ds[0].span->line < ds[1].span->line);
  CHECK(ds[0].severity == Severity::Error);
}
