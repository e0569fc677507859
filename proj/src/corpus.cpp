#include "tmkit/corpus.hpp"

#include <sstream>

#include "tmkit/behavior.hpp"
#include "tmkit/check.hpp"
#include "tmkit/dsl.hpp"
#include "tmkit/match.hpp"
#include "tmkit/sim.hpp"

namespace tmkit {

namespace detail {
struct EmbeddedFile {
  const char* path;
  const char* text;
};
extern const EmbeddedFile kEmbeddedFiles[];
extern const std::size_t kEmbeddedFileCount;
}  // namespace detail

namespace {

const std::map<std::string, std::string>& provenance_notes() {
  static const std::map<std::string, std::string> notes = {
      {"automobile",
       "Automobile as a thimac carrying things between two places; events and chronology "
       "E1 -> E2 -> E3 as drawn."},
      {"coffee-mill",
       "Coffee mill receiving beans and electricity and creating powder. The motor sub-thimac "
       "is reconstructed so the electricity and beans regions do not overlap."},
      {"pump", "Pump creating pressured water, with noise as the nonfunctional event E4."},
      {"window",
       "Window with independent daylight and ventilation functions. Room sub-thimacs are "
       "reconstructed."},
      {"boiling", "Boiling as a machine: water and heat in, steam out."},
      {"distillation", "Distillation separating a mixture into distillate and residue."},
      {"pay-service",
       "Encoded from the numbered step text of the pay service scenario; thimac names "
       "reconstructed."},
      {"add-service",
       "Main flow (menu, option, receipt) is reconstructed; the alternative flow is encoded "
       "from the step text shared with pay service."},
      {"add-service-alt",
       "Companion fixture: the add service alternative flow alone, under renamed thimacs."},
      {"producer-consumer",
       "Two-event producer/consumer cycle; only the behavior is reproduced, not net semantics."},
      {"submit-order",
       "Encoded from the 19-step prose walkthrough; one generic supplier stands in for the "
       "local and international supplier scenarios."},
      {"hammer-nails",
       "Hand, hammer, nail and physical object; Force, Impact and Nail.Head are reconstructed."},
  };
  return notes;
}

const char* find_embedded(const std::string& path) {
  for (std::size_t i = 0; i < detail::kEmbeddedFileCount; ++i) {
    if (path == detail::kEmbeddedFiles[i].path) return detail::kEmbeddedFiles[i].text;
  }
  return nullptr;
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {
      "automobile", "coffee-mill",  "pump",          "window",
      "boiling",    "distillation", "pay-service",   "add-service",
      "producer-consumer", "submit-order", "hammer-nails"};
  return names;
}

const std::vector<std::string>& all_fixture_names() {
  static const std::vector<std::string> names = [] {
    auto v = fixture_names();
    v.push_back("add-service-alt");
    return v;
  }();
  return names;
}

Fixture load_fixture(const std::string& name) {
  const auto& notes = provenance_notes();
  auto note = notes.find(name);
  const char* source = find_embedded(name + ".tm");
  if (note == notes.end() || source == nullptr) {
    throw Error(Errc::UnknownFixture, "no fixture named '" + name + "'");
  }
  Fixture f{name, source, {}, note->second};
  for (const char* kind : {"check", "chronology", "simplified", "trace", "format"}) {
    if (const char* g = find_embedded("golden/" + name + "." + kind)) f.goldens[kind] = g;
  }
  return f;
}

std::map<std::string, std::string> compute_goldens(const std::string& source) {
  std::map<std::string, std::string> out;
  CheckResult checked = check_source(source);
  out["check"] = to_json_lines(checked.diagnostics);
  if (!checked.model) return out;
  const Model& m = *checked.model;

  out["format"] = format(m);
  out["simplified"] = simplify(m).to_edge_list();
  if (!m.events().empty()) {
    std::ostringstream chron;
    for (const auto& [a, b] : infer_dependencies(m)) chron << a << " -> " << b << '\n';
    out["chronology"] = chron.str();
  }
  if (!m.behavior().nodes.empty()) {
    SimConfig cfg;
    cfg.seed = kGoldenSeed;
    cfg.max_steps = kGoldenSteps;
    out["trace"] = simulate(m, cfg).to_json_lines();
  }
  return out;
}

}  // namespace tmkit
