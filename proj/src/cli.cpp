#include "tmkit/cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "tmkit/check.hpp"
#include "tmkit/corpus.hpp"
#include "tmkit/dsl.hpp"
#include "tmkit/match.hpp"
#include "tmkit/render.hpp"
#include "tmkit/sim.hpp"

namespace tmkit::cli {

namespace {

constexpr const char* kFixtureScheme = "fixture:";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Reporter {
 public:
  explicit Reporter(std::ostream& err) : err_(err) {
    const char* env = std::getenv("TM_COLOR");
    const std::string mode = env ? env : "auto";
    color_ = mode != "never" && &err == &std::cerr && ::isatty(STDERR_FILENO);
  }

  void error(const std::string& msg) { line("error", "\033[31m", msg); }
  void warning(const std::string& msg) { line("warning", "\033[33m", msg); }
  void note(const std::string& msg) { err_ << msg << '\n'; }

  void diagnostics(const std::string& file, const std::vector<Diagnostic>& ds) {
    for (const auto& d : ds) {
      std::string where = file;
      if (d.span) where += ":" + std::to_string(d.span->line) + ":" + std::to_string(d.span->col);
      std::string text = where + ": " + d.code + ": " + d.message;
      d.severity == Severity::Error ? error(text) : warning(text);
    }
  }

 private:
  void line(const char* tag, const char* ansi, const std::string& msg) {
    if (color_) {
      err_ << ansi << tag << "\033[0m: " << msg << '\n';
    } else {
      err_ << tag << ": " << msg << '\n';
    }
  }

  std::ostream& err_;
  bool color_ = false;
};

std::string read_source(const std::string& path) {
  if (path.rfind(kFixtureScheme, 0) == 0) {
    try {
      return load_fixture(path.substr(std::string(kFixtureScheme).size())).source;
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Loads and checks a model; on errors prints the diagnostics and returns none.
std::optional<Model> load_checked(const std::string& path, Reporter& rep) {
  CheckResult r = check_source(read_source(path));
  rep.diagnostics(path, r.diagnostics);
  if (has_errors(r.diagnostics)) return std::nullopt;
  return std::move(r.model);
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

nlohmann::ordered_json pairs_json(const NodeMapping& m) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [a, b] : m.pairs) arr.push_back({a, b});
  return arr;
}

struct Options {
  std::vector<std::string> files;
  std::string view = "static";
  std::string output;
  std::uint64_t seed = 0;
  std::size_t max_steps = 100;
  int capacity = 1;
  std::string channels = "declared";
  std::size_t max_states = 100000;
  std::size_t min_size = 2;
  bool match_roles = false;
  bool list_fixtures = false;
};

int cmd_check(const Options& o, std::ostream& out, Reporter& rep) {
  int status = kOk;
  for (const auto& file : o.files) {
    CheckResult r = check_source(read_source(file));
    out << to_json_lines(r.diagnostics);
    rep.diagnostics(file, r.diagnostics);
    if (has_errors(r.diagnostics)) status = kDiagnostics;
  }
  return status;
}

int cmd_render(const Options& o, std::ostream& out, Reporter& rep) {
  auto m = load_checked(o.files[0], rep);
  if (!m) return kDiagnostics;
  RenderOptions ro;
  std::string dot;
  if (o.view == "simplified") {
    ro.view = View::Simplified;
    dot = to_dot(simplify(*m), m->name(), ro);
  } else {
    ro.view = o.view == "behavior" ? View::Behavior : View::Static;
    dot = to_dot(*m, ro);
  }
  write_output(dot, o.output, out);
  return kOk;
}

int cmd_simplify(const Options& o, std::ostream& out, Reporter& rep) {
  auto m = load_checked(o.files[0], rep);
  if (!m) return kDiagnostics;
  out << simplify(*m).to_edge_list();
  return kOk;
}

SimConfig sim_config(const Options& o) {
  SimConfig cfg;
  cfg.seed = o.seed;
  cfg.max_steps = o.max_steps;
  cfg.default_capacity = o.capacity;
  cfg.channels = o.channels == "inferred" ? ChannelSource::Inferred : ChannelSource::Declared;
  return cfg;
}

int cmd_simulate(const Options& o, std::ostream& out, Reporter& rep) {
  auto m = load_checked(o.files[0], rep);
  if (!m) return kDiagnostics;
  out << simulate(*m, sim_config(o)).to_json_lines();
  return kOk;
}

int cmd_explore(const Options& o, std::ostream& out, Reporter& rep) {
  auto m = load_checked(o.files[0], rep);
  if (!m) return kDiagnostics;
  ExploreConfig cfg;
  cfg.net = sim_config(o);
  cfg.max_states = o.max_states;
  ExploreResult r = explore_state_space(*m, cfg);
  out << r.to_json() << '\n';
  if (!r.bounded) {
    rep.warning("state limit of " + std::to_string(o.max_states) + " markings reached");
    return kLimit;
  }
  return kOk;
}

int cmd_dedup(const Options& o, std::ostream& out, Reporter& rep) {
  auto m1 = load_checked(o.files[0], rep);
  auto m2 = load_checked(o.files[1], rep);
  if (!m1 || !m2) return kDiagnostics;
  const SimplifiedGraph g1 = simplify(*m1);
  const SimplifiedGraph g2 = simplify(*m2);
  MatchPolicy policy;
  policy.match_role_names = o.match_roles;
  SharedOptions so;
  so.min_size = o.min_size;

  nlohmann::ordered_json j;
  auto iso = isomorphic(g1, g2, policy);
  j["isomorphic"] = iso.has_value();
  j["signatures"] = {canonical_signature(g1, policy), canonical_signature(g2, policy)};
  if (iso) j["mapping"] = pairs_json(*iso);
  SharedResult shared = find_shared_functionality(g1, g2, policy, so);
  j["approximate"] = shared.approximate;
  auto fragments = nlohmann::ordered_json::array();
  for (const auto& sm : shared.matches) {
    nlohmann::ordered_json f;
    f["size"] = sm.size;
    f["pairs"] = pairs_json(sm.mapping);
    auto origins = nlohmann::ordered_json::array();
    for (const auto& [a, b] : sm.mapping.pairs) {
      origins.push_back({g1.nodes[static_cast<std::size_t>(a)].origin,
                         g2.nodes[static_cast<std::size_t>(b)].origin});
    }
    f["stages"] = origins;
    fragments.push_back(f);
  }
  j["shared"] = fragments;
  out << j.dump() << '\n';
  if (shared.approximate) rep.note("note: graphs exceed the exact search limit; shared results are approximate");
  return kOk;
}

int cmd_fmt(const Options& o, std::ostream& out, Reporter& rep) {
  const std::string src = read_source(o.files[0]);
  ParseResult p = parse(src);
  if (!p.ok()) {
    rep.diagnostics(o.files[0], p.diagnostics);
    return kDiagnostics;
  }
  try {
    out << format(assemble_model(p.model_name, p.decls));
  } catch (const Error& e) {
    rep.error(o.files[0] + ": " + e.what());
    return kDiagnostics;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Reporter rep(err);
  Options o;
  CLI::App app{"Thinging machine modeling toolkit", "tmkit"};
  app.add_flag("--fixtures", o.list_fixtures, "List the embedded fixtures");
  app.require_subcommand(0, 1);

  auto* check = app.add_subcommand("check", "Parse and validate, JSON-lines diagnostics");
  check->add_option("FILE", o.files, "Model file or fixture:NAME")->required();

  auto* render = app.add_subcommand("render", "Export DOT");
  render->add_option("FILE", o.files)->required()->expected(1);
  render->add_option("--view", o.view)->check(CLI::IsMember({"static", "behavior", "simplified"}));
  render->add_option("-o,--output", o.output, "Write to a file instead of stdout");

  auto* simp = app.add_subcommand("simplify", "Simplified graph as an edge list");
  simp->add_option("FILE", o.files)->required()->expected(1);

  auto* sim = app.add_subcommand("simulate", "Seeded token simulation, JSON-lines trace");
  sim->add_option("FILE", o.files)->required()->expected(1);
  sim->add_option("--seed", o.seed);
  sim->add_option("--max-steps", o.max_steps);
  sim->add_option("--capacity", o.capacity)->check(CLI::PositiveNumber);
  sim->add_option("--channels", o.channels)->check(CLI::IsMember({"declared", "inferred"}));

  auto* expl = app.add_subcommand("explore", "Reachable markings and deadlocks");
  expl->add_option("FILE", o.files)->required()->expected(1);
  expl->add_option("--max-states", o.max_states);
  expl->add_option("--capacity", o.capacity)->check(CLI::PositiveNumber);
  expl->add_option("--channels", o.channels)->check(CLI::IsMember({"declared", "inferred"}));

  auto* dedup = app.add_subcommand("dedup", "Isomorphism verdict and shared fragments");
  dedup->add_option("FILES", o.files)->required()->expected(2);
  dedup->add_option("--min-size", o.min_size);
  dedup->add_flag("--match-roles", o.match_roles, "Require equal role names");

  auto* fmt = app.add_subcommand("fmt", "Canonical reformat");
  fmt->add_option("FILE", o.files)->required()->expected(1);

  std::vector<std::string> argv_store{"tmkit"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    rep.error(e.what());
    rep.note("usage: tmkit [--fixtures] <check|render|simplify|simulate|explore|dedup|fmt> ... (see --help)");
    return kUsage;
  }

  if (o.list_fixtures) {
    for (const auto& n : fixture_names()) out << n << '\n';
    if (app.get_subcommands().empty()) return kOk;
  }
  if (app.get_subcommands().empty()) {
    rep.note("usage: tmkit [--fixtures] <check|render|simplify|simulate|explore|dedup|fmt> ... (see --help)");
    return kUsage;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    if (sub == check) return cmd_check(o, out, rep);
    if (sub == render) return cmd_render(o, out, rep);
    if (sub == simp) return cmd_simplify(o, out, rep);
    if (sub == sim) return cmd_simulate(o, out, rep);
    if (sub == expl) return cmd_explore(o, out, rep);
    if (sub == dedup) return cmd_dedup(o, out, rep);
    return cmd_fmt(o, out, rep);
  } catch (const UsageError& e) {
    rep.error(e.what());
    return kUsage;
  } catch (const Error& e) {
    rep.error(std::string(to_string(e.code())) + ": " + e.what());
    return kDiagnostics;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace tmkit::cli
