#include "tmkit/sim.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include <nlohmann/json.hpp>

#include "tmkit/behavior.hpp"

namespace tmkit {

namespace {

nlohmann::json marking_object(const std::vector<Channel>& channels, const Marking& m) {
  nlohmann::json obj = nlohmann::json::object();
  for (std::size_t i = 0; i < channels.size(); ++i) obj[channels[i].id] = m[i];
  return obj;
}

}  // namespace

Net::Net(const Model& model, const std::vector<Event>& events, const BehaviorGraph& behavior,
         const SimConfig& config) {
  if (config.default_capacity <= 0) {
    throw Error(Errc::ConfigError, "default capacity must be positive");
  }
  std::vector<std::pair<std::string, std::string>> edges;
  if (config.channels == ChannelSource::Declared) {
    events_ = behavior.nodes;
    edges = behavior.edges;
  } else {
    for (const auto& e : events) events_.push_back(e.name);
    auto deps = infer_dependencies(model, events);
    edges.assign(deps.begin(), deps.end());
  }
  auto index_of = [&](const std::string& name) -> std::size_t {
    auto it = std::find(events_.begin(), events_.end(), name);
    if (it == events_.end()) throw Error(Errc::ConfigError, "unknown event '" + name + "'");
    return static_cast<std::size_t>(it - events_.begin());
  };

  inputs_.resize(events_.size());
  outputs_.resize(events_.size());
  for (const auto& [a, b] : edges) {
    Channel c{a + "->" + b, a, b, config.default_capacity};
    outputs_[index_of(a)].push_back(channels_.size());
    inputs_[index_of(b)].push_back(channels_.size());
    channels_.push_back(std::move(c));
  }

  std::vector<std::string> initial_events = config.initial_events;
  if (initial_events.empty() && config.seeded.empty()) {
    for (std::size_t e = 0; e < events_.size(); ++e) {
      if (inputs_[e].empty()) initial_events.push_back(events_[e]);
    }
    if (initial_events.empty() && !events_.empty()) initial_events.push_back(events_.front());
  }
  std::vector<int> extra(channels_.size(), 0);
  for (const auto& name : initial_events) {
    std::size_t e = index_of(name);
    if (inputs_[e].empty()) {
      inputs_[e].push_back(channels_.size());
      channels_.push_back(Channel{"*->" + name, "*", name, 1});
      extra.push_back(1);
    } else {
      for (std::size_t c : inputs_[e]) extra[c] += 1;
    }
  }

  for (const auto& [id, cap] : config.capacities) {
    auto it = std::find_if(channels_.begin(), channels_.end(),
                           [&](const Channel& c) { return c.id == id; });
    if (it == channels_.end()) throw Error(Errc::ConfigError, "unknown channel '" + id + "'");
    if (cap <= 0) throw Error(Errc::ConfigError, "capacity of '" + id + "' must be positive");
    it->capacity = cap;
  }
  for (const auto& [id, count] : config.seeded) {
    auto it = std::find_if(channels_.begin(), channels_.end(),
                           [&](const Channel& c) { return c.id == id; });
    if (it == channels_.end()) throw Error(Errc::ConfigError, "unknown channel '" + id + "'");
    extra[static_cast<std::size_t>(it - channels_.begin())] += count;
  }
  initial_ = extra;
  if (!within_capacity(initial_)) {
    throw Error(Errc::ConfigError, "initial tokens exceed channel capacity");
  }
}

std::set<std::string> Net::sinks() const {
  std::set<std::string> out;
  for (std::size_t e = 0; e < events_.size(); ++e) {
    if (outputs_[e].empty()) out.insert(events_[e]);
  }
  return out;
}

bool Net::enabled(const Marking& m, std::size_t event) const {
  // An event with no input at all has nothing to start it.
  if (inputs_[event].empty()) return false;
  for (std::size_t c : inputs_[event]) {
    if (m[c] < 1) return false;
  }
  for (std::size_t c : outputs_[event]) {
    if (m[c] >= channels_[c].capacity) return false;
  }
  return true;
}

std::vector<std::size_t> Net::enabled_events(const Marking& m) const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < events_.size(); ++e) {
    if (enabled(m, e)) out.push_back(e);
  }
  return out;
}

Marking Net::fire(const Marking& m, std::size_t event) const {
  Marking next = m;
  for (std::size_t c : inputs_[event]) --next[c];
  for (std::size_t c : outputs_[event]) ++next[c];
  return next;
}

bool Net::within_capacity(const Marking& m) const {
  for (std::size_t c = 0; c < channels_.size(); ++c) {
    if (m[c] < 0 || m[c] > channels_[c].capacity) return false;
  }
  return true;
}

std::string Net::marking_json(const Marking& m) const {
  return marking_object(channels_, m).dump();
}

std::string Trace::to_json_lines() const {
  std::string out;
  for (const auto& f : firings) {
    nlohmann::ordered_json j;
    j["step"] = f.step;
    j["event"] = f.event;
    j["marking"] = marking_object(channels, f.marking);
    out += j.dump();
    out += '\n';
  }
  return out;
}

Trace simulate(const Model& model, const std::vector<Event>& events,
               const BehaviorGraph& behavior, const SimConfig& config) {
  Net net(model, events, behavior, config);
  Trace trace;
  trace.channels = net.channels();
  Marking m = net.initial();
  if (net.enabled_events(m).empty()) {
    throw Error(Errc::NoInitialEvents, "no event can fire from the initial marking");
  }
  std::mt19937_64 rng(config.seed);
  for (std::size_t step = 1; step <= config.max_steps; ++step) {
    auto choices = net.enabled_events(m);
    if (choices.empty()) break;
    // Plain modulo keeps traces identical across standard libraries.
    std::size_t pick = choices[rng() % choices.size()];
    m = net.fire(m, pick);
    trace.firings.push_back(Firing{step, net.events()[pick], m});
  }
  return trace;
}

Trace simulate(const Model& model, const SimConfig& config) {
  return simulate(model, model_events(model), model.behavior(), config);
}

std::string ExploreResult::to_json() const {
  nlohmann::ordered_json j;
  j["reachableCount"] = reachable_count;
  nlohmann::json dead = nlohmann::json::array();
  for (const auto& m : deadlocks) dead.push_back(marking_object(channels, m));
  j["deadlocks"] = dead;
  j["bounded"] = bounded;
  nlohmann::json ids = nlohmann::json::array();
  for (const auto& c : channels) ids.push_back(c.id);
  j["channels"] = ids;
  return j.dump();
}

ExploreResult explore_state_space(const Model& model, const std::vector<Event>& events,
                                  const BehaviorGraph& behavior, const ExploreConfig& config) {
  Net net(model, events, behavior, config.net);
  const std::set<std::string> terminal = config.terminal_events.value_or(net.sinks());
  const auto sinks = net.sinks();
  const bool sinks_terminal =
      std::includes(terminal.begin(), terminal.end(), sinks.begin(), sinks.end());

  ExploreResult r;
  r.channels = net.channels();
  std::deque<Marking> frontier{net.initial()};
  r.reachable.insert(net.initial());
  while (!frontier.empty()) {
    Marking m = std::move(frontier.front());
    frontier.pop_front();
    auto choices = net.enabled_events(m);
    if (choices.empty()) {
      const bool drained = std::all_of(m.begin(), m.end(), [](int t) { return t == 0; });
      if (!(drained && sinks_terminal)) r.deadlocks.push_back(m);
      continue;
    }
    for (std::size_t e : choices) {
      Marking next = net.fire(m, e);
      if (r.reachable.contains(next)) continue;
      if (r.reachable.size() >= config.max_states) {
        r.bounded = false;
        continue;
      }
      r.reachable.insert(next);
      frontier.push_back(std::move(next));
    }
  }
  r.reachable_count = r.reachable.size();
  return r;
}

ExploreResult explore_state_space(const Model& model, const ExploreConfig& config) {
  return explore_state_space(model, model_events(model), model.behavior(), config);
}

}  // namespace tmkit
