#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tmkit/core.hpp"

namespace tmkit {

enum class ChannelSource { Declared, Inferred };

/// A bounded buffer between two events. Start channels (`from == "*"`) hold
/// the single token that lets an initial source event fire once.
struct Channel {
  std::string id;  // "From->To" or "*->To"
  std::string from;
  std::string to;
  int capacity = 1;
};

/// Token counts, indexed like Net::channels().
using Marking = std::vector<int>;

struct SimConfig {
  int default_capacity = 1;
  std::map<std::string, int> capacities;  // by channel id
  std::size_t max_steps = 100;
  std::uint64_t seed = 0;
  /// Events allowed to start. Source events get a start token; other events
  /// get one token on each incoming channel. Defaults to the source events,
  /// or to the first behavior node when there are none, unless `seeded` is set.
  std::vector<std::string> initial_events;
  std::map<std::string, int> seeded;  // extra initial tokens by channel id
  ChannelSource channels = ChannelSource::Declared;
};

class Net {
 public:
  Net(const Model& model, const std::vector<Event>& events, const BehaviorGraph& behavior,
      const SimConfig& config);

  const std::vector<std::string>& events() const { return events_; }
  const std::vector<Channel>& channels() const { return channels_; }
  const Marking& initial() const { return initial_; }
  /// Events without outgoing channels.
  std::set<std::string> sinks() const;

  bool enabled(const Marking& m, std::size_t event) const;
  std::vector<std::size_t> enabled_events(const Marking& m) const;
  Marking fire(const Marking& m, std::size_t event) const;
  bool within_capacity(const Marking& m) const;

  std::string marking_json(const Marking& m) const;

 private:
  std::vector<std::string> events_;
  std::vector<Channel> channels_;
  std::vector<std::vector<std::size_t>> inputs_;
  std::vector<std::vector<std::size_t>> outputs_;
  Marking initial_;
};

struct Firing {
  std::size_t step = 0;  // 1-based
  std::string event;
  Marking marking;  // after firing
};

struct Trace {
  std::vector<Channel> channels;
  std::vector<Firing> firings;

  /// `{"step": n, "event": name, "marking": {channelId: count}}` per line.
  std::string to_json_lines() const;
};

/// Throws Error(NoInitialEvents) if nothing is enabled initially and
/// Error(ConfigError) for non-positive capacities or unknown names.
Trace simulate(const Model& model, const std::vector<Event>& events,
               const BehaviorGraph& behavior, const SimConfig& config);
Trace simulate(const Model& model, const SimConfig& config);

struct ExploreConfig {
  SimConfig net;
  std::size_t max_states = 100000;
  /// Events whose completion counts as normal termination. Defaults to the
  /// sink events of the net.
  std::optional<std::set<std::string>> terminal_events;
};

struct ExploreResult {
  std::vector<Channel> channels;
  std::size_t reachable_count = 0;
  std::vector<Marking> deadlocks;
  bool bounded = true;
  std::set<Marking> reachable;

  std::string to_json() const;
};

/// Breadth-first enumeration of reachable markings. When more than
/// `max_states` markings exist the partial result comes back with
/// `bounded == false`.
ExploreResult explore_state_space(const Model& model, const std::vector<Event>& events,
                                  const BehaviorGraph& behavior, const ExploreConfig& config);
ExploreResult explore_state_space(const Model& model, const ExploreConfig& config);

}  // namespace tmkit
