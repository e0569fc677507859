#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tmkit/core.hpp"
#include "tmkit/diagnostic.hpp"

namespace tmkit {

/// (earlier event, later event)
using Dependency = std::pair<std::string, std::string>;

/// Flow and trigger arcs with both endpoints inside the event's region.
std::vector<std::string> closed_arcs(const Model& model, const Event& event);

/// E_EMPTY_REGION, E_UNRESOLVED_REF and E_DISCONNECTED_REGION.
std::vector<Diagnostic> check_event_region(const Model& model, const Event& event);

/// Pairs (a, b), a != b, such that some arc leaves a's region and enters b's.
/// Throws Error(OverlapAmbiguity) when an arc's source and target each lie in
/// two or more regions.
std::set<Dependency> infer_dependencies(const Model& model, const std::vector<Event>& events);
std::set<Dependency> infer_dependencies(const Model& model);

/// Every inferred dependency must be a path in the declared chronology
/// (E_CHRONOLOGY_GAP); declared edges not implied by the inferred order are
/// flagged W_UNSUPPORTED_EDGE.
std::vector<Diagnostic> check_behavior(const Model& model, const std::vector<Event>& events,
                                       const BehaviorGraph& behavior);
std::vector<Diagnostic> check_behavior(const Model& model);

/// Non-goal events from which no goal is reachable. Throws Error(UnknownGoal).
std::set<std::string> nonfunctional_events(const BehaviorGraph& behavior,
                                           const std::set<std::string>& goals);

/// Events of a model in declaration order.
std::vector<Event> model_events(const Model& model);

}  // namespace tmkit
