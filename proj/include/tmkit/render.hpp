#pragma once

#include <string>

#include "tmkit/core.hpp"
#include "tmkit/match.hpp"

namespace tmkit {

enum class View { Static, Behavior, Simplified };

struct RenderOptions {
  View view = View::Static;
  bool cluster_by_thimac = true;
  bool show_thing_labels = true;
};

/// Static or behavior view of a model, depending on `opts.view`.
/// Throws Error(ConfigError) for View::Simplified; simplify first.
std::string to_dot(const Model& model, const RenderOptions& opts = {});
std::string to_dot(const BehaviorGraph& behavior, const std::string& name,
                   const RenderOptions& opts = {View::Behavior});
std::string to_dot(const SimplifiedGraph& graph, const std::string& name,
                   const RenderOptions& opts = {View::Simplified});

}  // namespace tmkit
