#pragma once

#include <vector>

#include "tmkit/core.hpp"
#include "tmkit/diagnostic.hpp"

namespace tmkit {

/// Legal flow adjacencies. Within one thimac: create->process, create->release,
/// receive->process, receive->release, process->release, release->transfer,
/// transfer->receive. Across thimacs only transfer->transfer.
bool flow_adjacency_legal(StageKind src, StageKind dst, bool same_thimac);

/// Static rules over flows and triggers. Result is sorted by source span,
/// then code; an empty result means the model is statically valid.
std::vector<Diagnostic> check_static(const Model& model);

}  // namespace tmkit
