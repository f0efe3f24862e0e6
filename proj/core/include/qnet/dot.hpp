#pragma once

#include <string>

#include "qnet/freecat.hpp"

namespace qnet {

/// Graphviz digraph of a reachability result: one node per marking, one edge
/// per parallel step labelled with its fired transitions.
std::string to_dot(const ReachResult& reach);

} // namespace qnet
