#pragma once

#include <cstdint>

namespace sslcl {

/// Simulator-internal node handle. Algorithms never see these.
using NodeId = std::uint32_t;

/// Zero-based port index into a node's ordered neighbor list.
using Port = std::uint32_t;

/// Output value. Alphabets are {1, ..., q}; zero encodes the undecided value.
using Value = std::int32_t;

inline constexpr Value kBottom = 0;

enum class ElementKind { node, edge };

}  // namespace sslcl
