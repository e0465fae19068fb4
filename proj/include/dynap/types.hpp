#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace dynap {

/// Node identifiers are 1-based; vector entry for node k lives at index k-1.
using NodeId = int;

/// Hop-count distance. kUnreachable is the explicit "no path" sentinel.
using Dist = int;
inline constexpr Dist kUnreachable = std::numeric_limits<Dist>::max();

inline bool is_reachable(Dist d) { return d != kUnreachable; }

/// Binary reachability vector (values 0/1), one entry per node.
using ReachVec = std::vector<std::uint8_t>;

/// Distance vector, one entry per node, kUnreachable where no path is known.
using DistVec = std::vector<Dist>;

/// Signed distance difference. kDeltaInf stands for +inf (either operand
/// unreachable); it compares > 0 like any positive value.
using Delta = int;
inline constexpr Delta kDeltaInf = std::numeric_limits<Delta>::max();
using DeltaVec = std::vector<Delta>;

}  // namespace dynap
