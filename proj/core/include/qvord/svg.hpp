#pragma once

#include <string>

#include "qvord/cluster.hpp"

namespace qvord {

/// Standalone SVG scatter plot of a 2-D PointSet: axes with six ticks per
/// side, a marker and text label per point, and a convex-hull polygon per
/// cluster (segment for two points, ring for one). With overlay, the
/// S = 2I-1 and S = 1 reference lines and the A, G, J, P landmarks are
/// drawn where they intersect the data viewport. Output is byte-stable
/// for fixed input.
std::string render_scatter(const PointSet& points, const ClusterResult* clusters,
                           bool overlay);

} // namespace qvord
