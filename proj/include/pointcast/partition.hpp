#ifndef POINTCAST_PARTITION_HPP
#define POINTCAST_PARTITION_HPP

#include <vector>

#include "pointcast/point_cloud.hpp"

namespace pointcast {

/// A contiguous working unit: a subset of a cloud plus the original indices
/// the subset came from, so decoded attributes can be scattered back.
struct Block {
    std::vector<int> indices;  // original point indices, unique
    PointCloud cloud;          // restriction of the source cloud
};

/// Recursive median split along the widest coordinate axis until every leaf
/// holds at most max_block points. Deterministic: ties are broken by original
/// index, so identical inputs always yield identical partitions. The result
/// is a disjoint cover of [0, N).
std::vector<Block> partition_blocks(const PointCloud& cloud, int max_block);

/// Rebuilds a full cloud from per-block decoded clouds, inverse of the
/// partition's index maps.
PointCloud reassemble_blocks(const std::vector<Block>& blocks,
                             const std::vector<PointCloud>& decoded, Eigen::Index total_points);

}  // namespace pointcast

#endif
