#include "pointcast/partition.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pointcast {

namespace {

void split_recursive(const PointCloud& cloud, std::vector<int>& indices, int lo, int hi,
                     int max_block, std::vector<std::vector<int>>& leaves) {
    const int n = hi - lo;
    if (n <= max_block) {
        std::vector<int> leaf(indices.begin() + lo, indices.begin() + hi);
        std::sort(leaf.begin(), leaf.end());  // keep original point order inside a block
        leaves.push_back(std::move(leaf));
        return;
    }
    // widest axis over this subset
    Eigen::Vector3d minv = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
    Eigen::Vector3d maxv = -minv;
    for (int k = lo; k < hi; ++k) {
        const auto p = cloud.coords.col(indices[static_cast<size_t>(k)]);
        minv = minv.cwiseMin(p);
        maxv = maxv.cwiseMax(p);
    }
    int axis = 0;
    (maxv - minv).maxCoeff(&axis);

    const int mid = lo + n / 2;
    std::nth_element(indices.begin() + lo, indices.begin() + mid, indices.begin() + hi,
                     [&](int a, int b) {
                         const double ca = cloud.coords(axis, a);
                         const double cb = cloud.coords(axis, b);
                         if (ca != cb) return ca < cb;
                         return a < b;  // deterministic tie-break
                     });
    split_recursive(cloud, indices, lo, mid, max_block, leaves);
    split_recursive(cloud, indices, mid, hi, max_block, leaves);
}

}  // namespace

std::vector<Block> partition_blocks(const PointCloud& cloud, int max_block) {
    validate_cloud(cloud);
    if (max_block < 2) throw std::invalid_argument("partition_blocks: max_block must be >= 2");

    const int n = static_cast<int>(cloud.size());
    std::vector<int> indices(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) indices[static_cast<size_t>(i)] = i;

    std::vector<std::vector<int>> leaves;
    split_recursive(cloud, indices, 0, n, max_block, leaves);
    // canonical block order: by smallest contained index
    std::sort(leaves.begin(), leaves.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    std::vector<Block> blocks;
    blocks.reserve(leaves.size());
    for (auto& leaf : leaves) {
        Block b;
        b.cloud.coords.resize(3, static_cast<Eigen::Index>(leaf.size()));
        b.cloud.colors.resize(3, static_cast<Eigen::Index>(leaf.size()));
        for (size_t k = 0; k < leaf.size(); ++k) {
            b.cloud.coords.col(static_cast<Eigen::Index>(k)) = cloud.coords.col(leaf[k]);
            b.cloud.colors.col(static_cast<Eigen::Index>(k)) = cloud.colors.col(leaf[k]);
        }
        b.indices = std::move(leaf);
        blocks.push_back(std::move(b));
    }
    return blocks;
}

PointCloud reassemble_blocks(const std::vector<Block>& blocks,
                             const std::vector<PointCloud>& decoded, Eigen::Index total_points) {
    if (blocks.size() != decoded.size())
        throw std::invalid_argument("reassemble_blocks: block/cloud count mismatch");
    PointCloud out;
    out.coords.setZero(3, total_points);
    out.colors.setZero(3, total_points);
    for (size_t b = 0; b < blocks.size(); ++b) {
        const auto& idx = blocks[b].indices;
        if (static_cast<Eigen::Index>(idx.size()) != decoded[b].size())
            throw std::invalid_argument("reassemble_blocks: decoded block size mismatch");
        for (size_t k = 0; k < idx.size(); ++k) {
            out.coords.col(idx[k]) = decoded[b].coords.col(static_cast<Eigen::Index>(k));
            out.colors.col(idx[k]) = decoded[b].colors.col(static_cast<Eigen::Index>(k));
        }
    }
    return out;
}

}  // namespace pointcast
