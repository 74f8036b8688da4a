#ifndef POINTCAST_METRICS_HPP
#define POINTCAST_METRICS_HPP

#include <vector>

#include <Eigen/Dense>

#include "pointcast/point_cloud.hpp"

namespace pointcast {

struct NearestHit {
    int index = -1;
    double sq_dist = 0.0;
};

/// Static k-d tree over 3D points for nearest-neighbor queries. Matches the
/// brute-force scan exactly (same distance arithmetic, equal distances
/// resolved to the lowest index).
class KdTree3 {
public:
    explicit KdTree3(const Eigen::Matrix3Xd& points);
    [[nodiscard]] NearestHit nearest(const Eigen::Vector3d& query) const;

private:
    struct Node {
        int point = -1;
        int axis = 0;
        int left = -1;
        int right = -1;
    };
    int build(std::vector<int>& idx, int lo, int hi);
    void search(int node, const Eigen::Vector3d& query, NearestHit& best) const;

    Eigen::Matrix3Xd points_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

/// O(N) reference scan; the oracle the k-d tree must agree with exactly.
NearestHit nearest_neighbor_linear(const Eigen::Vector3d& query, const Eigen::Matrix3Xd& targets);

/// Accelerated nearest neighbor over a whole cloud's coordinates.
NearestHit nearest_neighbor(const Eigen::Vector3d& query, const PointCloud& targets);

/// Symmetric MSE of 3D coordinates: the average of the two directional
/// nearest-neighbor mean squared distances, each direction normalized by the
/// cardinality of the set being iterated.
double smse_coords(const PointCloud& org, const PointCloud& dec);

/// Symmetric MSE of colors (YUV): each color residual is taken against the
/// color at the geometric nearest neighbor.
double smse_colors(const PointCloud& org, const PointCloud& dec);

/// 10 log10(linear); non-positive inputs map to -infinity.
double to_db(double linear);

struct QualityReport {
    double smse_xyz = 0.0;
    double smse_yuv = 0.0;
    double smse_xyz_db = 0.0;
    double smse_yuv_db = 0.0;
    Eigen::Index n_org = 0;
    Eigen::Index n_dec = 0;
};

QualityReport score_clouds(const PointCloud& org, const PointCloud& dec);

}  // namespace pointcast

#endif
