#ifndef POINTCAST_POINT_CLOUD_HPP
#define POINTCAST_POINT_CLOUD_HPP

#include <Eigen/Dense>

namespace pointcast {

/// A point cloud: N points with 3D coordinates and a color triple per point.
/// Colors are stored in YUV, every channel normalized to [0, 1]. RGB sources
/// are converted on ingestion so all downstream processing sees one domain.
struct PointCloud {
    Eigen::Matrix3Xd coords;  // x, y, z per column, arbitrary metric units
    Eigen::Matrix3Xd colors;  // Y, U, V per column, each in [0, 1]

    [[nodiscard]] Eigen::Index size() const { return coords.cols(); }
};

/// Throws std::invalid_argument when the cloud violates its invariants:
/// matching column counts, N >= 1, finite coordinates, colors in [0, 1].
void validate_cloud(const PointCloud& cloud);

/// Full-range BT.601: Y = 0.299 R + 0.587 G + 0.114 B, U/V centered at 0.5.
/// Maps the RGB unit cube into the YUV unit cube.
Eigen::Matrix3Xd rgb_to_yuv(const Eigen::Matrix3Xd& rgb);

/// Inverse of rgb_to_yuv; output clamped to [0, 1] so that out-of-gamut
/// decoded colors still produce a valid cloud.
Eigen::Matrix3Xd yuv_to_rgb(const Eigen::Matrix3Xd& yuv);

}  // namespace pointcast

#endif
