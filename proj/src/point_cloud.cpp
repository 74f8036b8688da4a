#include "pointcast/point_cloud.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pointcast {

void validate_cloud(const PointCloud& cloud) {
    if (cloud.coords.cols() != cloud.colors.cols())
        throw std::invalid_argument("cloud: coords and colors column counts differ");
    if (cloud.coords.cols() < 1)
        throw std::invalid_argument("cloud: at least one point required");
    if (!cloud.coords.allFinite())
        throw std::invalid_argument("cloud: non-finite coordinate entry");
    if (!cloud.colors.allFinite())
        throw std::invalid_argument("cloud: non-finite color entry");
    if ((cloud.colors.array() < 0.0).any() || (cloud.colors.array() > 1.0).any())
        throw std::invalid_argument("cloud: color entry outside [0, 1]");
}

// Full-range BT.601 / JFIF coefficients. The forward and inverse maps are an
// exact linear bijection, so round trips are lossless up to rounding.
Eigen::Matrix3Xd rgb_to_yuv(const Eigen::Matrix3Xd& rgb) {
    Eigen::Matrix3Xd yuv(3, rgb.cols());
    for (Eigen::Index i = 0; i < rgb.cols(); ++i) {
        const double r = rgb(0, i), g = rgb(1, i), b = rgb(2, i);
        const double y = 0.299 * r + 0.587 * g + 0.114 * b;
        yuv(0, i) = y;
        yuv(1, i) = 0.5 + (b - y) / 1.772;
        yuv(2, i) = 0.5 + (r - y) / 1.402;
    }
    return yuv;
}

Eigen::Matrix3Xd yuv_to_rgb(const Eigen::Matrix3Xd& yuv) {
    Eigen::Matrix3Xd rgb(3, yuv.cols());
    for (Eigen::Index i = 0; i < yuv.cols(); ++i) {
        const double y = yuv(0, i);
        const double u = yuv(1, i) - 0.5;
        const double v = yuv(2, i) - 0.5;
        rgb(0, i) = y + 1.402 * v;
        rgb(1, i) = y - (0.114 * 1.772 / 0.587) * u - (0.299 * 1.402 / 0.587) * v;
        rgb(2, i) = y + 1.772 * u;
    }
    return rgb.cwiseMax(0.0).cwiseMin(1.0);
}

}  // namespace pointcast
