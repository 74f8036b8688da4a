#ifndef POINTCAST_TEST_HELPERS_HPP
#define POINTCAST_TEST_HELPERS_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "pointcast/point_cloud.hpp"
#include "pointcast/rng.hpp"

namespace testutil {

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    out << text;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Random cloud with in-gamut colors (built from RGB so YUV->RGB->YUV writes
// round-trip losslessly).
inline pointcast::PointCloud random_cloud(int n, std::uint64_t seed, bool grid_colors = false) {
    pointcast::rng::Stream stream(seed);
    pointcast::PointCloud cloud;
    cloud.coords.resize(3, n);
    Eigen::Matrix3Xd rgb(3, n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < 3; ++k) {
            cloud.coords(k, i) = 10.0 * (stream.next_uniform() - 0.5);
            double c = stream.next_uniform();
            if (grid_colors) c = std::round(c * 255.0) / 255.0;
            rgb(k, i) = c;
        }
    }
    cloud.colors = pointcast::rgb_to_yuv(rgb);
    return cloud;
}

}  // namespace testutil

#endif
