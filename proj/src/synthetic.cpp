#include "pointcast/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pointcast/rng.hpp"

namespace pointcast {

SyntheticKind synthetic_kind_from_string(const std::string& s) {
    if (s == "plane") return SyntheticKind::plane;
    if (s == "sphere") return SyntheticKind::sphere;
    if (s == "smooth-noise" || s == "smooth_noise") return SyntheticKind::smooth_noise;
    throw std::invalid_argument("unknown synthetic kind '" + s + "'");
}

const char* to_string(SyntheticKind kind) {
    switch (kind) {
        case SyntheticKind::plane: return "plane";
        case SyntheticKind::sphere: return "sphere";
        case SyntheticKind::smooth_noise: return "smooth-noise";
    }
    return "?";
}

namespace {

// Smooth color field: low-order polynomial of position, kept inside [0.05,
// 0.95] so channel noise rarely hits the clamp.
Eigen::Vector3d smooth_color(const Eigen::Vector3d& p) {
    const double y = 0.5 + 0.35 * (p.x() - 0.5) + 0.25 * (p.y() - 0.5) - 0.3 * p.x() * p.y() + 0.15 * p.z();
    const double u = 0.5 + 0.3 * (p.y() - 0.5) - 0.2 * p.x() * p.x() + 0.1 * p.z();
    const double v = 0.5 - 0.25 * (p.x() - 0.5) + 0.2 * p.y() * p.y() - 0.1 * p.z();
    return {std::clamp(y, 0.05, 0.95), std::clamp(u, 0.05, 0.95), std::clamp(v, 0.05, 0.95)};
}

PointCloud finish(Eigen::Matrix3Xd coords, rng::Stream& stream, double color_jitter) {
    PointCloud cloud;
    cloud.colors.resize(3, coords.cols());
    for (Eigen::Index i = 0; i < coords.cols(); ++i) {
        Eigen::Vector3d c = smooth_color(coords.col(i));
        for (int k = 0; k < 3; ++k)
            c(k) = std::clamp(c(k) + color_jitter * stream.next_gaussian(), 0.0, 1.0);
        cloud.colors.col(i) = c;
    }
    cloud.coords = std::move(coords);
    return cloud;
}

}  // namespace

PointCloud generate_synthetic(SyntheticKind kind, int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("generate_synthetic: n must be >= 2");
    rng::Stream stream(seed ^ (static_cast<std::uint64_t>(kind) << 32));
    Eigen::Matrix3Xd coords(3, n);

    switch (kind) {
        case SyntheticKind::plane: {
            for (int i = 0; i < n; ++i)
                coords.col(i) = Eigen::Vector3d(stream.next_uniform(), stream.next_uniform(), 0.0);
            return finish(std::move(coords), stream, 0.0);
        }
        case SyntheticKind::sphere: {
            for (int i = 0; i < n; ++i) {
                Eigen::Vector3d g(stream.next_gaussian(), stream.next_gaussian(),
                                  stream.next_gaussian());
                while (g.norm() < 1e-12)
                    g = Eigen::Vector3d(stream.next_gaussian(), stream.next_gaussian(),
                                        stream.next_gaussian());
                coords.col(i) = g / g.norm();
            }
            return finish(std::move(coords), stream, 0.0);
        }
        case SyntheticKind::smooth_noise: {
            const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
            for (int i = 0; i < n; ++i) {
                const int r = i / cols, c = i % cols;
                const double x =
                    (static_cast<double>(c) + 0.35 * stream.next_uniform()) / static_cast<double>(cols);
                const double y =
                    (static_cast<double>(r) + 0.35 * stream.next_uniform()) / static_cast<double>(cols);
                const double z = 0.25 * x * x + 0.2 * x * y - 0.15 * y * y + 0.1 * x - 0.05 * y +
                                 0.01 * stream.next_gaussian();
                coords.col(i) = Eigen::Vector3d(x, y, z);
            }
            return finish(std::move(coords), stream, 0.005);
        }
    }
    throw std::invalid_argument("unknown synthetic kind");
}

PointCloud generate_color_edge(int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("generate_color_edge: n must be >= 2");
    rng::Stream stream(seed ^ 0xC0103Dull);
    PointCloud cloud;
    cloud.coords.resize(3, n);
    cloud.colors.resize(3, n);
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    const Eigen::Vector3d tone_a(0.85, 0.35, 0.6);
    const Eigen::Vector3d tone_b(0.2, 0.7, 0.4);
    for (int i = 0; i < n; ++i) {
        const int r = i / cols, c = i % cols;
        const double x = (static_cast<double>(c) + 0.35 * stream.next_uniform()) / static_cast<double>(cols);
        const double y = (static_cast<double>(r) + 0.35 * stream.next_uniform()) / static_cast<double>(cols);
        cloud.coords.col(i) = Eigen::Vector3d(x, y, 0.0);
        cloud.colors.col(i) = x < 0.5 ? tone_a : tone_b;
    }
    return cloud;
}

}  // namespace pointcast
