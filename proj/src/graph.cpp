#include "pointcast/graph.hpp"

#include <cmath>
#include <stdexcept>

#include "pointcast/errors.hpp"

namespace pointcast {

const char* to_string(LaplacianKind kind) {
    switch (kind) {
        case LaplacianKind::regular: return "regular";
        case LaplacianKind::normalized: return "normalized";
        case LaplacianKind::transition: return "transition";
        case LaplacianKind::random_walk: return "random_walk";
    }
    return "?";
}

const char* to_string(KappaMode mode) {
    return mode == KappaMode::variance ? "variance" : "stddev";
}

const char* to_string(KernelKind kind) {
    return kind == KernelKind::gaussian ? "gaussian" : "bilateral";
}

LaplacianKind laplacian_from_string(const std::string& s) {
    if (s == "regular") return LaplacianKind::regular;
    if (s == "normalized") return LaplacianKind::normalized;
    if (s == "transition") return LaplacianKind::transition;
    if (s == "random_walk" || s == "random-walk") return LaplacianKind::random_walk;
    throw std::invalid_argument("unknown laplacian kind '" + s + "'");
}

KappaMode kappa_mode_from_string(const std::string& s) {
    if (s == "variance" || s == "var") return KappaMode::variance;
    if (s == "stddev" || s == "std") return KappaMode::stddev;
    throw std::invalid_argument("unknown kappa mode '" + s + "'");
}

KernelKind kernel_from_string(const std::string& s) {
    if (s == "gaussian") return KernelKind::gaussian;
    if (s == "bilateral") return KernelKind::bilateral;
    throw std::invalid_argument("unknown kernel kind '" + s + "'");
}

namespace {

struct DistanceStats {
    double mean = 0.0;
    double variance = 0.0;  // population form
};

DistanceStats pairwise_distance_stats(const Eigen::MatrixXd& points) {
    const Eigen::Index n = points.cols();
    if (n < 2) throw DegenerateKernelError("kappa: need at least two points");
    double sum = 0.0, sum_sq = 0.0;
    const double count = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d = (points.col(i) - points.col(j)).norm();
            sum += d;
            sum_sq += d * d;
        }
    }
    DistanceStats s;
    s.mean = sum / count;
    s.variance = std::max(0.0, sum_sq / count - s.mean * s.mean);
    return s;
}

}  // namespace

double compute_kappa(const Eigen::MatrixXd& points, KappaMode mode) {
    const DistanceStats s = pairwise_distance_stats(points);
    if (s.mean <= 0.0)
        throw DegenerateKernelError("kappa: all points coincide, kernel bandwidth undefined");
    double kappa;
    if (s.variance > 0.0) {
        kappa = mode == KappaMode::variance ? s.variance : std::sqrt(s.variance);
    } else {
        // All pairwise distances equal (e.g. N=2): the central variance is 0
        // but the geometry is not degenerate. Scale by the distances instead.
        kappa = mode == KappaMode::variance ? s.mean * s.mean : s.mean;
    }
    return kappa;
}

double compute_kappa(const PointCloud& cloud, KappaMode mode) {
    return compute_kappa(Eigen::MatrixXd(cloud.coords), mode);
}

Eigen::MatrixXd gaussian_adjacency(const Eigen::Matrix3Xd& coords, double kappa) {
    if (!(kappa > 0.0)) throw DegenerateKernelError("adjacency: kappa must be > 0");
    const Eigen::Index n = coords.cols();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d2 = (coords.col(i) - coords.col(j)).squaredNorm();
            const double v = std::exp(-d2 / kappa);
            w(i, j) = v;
            w(j, i) = v;
        }
    }
    return w;
}

Eigen::MatrixXd bilateral_adjacency(const Eigen::Matrix3Xd& coords, const Eigen::Matrix3Xd& colors,
                                    double kappa_p, double kappa_c) {
    if (!(kappa_p > 0.0) || !(kappa_c > 0.0))
        throw DegenerateKernelError("adjacency: bilateral bandwidths must be > 0");
    if (coords.cols() != colors.cols())
        throw std::invalid_argument("adjacency: coords/colors size mismatch");
    const Eigen::Index n = coords.cols();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double dp = (coords.col(i) - coords.col(j)).squaredNorm();
            const double dc = (colors.col(i) - colors.col(j)).squaredNorm();
            const double v = std::exp(-(dp / kappa_p + dc / kappa_c));
            w(i, j) = v;
            w(j, i) = v;
        }
    }
    return w;
}

Eigen::MatrixXd build_adjacency(const PointCloud& cloud, const KernelConfig& kernel,
                                bool sparsify) {
    const Eigen::Index n = cloud.size();
    if (n == 1) return Eigen::MatrixXd::Zero(1, 1);

    const double kappa_p = compute_kappa(Eigen::MatrixXd(cloud.coords), kernel.kappa_mode);
    Eigen::MatrixXd w;
    if (kernel.kind == KernelKind::gaussian) {
        w = gaussian_adjacency(cloud.coords, kappa_p);
    } else {
        const DistanceStats cs = pairwise_distance_stats(Eigen::MatrixXd(cloud.colors));
        if (cs.mean <= 0.0) {
            // flat color field: the color term vanishes for every pair
            w = gaussian_adjacency(cloud.coords, kappa_p);
        } else {
            const double kappa_c = cs.variance > 0.0
                                       ? (kernel.kappa_c_mode == KappaMode::variance
                                              ? cs.variance
                                              : std::sqrt(cs.variance))
                                       : (kernel.kappa_c_mode == KappaMode::variance
                                              ? cs.mean * cs.mean
                                              : cs.mean);
            w = bilateral_adjacency(cloud.coords, cloud.colors, kappa_p, kappa_c);
        }
    }
    if (sparsify) w = (w.array() < 1e-8).select(0.0, w);
    return w;
}

GraphSpec build_laplacian(const Eigen::MatrixXd& weights, LaplacianKind kind) {
    const Eigen::Index n = weights.rows();
    if (weights.cols() != n) throw std::invalid_argument("laplacian: W must be square");

    GraphSpec spec;
    spec.kind = kind;
    spec.weights = weights;
    spec.degrees = weights.rowwise().sum();

    const bool needs_inverse = kind != LaplacianKind::regular;
    if (needs_inverse && (spec.degrees.array() <= 0.0).any())
        throw SingularDegreeError("laplacian: isolated vertex with a degree-inverting kind");

    switch (kind) {
        case LaplacianKind::regular: {
            spec.laplacian = Eigen::MatrixXd(spec.degrees.asDiagonal()) - weights;
            break;
        }
        case LaplacianKind::normalized: {
            const Eigen::VectorXd dinv_sqrt = spec.degrees.array().rsqrt();
            spec.laplacian = Eigen::MatrixXd::Identity(n, n) -
                             dinv_sqrt.asDiagonal() * weights * dinv_sqrt.asDiagonal();
            // keep exact symmetry despite rounding in the triple product
            spec.laplacian = 0.5 * (spec.laplacian + spec.laplacian.transpose()).eval();
            break;
        }
        case LaplacianKind::transition: {
            spec.laplacian = spec.degrees.cwiseInverse().asDiagonal() * weights;
            break;
        }
        case LaplacianKind::random_walk: {
            spec.laplacian = Eigen::MatrixXd::Identity(n, n) -
                             spec.degrees.cwiseInverse().asDiagonal() * weights;
            break;
        }
    }
    return spec;
}

GraphSpec build_graph(const PointCloud& cloud, const KernelConfig& kernel, LaplacianKind kind,
                      bool sparsify) {
    return build_laplacian(build_adjacency(cloud, kernel, sparsify), kind);
}

}  // namespace pointcast
