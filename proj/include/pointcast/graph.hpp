#ifndef POINTCAST_GRAPH_HPP
#define POINTCAST_GRAPH_HPP

#include <string>

#include <Eigen/Dense>

#include "pointcast/point_cloud.hpp"

namespace pointcast {

enum class KernelKind { gaussian, bilateral };

/// How the kernel bandwidth is derived from the data: population variance of
/// the pairwise Euclidean distances, or its square root.
enum class KappaMode { variance, stddev };

struct KernelConfig {
    KernelKind kind = KernelKind::gaussian;
    KappaMode kappa_mode = KappaMode::variance;    // coordinate term
    KappaMode kappa_c_mode = KappaMode::variance;  // color term (bilateral only)
};

enum class LaplacianKind { regular, normalized, transition, random_walk };

const char* to_string(LaplacianKind kind);
const char* to_string(KappaMode mode);
const char* to_string(KernelKind kind);
LaplacianKind laplacian_from_string(const std::string& s);
KappaMode kappa_mode_from_string(const std::string& s);
KernelKind kernel_from_string(const std::string& s);

/// Weighted undirected graph over one point set: adjacency, degrees, and the
/// selected Laplacian variant.
struct GraphSpec {
    Eigen::MatrixXd weights;    // W: symmetric, entries in [0,1], zero diagonal
    Eigen::VectorXd degrees;    // D_ii = sum_j W_ij
    Eigen::MatrixXd laplacian;  // per `kind`
    LaplacianKind kind = LaplacianKind::regular;
};

/// Kernel bandwidth from the N(N-1)/2 pairwise distances of `points`
/// (population variance or its square root). When every pairwise distance is
/// equal the central variance vanishes even though the points are spread; the
/// mean squared distance (mean distance in stddev mode) is used instead so
/// any set with >= 2 distinct points yields a strictly positive bandwidth.
/// Throws DegenerateKernelError when all points coincide.
double compute_kappa(const Eigen::MatrixXd& points, KappaMode mode);
double compute_kappa(const PointCloud& cloud, KappaMode mode);

/// W_ij = exp(-||p_i - p_j||^2 / kappa), zero diagonal, exactly symmetric.
Eigen::MatrixXd gaussian_adjacency(const Eigen::Matrix3Xd& coords, double kappa);

/// W_ij = exp(-(||p_i - p_j||^2 / kappa_p + ||c_i - c_j||^2 / kappa_c)).
Eigen::MatrixXd bilateral_adjacency(const Eigen::Matrix3Xd& coords, const Eigen::Matrix3Xd& colors,
                                    double kappa_p, double kappa_c);

/// Kernel-config driven adjacency with bandwidths derived from the cloud.
/// For the bilateral kernel, a cloud whose colors are all identical falls
/// back to the pure coordinate kernel (the color term is identically zero).
/// Single-point clouds yield the 1x1 zero matrix without touching the kernel.
/// With `sparsify`, weights below 1e-8 are dropped (off by default).
Eigen::MatrixXd build_adjacency(const PointCloud& cloud, const KernelConfig& kernel,
                                bool sparsify = false);

/// Degree matrix plus the requested Laplacian variant:
///   regular      L = D - W
///   normalized   L = I - D^{-1/2} W D^{-1/2}
///   transition   L = D^{-1} W
///   random_walk  L = I - D^{-1} W
/// Throws SingularDegreeError if a D-inverting kind meets a zero degree.
GraphSpec build_laplacian(const Eigen::MatrixXd& weights, LaplacianKind kind);

/// Convenience: adjacency + Laplacian in one step.
GraphSpec build_graph(const PointCloud& cloud, const KernelConfig& kernel, LaplacianKind kind,
                      bool sparsify = false);

}  // namespace pointcast

#endif
