#include "pointcast/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pointcast {

namespace {

// Shared by the tree and the linear scan so both produce bit-identical values.
inline double sq_dist(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    const double dx = a.x() - b.x();
    const double dy = a.y() - b.y();
    const double dz = a.z() - b.z();
    return dx * dx + dy * dy + dz * dz;
}

inline bool better(double d, int idx, const NearestHit& best) {
    return d < best.sq_dist || (d == best.sq_dist && idx < best.index);
}

}  // namespace

KdTree3::KdTree3(const Eigen::Matrix3Xd& points) : points_(points) {
    if (points_.cols() == 0) throw std::invalid_argument("KdTree3: empty point set");
    std::vector<int> idx(static_cast<size_t>(points_.cols()));
    std::iota(idx.begin(), idx.end(), 0);
    nodes_.reserve(idx.size());
    root_ = build(idx, 0, static_cast<int>(idx.size()));
}

int KdTree3::build(std::vector<int>& idx, int lo, int hi) {
    if (lo >= hi) return -1;
    // widest axis of the subset
    Eigen::Vector3d minv = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
    Eigen::Vector3d maxv = -minv;
    for (int k = lo; k < hi; ++k) {
        minv = minv.cwiseMin(points_.col(idx[static_cast<size_t>(k)]));
        maxv = maxv.cwiseMax(points_.col(idx[static_cast<size_t>(k)]));
    }
    int axis = 0;
    (maxv - minv).maxCoeff(&axis);

    const int mid = lo + (hi - lo) / 2;
    std::nth_element(idx.begin() + lo, idx.begin() + mid, idx.begin() + hi, [&](int a, int b) {
        const double ca = points_(axis, a);
        const double cb = points_(axis, b);
        if (ca != cb) return ca < cb;
        return a < b;
    });

    Node node;
    node.point = idx[static_cast<size_t>(mid)];
    node.axis = axis;
    const int self = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    nodes_[static_cast<size_t>(self)].left = build(idx, lo, mid);
    nodes_[static_cast<size_t>(self)].right = build(idx, mid + 1, hi);
    return self;
}

void KdTree3::search(int node, const Eigen::Vector3d& query, NearestHit& best) const {
    if (node < 0) return;
    const Node& nd = nodes_[static_cast<size_t>(node)];
    const double d = sq_dist(query, points_.col(nd.point));
    if (better(d, nd.point, best)) best = {nd.point, d};

    const double diff = query(nd.axis) - points_(nd.axis, nd.point);
    const int near = diff < 0.0 ? nd.left : nd.right;
    const int far = diff < 0.0 ? nd.right : nd.left;
    search(near, query, best);
    // <= keeps equal-distance candidates reachable so the lowest index wins
    if (diff * diff <= best.sq_dist) search(far, query, best);
}

NearestHit KdTree3::nearest(const Eigen::Vector3d& query) const {
    NearestHit best{-1, std::numeric_limits<double>::infinity()};
    search(root_, query, best);
    return best;
}

NearestHit nearest_neighbor_linear(const Eigen::Vector3d& query, const Eigen::Matrix3Xd& targets) {
    if (targets.cols() == 0) throw std::invalid_argument("nearest_neighbor: empty target set");
    NearestHit best{-1, std::numeric_limits<double>::infinity()};
    for (Eigen::Index i = 0; i < targets.cols(); ++i) {
        const double d = sq_dist(query, targets.col(i));
        if (d < best.sq_dist) best = {static_cast<int>(i), d};
    }
    return best;
}

NearestHit nearest_neighbor(const Eigen::Vector3d& query, const PointCloud& targets) {
    if (targets.size() == 0) throw std::invalid_argument("nearest_neighbor: empty target set");
    KdTree3 tree(targets.coords);
    return tree.nearest(query);
}

namespace {

// One direction of the symmetric metric. When `colors` is set, the residual
// is the color difference at the geometric nearest neighbor instead of the
// coordinate distance itself.
double directional_mean(const PointCloud& from, const PointCloud& to, const KdTree3& to_tree,
                        bool colors) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < from.size(); ++i) {
        const NearestHit hit = to_tree.nearest(from.coords.col(i));
        if (colors)
            sum += (from.colors.col(i) - to.colors.col(hit.index)).squaredNorm();
        else
            sum += hit.sq_dist;
    }
    return sum / static_cast<double>(from.size());
}

double symmetric_mean(const PointCloud& org, const PointCloud& dec, bool colors) {
    if (org.size() == 0 || dec.size() == 0)
        throw std::invalid_argument("smse: empty cloud");
    const KdTree3 dec_tree(dec.coords);
    const KdTree3 org_tree(org.coords);
    const double fwd = directional_mean(org, dec, dec_tree, colors);
    const double bwd = directional_mean(dec, org, org_tree, colors);
    return 0.5 * (fwd + bwd);
}

}  // namespace

double smse_coords(const PointCloud& org, const PointCloud& dec) {
    return symmetric_mean(org, dec, /*colors=*/false);
}

double smse_colors(const PointCloud& org, const PointCloud& dec) {
    return symmetric_mean(org, dec, /*colors=*/true);
}

double to_db(double linear) {
    if (!(linear > 0.0)) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(linear);
}

QualityReport score_clouds(const PointCloud& org, const PointCloud& dec) {
    QualityReport report;
    report.smse_xyz = smse_coords(org, dec);
    report.smse_yuv = smse_colors(org, dec);
    report.smse_xyz_db = to_db(report.smse_xyz);
    report.smse_yuv_db = to_db(report.smse_yuv);
    report.n_org = org.size();
    report.n_dec = dec.size();
    return report;
}

}  // namespace pointcast
