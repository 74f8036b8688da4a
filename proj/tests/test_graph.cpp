#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "helpers.hpp"
#include "pointcast/errors.hpp"
#include "pointcast/graph.hpp"

using namespace pointcast;

namespace {

PointCloud collinear_three() {
    PointCloud cloud;
    cloud.coords.resize(3, 3);
    cloud.coords << 0, 1, 2, 0, 0, 0, 0, 0, 0;
    cloud.colors = Eigen::Matrix3Xd::Constant(3, 3, 0.5);
    return cloud;
}

}  // namespace

TEST_CASE("kappa: population variance and stddev of pairwise distances") {
    // distances {1, 1, 2}: mean 4/3, population variance 2/9
    const PointCloud cloud = collinear_three();
    CHECK(compute_kappa(cloud, KappaMode::variance) == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
    CHECK(compute_kappa(cloud, KappaMode::stddev) ==
          doctest::Approx(std::sqrt(2.0 / 9.0)).epsilon(1e-12));
}

TEST_CASE("kappa: coincident-only points are degenerate") {
    PointCloud cloud;
    cloud.coords = Eigen::Matrix3Xd::Zero(3, 2);
    cloud.colors = Eigen::Matrix3Xd::Constant(3, 2, 0.5);
    CHECK_THROWS_AS(compute_kappa(cloud, KappaMode::variance), DegenerateKernelError);
    CHECK_THROWS_AS(compute_kappa(cloud, KappaMode::stddev), DegenerateKernelError);
}

TEST_CASE("kappa: equal pairwise distances fall back to the distance scale") {
    // two distinct points -> one distance, central variance 0; the bandwidth
    // comes from the mean distance so the kernel stays well defined
    PointCloud cloud;
    cloud.coords.resize(3, 2);
    cloud.coords << 0, 3, 0, 0, 0, 0;
    cloud.colors = Eigen::Matrix3Xd::Constant(3, 2, 0.5);
    CHECK(compute_kappa(cloud, KappaMode::variance) == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(compute_kappa(cloud, KappaMode::stddev) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("gaussian adjacency hand case: unit distance, unit kappa") {
    Eigen::Matrix3Xd coords(3, 2);
    coords << 0, 1, 0, 0, 0, 0;
    const Eigen::MatrixXd w = gaussian_adjacency(coords, 1.0);
    CHECK(w(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(w(0, 1) == doctest::Approx(0.36788).epsilon(1e-4));
    CHECK(w(0, 0) == 0.0);
    CHECK(w(1, 1) == 0.0);
}

TEST_CASE("coincident points with distinct indices get unit weight") {
    Eigen::Matrix3Xd coords(3, 3);
    coords << 0, 0, 1, 0, 0, 0, 0, 0, 0;
    const Eigen::MatrixXd w = gaussian_adjacency(coords, 0.5);
    CHECK(w(0, 1) == 1.0);
}

TEST_CASE("bilateral kernel reduces to gaussian for flat colors") {
    PointCloud cloud = testutil::random_cloud(12, 3);
    cloud.colors = Eigen::Matrix3Xd::Constant(3, 12, 0.7);
    KernelConfig gaussian{KernelKind::gaussian, KappaMode::variance, KappaMode::variance};
    KernelConfig bilateral{KernelKind::bilateral, KappaMode::variance, KappaMode::variance};
    const Eigen::MatrixXd wg = build_adjacency(cloud, gaussian);
    const Eigen::MatrixXd wb = build_adjacency(cloud, bilateral);
    CHECK((wg - wb).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("bilateral kernel converges to gaussian as kappa_c grows") {
    const PointCloud cloud = testutil::random_cloud(10, 4);
    const double kp = compute_kappa(cloud, KappaMode::variance);
    const Eigen::MatrixXd wg = gaussian_adjacency(cloud.coords, kp);
    const Eigen::MatrixXd wb = bilateral_adjacency(cloud.coords, cloud.colors, kp, 1e15);
    CHECK((wg - wb).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("adjacency invariants on random clouds") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const int n = 2 + static_cast<int>(seed % 63);
        const PointCloud cloud = testutil::random_cloud(n, seed + 1);
        const KernelConfig kernel{seed % 2 == 0 ? KernelKind::gaussian : KernelKind::bilateral,
                                  seed % 3 == 0 ? KappaMode::stddev : KappaMode::variance,
                                  KappaMode::variance};
        const Eigen::MatrixXd w = build_adjacency(cloud, kernel);
        CHECK((w - w.transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(w.minCoeff() >= 0.0);
        CHECK(w.maxCoeff() <= 1.0);
        CHECK(w.diagonal().cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("two-node regular Laplacian hand case") {
    const double w = std::exp(-1.0);
    Eigen::MatrixXd adj(2, 2);
    adj << 0, w, w, 0;
    const GraphSpec spec = build_laplacian(adj, LaplacianKind::regular);
    CHECK(spec.laplacian(0, 0) == doctest::Approx(w).epsilon(1e-15));
    CHECK(spec.laplacian(0, 1) == doctest::Approx(-w).epsilon(1e-15));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(spec.laplacian);
    CHECK(es.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(es.eigenvalues()(1) == doctest::Approx(2.0 * w).epsilon(1e-12));
}

TEST_CASE("two-node transition Laplacian hand case") {
    const double w = std::exp(-1.0);
    Eigen::MatrixXd adj(2, 2);
    adj << 0, w, w, 0;
    const GraphSpec spec = build_laplacian(adj, LaplacianKind::transition);
    CHECK(spec.laplacian(0, 0) == doctest::Approx(0.0));
    CHECK(spec.laplacian(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(spec.laplacian(1, 0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Laplacian spectral suite on random graphs") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const int n = 3 + static_cast<int>(seed % 30);
        const PointCloud cloud = testutil::random_cloud(n, seed + 500);
        const KernelConfig kernel{};
        const Eigen::MatrixXd w = build_adjacency(cloud, kernel);

        const GraphSpec regular = build_laplacian(w, LaplacianKind::regular);
        CHECK((regular.laplacian - regular.laplacian.transpose()).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((regular.laplacian * Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff() < 1e-9);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_reg(regular.laplacian);
        CHECK(es_reg.eigenvalues().minCoeff() > -1e-10);

        const GraphSpec normalized = build_laplacian(w, LaplacianKind::normalized);
        CHECK((normalized.laplacian - normalized.laplacian.transpose()).cwiseAbs().maxCoeff() ==
              0.0);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_norm(normalized.laplacian);
        CHECK(es_norm.eigenvalues().minCoeff() > -1e-10);
        CHECK(es_norm.eigenvalues().maxCoeff() < 2.0 + 1e-10);

        const GraphSpec transition = build_laplacian(w, LaplacianKind::transition);
        CHECK((transition.laplacian.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-9);

        const GraphSpec random_walk = build_laplacian(w, LaplacianKind::random_walk);
        CHECK(random_walk.laplacian.rowwise().sum().cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("regular and random-walk Laplacians share null-space dimension when connected") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const int n = 4 + static_cast<int>(seed * 3);
        const PointCloud cloud = testutil::random_cloud(n, seed + 900);
        const Eigen::MatrixXd w = build_adjacency(cloud, KernelConfig{});

        const GraphSpec regular = build_laplacian(w, LaplacianKind::regular);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(regular.laplacian);
        const double reg_scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        const int reg_null = static_cast<int>(
            (es.eigenvalues().cwiseAbs().array() < 1e-9 * reg_scale).count());

        const GraphSpec random_walk = build_laplacian(w, LaplacianKind::random_walk);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(random_walk.laplacian);
        const double rw_scale = std::max(1.0, svd.singularValues().maxCoeff());
        const int rw_null =
            static_cast<int>((svd.singularValues().array() < 1e-9 * rw_scale).count());

        CHECK(reg_null == 1);  // fully connected gaussian-kernel graph
        CHECK(rw_null == reg_null);
    }
}

TEST_CASE("degree-inverting kinds reject isolated vertices") {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
    w(0, 1) = w(1, 0) = 0.5;  // vertex 2 isolated
    CHECK_NOTHROW(build_laplacian(w, LaplacianKind::regular));
    CHECK_THROWS_AS(build_laplacian(w, LaplacianKind::normalized), SingularDegreeError);
    CHECK_THROWS_AS(build_laplacian(w, LaplacianKind::transition), SingularDegreeError);
    CHECK_THROWS_AS(build_laplacian(w, LaplacianKind::random_walk), SingularDegreeError);
}

TEST_CASE("degenerate kernel propagates through build_adjacency") {
    PointCloud cloud;
    cloud.coords = Eigen::Matrix3Xd::Zero(3, 4);
    cloud.colors = Eigen::Matrix3Xd::Constant(3, 4, 0.5);
    CHECK_THROWS_AS(build_adjacency(cloud, KernelConfig{}), DegenerateKernelError);
}

TEST_CASE("enum string round trips") {
    CHECK(laplacian_from_string("random_walk") == LaplacianKind::random_walk);
    CHECK(kappa_mode_from_string("std") == KappaMode::stddev);
    CHECK(kernel_from_string("bilateral") == KernelKind::bilateral);
    CHECK_THROWS_AS(laplacian_from_string("nope"), std::invalid_argument);
    CHECK(std::string(to_string(LaplacianKind::normalized)) == "normalized");
}
