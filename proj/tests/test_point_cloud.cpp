#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <set>

#include "helpers.hpp"
#include "pointcast/cloud_io.hpp"
#include "pointcast/errors.hpp"
#include "pointcast/partition.hpp"
#include "pointcast/point_cloud.hpp"

using namespace pointcast;

TEST_CASE("validate_cloud rejects invariant violations") {
    PointCloud ok = testutil::random_cloud(4, 1);
    CHECK_NOTHROW(validate_cloud(ok));

    PointCloud bad = ok;
    bad.colors = bad.colors.leftCols(3).eval();
    CHECK_THROWS_AS(validate_cloud(bad), std::invalid_argument);

    bad = ok;
    bad.coords(1, 2) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate_cloud(bad), std::invalid_argument);

    bad = ok;
    bad.colors(0, 0) = 1.5;
    CHECK_THROWS_AS(validate_cloud(bad), std::invalid_argument);
}

TEST_CASE("BT.601 hand values: black and white") {
    Eigen::Matrix3Xd rgb(3, 2);
    rgb.col(0) << 0, 0, 0;
    rgb.col(1) << 1, 1, 1;
    const Eigen::Matrix3Xd yuv = rgb_to_yuv(rgb);
    CHECK(yuv(0, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(yuv(1, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(yuv(2, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(yuv(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(yuv(1, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(yuv(2, 1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("RGB <-> YUV round trip within 1e-9 for 1000 random colors") {
    rng::Stream stream(42);
    Eigen::Matrix3Xd rgb(3, 1000);
    for (int i = 0; i < 1000; ++i)
        for (int k = 0; k < 3; ++k) rgb(k, i) = stream.next_uniform();
    const Eigen::Matrix3Xd back = yuv_to_rgb(rgb_to_yuv(rgb));
    CHECK((back - rgb).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("yuv_to_rgb clamps out-of-gamut input") {
    Eigen::Matrix3Xd yuv(3, 1);
    yuv.col(0) << 0.1, 0.0, 1.0;  // saturated chroma, far outside RGB gamut
    const Eigen::Matrix3Xd rgb = yuv_to_rgb(yuv);
    CHECK(rgb.maxCoeff() <= 1.0);
    CHECK(rgb.minCoeff() >= 0.0);
}

TEST_CASE("1-vertex PLY with full-scale white normalizes to unit color") {
    const char* path = "tmp_one_vertex.ply";
    testutil::write_file(path,
                         "ply\nformat ascii 1.0\nelement vertex 1\n"
                         "property float x\nproperty float y\nproperty float z\n"
                         "property uchar red\nproperty uchar green\nproperty uchar blue\n"
                         "end_header\n0 0 0 255 255 255\n");
    const PointCloud cloud = load_cloud(path, CloudFormat::ply_ascii);
    REQUIRE(cloud.size() == 1);
    CHECK(cloud.coords.col(0).norm() == 0.0);
    // white in the YUV working space
    CHECK(cloud.colors(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cloud.colors(1, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cloud.colors(2, 0) == doctest::Approx(0.5).epsilon(1e-12));
    const Eigen::Matrix3Xd rgb = yuv_to_rgb(cloud.colors);
    CHECK((rgb.col(0) - Eigen::Vector3d::Ones()).cwiseAbs().maxCoeff() < 1e-9);
    std::remove(path);
}

TEST_CASE("3-row CSV keeps coordinates and point order") {
    const char* path = "tmp_three.csv";
    testutil::write_file(path, "x,y,z,r,g,b\n0,0,0,0,0,0\n1,0,0,0,0,0\n2,0,0,0,0,0\n");
    const PointCloud cloud = load_cloud(path, CloudFormat::csv);
    REQUIRE(cloud.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(cloud.coords(0, i) == doctest::Approx(double(i)).epsilon(1e-15));
        CHECK(cloud.coords(1, i) == 0.0);
    }
    std::remove(path);
}

TEST_CASE("PLY parse failures") {
    const char* path = "tmp_bad.ply";
    SUBCASE("nan row is a non-finite-value error") {
        testutil::write_file(path,
                             "ply\nformat ascii 1.0\nelement vertex 1\n"
                             "property float x\nproperty float y\nproperty float z\n"
                             "property uchar red\nproperty uchar green\nproperty uchar blue\n"
                             "end_header\n0 nan 0 1 2 3\n");
        CHECK_THROWS_AS(load_cloud(path, CloudFormat::ply_ascii), ParseError);
    }
    SUBCASE("missing color properties") {
        testutil::write_file(path,
                             "ply\nformat ascii 1.0\nelement vertex 1\n"
                             "property float x\nproperty float y\nproperty float z\n"
                             "end_header\n0 0 0\n");
        CHECK_THROWS_AS(load_cloud(path, CloudFormat::ply_ascii), ParseError);
    }
    SUBCASE("malformed row") {
        testutil::write_file(path,
                             "ply\nformat ascii 1.0\nelement vertex 1\n"
                             "property float x\nproperty float y\nproperty float z\n"
                             "property uchar red\nproperty uchar green\nproperty uchar blue\n"
                             "end_header\n0 0 0 1 2\n");
        CHECK_THROWS_AS(load_cloud(path, CloudFormat::ply_ascii), ParseError);
    }
    SUBCASE("binary format rejected") {
        testutil::write_file(path, "ply\nformat binary_little_endian 1.0\nend_header\n");
        CHECK_THROWS_AS(load_cloud(path, CloudFormat::ply_ascii), ParseError);
    }
    SUBCASE("truncated vertex rows") {
        testutil::write_file(path,
                             "ply\nformat ascii 1.0\nelement vertex 2\n"
                             "property float x\nproperty float y\nproperty float z\n"
                             "property uchar red\nproperty uchar green\nproperty uchar blue\n"
                             "end_header\n0 0 0 1 2 3\n");
        CHECK_THROWS_AS(load_cloud(path, CloudFormat::ply_ascii), ParseError);
    }
    std::remove(path);
}

TEST_CASE("PLY skips unknown scalar properties and trailing elements") {
    const char* path = "tmp_extra.ply";
    testutil::write_file(path,
                         "ply\nformat ascii 1.0\ncomment scanner output\nelement vertex 2\n"
                         "property float x\nproperty float y\nproperty float z\n"
                         "property uchar red\nproperty uchar green\nproperty uchar blue\n"
                         "property uchar alpha\n"
                         "element face 1\nproperty list uchar int vertex_indices\n"
                         "end_header\n"
                         "0 0 0 10 20 30 255\n"
                         "1 2 3 40 50 60 255\n"
                         "3 0 1 0\n");
    const PointCloud cloud = load_cloud(path, CloudFormat::ply_ascii);
    REQUIRE(cloud.size() == 2);
    CHECK(cloud.coords(2, 1) == doctest::Approx(3.0));
    std::remove(path);
}

TEST_CASE("load/write round trip within 1e-6 for all three formats") {
    struct Case {
        CloudFormat format;
        const char* path;
        bool grid_colors;  // PCD's packed rgb carries 8 bits per channel
    };
    const Case cases[] = {{CloudFormat::ply_ascii, "tmp_rt.ply", false},
                          {CloudFormat::csv, "tmp_rt.csv", false},
                          {CloudFormat::pcd_ascii, "tmp_rt.pcd", true}};
    for (const auto& c : cases) {
        CAPTURE(c.path);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const PointCloud cloud = testutil::random_cloud(17, seed, c.grid_colors);
            write_cloud(cloud, c.path, c.format);
            const PointCloud back = load_cloud(c.path, c.format);
            REQUIRE(back.size() == cloud.size());
            CHECK((back.coords - cloud.coords).cwiseAbs().maxCoeff() < 1e-6);
            CHECK((back.colors - cloud.colors).cwiseAbs().maxCoeff() < 1e-6);
        }
        std::remove(c.path);
    }
}

TEST_CASE("writer output is byte-reproducible") {
    const PointCloud cloud = testutil::random_cloud(9, 7);
    write_cloud(cloud, "tmp_rep_a.ply", CloudFormat::ply_ascii);
    write_cloud(cloud, "tmp_rep_b.ply", CloudFormat::ply_ascii);
    CHECK(testutil::read_file("tmp_rep_a.ply") == testutil::read_file("tmp_rep_b.ply"));
    std::remove("tmp_rep_a.ply");
    std::remove("tmp_rep_b.ply");
}

TEST_CASE("write errors and single-vertex output") {
    const PointCloud cloud = testutil::random_cloud(1, 3);
    CHECK_THROWS_AS(write_cloud(cloud, "", CloudFormat::csv), IoError);
    CHECK_THROWS_AS(write_cloud(cloud, "no_such_dir/x.ply", CloudFormat::ply_ascii), IoError);

    write_cloud(cloud, "tmp_single.ply", CloudFormat::ply_ascii);
    const std::string text = testutil::read_file("tmp_single.ply");
    // exactly one vertex row after end_header
    const auto pos = text.find("end_header\n");
    REQUIRE(pos != std::string::npos);
    const std::string body = text.substr(pos + 11);
    CHECK(std::count(body.begin(), body.end(), '\n') == 1);
    std::remove("tmp_single.ply");
}

TEST_CASE("PCD packed rgb variants decode to the right color") {
    const char* path = "tmp_pack.pcd";
    testutil::write_file(path,
                         "# .PCD v0.7 - Point Cloud Data file format\nVERSION 0.7\n"
                         "FIELDS x y z rgb\nSIZE 4 4 4 4\nTYPE F F F U\nCOUNT 1 1 1 1\n"
                         "WIDTH 1\nHEIGHT 1\nVIEWPOINT 0 0 0 1 0 0 0\nPOINTS 1\nDATA ascii\n"
                         "1 2 3 16711680\n");  // 0xFF0000 = pure red
    const PointCloud cloud = load_cloud(path, CloudFormat::pcd_ascii);
    REQUIRE(cloud.size() == 1);
    const Eigen::Matrix3Xd rgb = yuv_to_rgb(cloud.colors);
    CHECK(rgb(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rgb(1, 0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(rgb(2, 0) == doctest::Approx(0.0).epsilon(1e-9));
    std::remove(path);
}

TEST_CASE("partition: no split needed") {
    const PointCloud cloud = testutil::random_cloud(5, 11);
    const auto blocks = partition_blocks(cloud, 10);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].indices == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("partition: collinear median split") {
    PointCloud cloud;
    cloud.coords.resize(3, 4);
    cloud.coords << 0, 1, 2, 3, 0, 0, 0, 0, 0, 0, 0, 0;
    cloud.colors = Eigen::Matrix3Xd::Constant(3, 4, 0.5);
    const auto blocks = partition_blocks(cloud, 2);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].indices == std::vector<int>{0, 1});
    CHECK(blocks[1].indices == std::vector<int>{2, 3});
    CHECK(blocks[1].cloud.coords(0, 0) == doctest::Approx(2.0));
}

TEST_CASE("partition is a deterministic disjoint cover respecting max_block") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const int n = 40 + static_cast<int>(seed) * 13;
        const PointCloud cloud = testutil::random_cloud(n, seed + 100);
        const int max_block = 7;
        const auto blocks = partition_blocks(cloud, max_block);
        std::set<int> seen;
        for (const auto& b : blocks) {
            CHECK(static_cast<int>(b.indices.size()) <= max_block);
            CHECK(!b.indices.empty());
            for (int idx : b.indices) {
                CHECK(idx >= 0);
                CHECK(idx < n);
                CHECK(seen.insert(idx).second);  // disjoint
            }
        }
        CHECK(static_cast<int>(seen.size()) == n);  // cover

        const auto again = partition_blocks(cloud, max_block);
        REQUIRE(again.size() == blocks.size());
        for (size_t b = 0; b < blocks.size(); ++b) CHECK(again[b].indices == blocks[b].indices);
    }
}

TEST_CASE("partition: coincident points still split and terminate") {
    PointCloud cloud;
    cloud.coords = Eigen::Matrix3Xd::Zero(3, 9);
    cloud.colors = Eigen::Matrix3Xd::Constant(3, 9, 0.25);
    const auto blocks = partition_blocks(cloud, 4);
    size_t total = 0;
    for (const auto& b : blocks) {
        CHECK(b.indices.size() <= 4);
        total += b.indices.size();
    }
    CHECK(total == 9);
}

TEST_CASE("partition rejects max_block < 2") {
    const PointCloud cloud = testutil::random_cloud(3, 1);
    CHECK_THROWS_AS(partition_blocks(cloud, 1), std::invalid_argument);
}

TEST_CASE("reassemble inverts partition") {
    const PointCloud cloud = testutil::random_cloud(33, 5);
    const auto blocks = partition_blocks(cloud, 8);
    std::vector<PointCloud> decoded;
    for (const auto& b : blocks) decoded.push_back(b.cloud);
    const PointCloud back = reassemble_blocks(blocks, decoded, cloud.size());
    CHECK((back.coords - cloud.coords).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.colors - cloud.colors).cwiseAbs().maxCoeff() == 0.0);
}
