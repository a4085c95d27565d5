#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <numbers>

#include "risec/geometry.hpp"

using namespace risec;

namespace {

constexpr double pi = std::numbers::pi;

NetworkLayout flat_layout() {
    NetworkLayout l;
    l.ris = RisArray{2, 5, 0.0625, 0.0625};
    l.d_tx = {5.0, 2.0, 0.0};
    l.d_rx = {5.0, -2.0, 0.0};
    l.bs = {24.0, 7.0, 0.0};
    l.u_tx = {150.0, -120.0, 0.0};
    return l;
}

} // namespace

TEST_CASE("element positions follow the one-based grid") {
    const RisArray ris{4, 4, 0.05, 0.05};
    const Point3 p11 = element_position(ris, 1, 1);
    CHECK(p11.x == 0.0);
    CHECK(p11.y == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(p11.z == doctest::Approx(0.05).epsilon(1e-15));

    const Point3 p23 = element_position(ris, 2, 3);
    CHECK(p23.x == 0.0);
    CHECK(p23.y == doctest::Approx(0.15).epsilon(1e-15));
    CHECK(p23.z == doctest::Approx(0.10).epsilon(1e-15));

    CHECK_THROWS(element_position(ris, 0, 1));
    CHECK_THROWS(element_position(ris, 1, 0));
    CHECK_THROWS(element_position(ris, 5, 1));
    CHECK_THROWS(element_position(ris, 1, 5));
}

TEST_CASE("element grid stays inside its bounding box and reaches the far corner") {
    const RisArray ris{3, 7, 0.04, 0.03};
    double max_y = 0.0, max_z = 0.0;
    for (int mz = 1; mz <= ris.n_z; ++mz) {
        for (int my = 1; my <= ris.n_y; ++my) {
            const Point3 p = element_position(ris, mz, my);
            REQUIRE(p.y >= 0.0);
            REQUIRE(p.z >= 0.0);
            REQUIRE(p.y <= ris.n_y * ris.d_ye + 1e-15);
            REQUIRE(p.z <= ris.n_z * ris.d_ze + 1e-15);
            max_y = std::max(max_y, p.y);
            max_z = std::max(max_z, p.z);
        }
    }
    CHECK(max_y == doctest::Approx(ris.n_y * ris.d_ye).epsilon(1e-14));
    CHECK(max_z == doctest::Approx(ris.n_z * ris.d_ze).epsilon(1e-14));
    CHECK(ris.total() == 21);
}

TEST_CASE("array center is the mean element position") {
    const RisArray ris{3, 5, 0.1, 0.2};
    Point3 mean{0.0, 0.0, 0.0};
    for (int mz = 1; mz <= ris.n_z; ++mz) {
        for (int my = 1; my <= ris.n_y; ++my) {
            const Point3 p = element_position(ris, mz, my);
            mean.y += p.y;
            mean.z += p.z;
        }
    }
    mean.y /= ris.total();
    mean.z /= ris.total();
    const Point3 c = array_center(ris);
    CHECK(c.x == 0.0);
    CHECK(c.y == doctest::Approx(mean.y).epsilon(1e-14));
    CHECK(c.z == doctest::Approx(mean.z).epsilon(1e-14));
}

TEST_CASE("link distance matches hand values") {
    CHECK(link_distance({3.0, 4.0, 0.0}, {0.0, 0.0, 0.0}) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(link_distance({1.5, -2.0, 0.7}, {1.5, -2.0, 0.7}) == 0.0);
    CHECK(link_distance({1.0, 2.0, 0.0}, {0.0, 2.0, 2.0}) ==
          doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("path lengths add the two legs through the array") {
    // Zero element spacing puts the whole (single-element) array at the
    // origin, so both legs are 3-4-5 triangles with scalar length 5.
    NetworkLayout l;
    l.ris = RisArray{1, 1, 0.0, 0.0};
    l.d_tx = {3.0, 4.0, 0.0};
    l.d_rx = {4.0, 3.0, 0.0};
    l.bs = {12.0, 5.0, 0.0};
    l.u_tx = {8.0, -6.0, 0.0};
    const PathGeometry g = path_geometry(l);
    CHECK(g.d_dt_ris == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(g.d_ris_dr == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(g.dd_total == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(g.d_ris_bs == doctest::Approx(13.0).epsilon(1e-15));
    CHECK(g.dc1_total == doctest::Approx(18.0).epsilon(1e-15));
    CHECK(g.dc2_total == doctest::Approx(g.d_ris_bs + g.d_ris_dr).epsilon(1e-15));
    CHECK(g.d_ut_bs == doctest::Approx(std::sqrt(16.0 + 121.0)).epsilon(1e-14));
}

TEST_CASE("mirror-symmetric transmitter and base station share the leg length") {
    NetworkLayout l = flat_layout();
    l.d_tx = {9.0, 6.0, 0.0};
    l.bs = {9.0, -6.0 + 2.0 * array_center(l.ris).y, 0.0};
    // bs is the mirror image of d_tx in the horizontal line through the
    // array center, so both sit at the same scalar distance from it.
    const PathGeometry g = path_geometry(l);
    CHECK(g.d_dt_ris == doctest::Approx(g.d_ris_bs).epsilon(1e-14));
}

TEST_CASE("two-hop distances recompute from their parts") {
    const NetworkLayout l = flat_layout();
    const PathGeometry g = path_geometry(l);
    CHECK(g.dd_total == doctest::Approx(g.d_dt_ris + g.d_ris_dr).epsilon(1e-15));
    CHECK(g.dc1_total == doctest::Approx(g.d_dt_ris + g.d_ris_bs).epsilon(1e-15));
    CHECK(g.dc2_total == doctest::Approx(g.d_ris_bs + g.d_ris_dr).epsilon(1e-15));
}

TEST_CASE("element-referred geometry uses the requested element") {
    const NetworkLayout l = flat_layout();
    const PathGeometry g = path_geometry(l, 2, 5);
    const Point3 ref = element_position(l.ris, 2, 5);
    CHECK(g.d_dt_ris == doctest::Approx(link_distance(l.d_tx, ref)).epsilon(1e-15));
    CHECK(g.d_ris_bs == doctest::Approx(link_distance(l.bs, ref)).epsilon(1e-15));
}

TEST_CASE("reflected path is never shorter than the straight line") {
    const NetworkLayout l = flat_layout();
    const PathGeometry g = path_geometry(l);
    CHECK(g.dd_total >= link_distance(l.d_tx, l.d_rx));
    CHECK(g.dd_total >= g.d_direct);
}

TEST_CASE("geometry is invariant under the half-turn about the boresight axis") {
    // A half-turn about the x-axis maps (x, y, 0) to (x, -y, 0), keeping the
    // nodes on the ground plane; negating the element spacings re-indexes the
    // array onto its own image. Every scalar distance must survive exactly.
    const NetworkLayout l = flat_layout();
    NetworkLayout r = l;
    r.ris.d_ye = -l.ris.d_ye;
    r.ris.d_ze = -l.ris.d_ze;
    for (Point3* p : {&r.d_tx, &r.d_rx, &r.bs, &r.u_tx}) p->y = -p->y;
    const PathGeometry a = path_geometry(l);
    const PathGeometry b = path_geometry(r);
    CHECK(a.d_dt_ris == b.d_dt_ris);
    CHECK(a.d_ris_dr == b.d_ris_dr);
    CHECK(a.d_ris_bs == b.d_ris_bs);
    CHECK(a.dd_total == b.dd_total);
    CHECK(a.dc1_total == b.dc1_total);
    CHECK(a.dc2_total == b.dc2_total);
    CHECK(a.d_direct == b.d_direct);
    CHECK(a.d_ut_dr == b.d_ut_dr);
    CHECK(a.d_ut_bs == b.d_ut_bs);
}

TEST_CASE("geometry is invariant under rotation about the axis through the array center") {
    // Rotating every node about the boresight line through the array center
    // preserves all center-referred and node-to-node distances. The direct
    // device-device distance is defined on the ground plane and is checked
    // against the rotated pair's own projection instead.
    const NetworkLayout l = flat_layout();
    const Point3 c = array_center(l.ris);
    const double theta = 0.7;
    auto rotate = [&](const Point3& p) {
        const double y = p.y - c.y;
        const double z = p.z - c.z;
        return Point3{p.x, c.y + y * std::cos(theta) - z * std::sin(theta),
                      c.z + y * std::sin(theta) + z * std::cos(theta)};
    };
    NetworkLayout r = l;
    r.d_tx = rotate(l.d_tx);
    r.d_rx = rotate(l.d_rx);
    r.bs = rotate(l.bs);
    r.u_tx = rotate(l.u_tx);
    const PathGeometry a = path_geometry(l);
    const PathGeometry b = path_geometry(r);
    CHECK(b.d_dt_ris == doctest::Approx(a.d_dt_ris).epsilon(1e-13));
    CHECK(b.d_ris_dr == doctest::Approx(a.d_ris_dr).epsilon(1e-13));
    CHECK(b.d_ris_bs == doctest::Approx(a.d_ris_bs).epsilon(1e-13));
    CHECK(b.d_ut_dr == doctest::Approx(a.d_ut_dr).epsilon(1e-13));
    CHECK(b.d_ut_bs == doctest::Approx(a.d_ut_bs).epsilon(1e-13));
}

TEST_CASE("arrival angles follow the boresight convention") {
    const Point3 origin{0.0, 0.0, 0.0};

    AnglePair a = arrival_angles({2.0, 0.0, 0.0}, origin);
    CHECK(a.elevation == doctest::Approx(0.0).epsilon(1e-15));

    AnglePair grazing = arrival_angles({0.0, 3.0, 1.0}, origin);
    CHECK(grazing.elevation == doctest::Approx(pi / 2.0).epsilon(1e-15));

    AnglePair diag = arrival_angles({1.0, 1.0, 0.0}, origin);
    CHECK(diag.elevation == doctest::Approx(pi / 4.0).epsilon(1e-14));
    CHECK(diag.azimuth == doctest::Approx(0.0).epsilon(1e-15));

    AnglePair up = arrival_angles({1.0, 0.0, 1.0}, origin);
    CHECK(up.azimuth == doctest::Approx(pi / 2.0).epsilon(1e-14));

    CHECK_THROWS(arrival_angles(origin, origin));
}

TEST_CASE("layout validation rejects off-plane and behind-array nodes") {
    CHECK_NOTHROW(check_layout(flat_layout()));

    NetworkLayout bad = flat_layout();
    bad.d_tx.z = 0.5;
    CHECK_THROWS(check_layout(bad));

    bad = flat_layout();
    bad.bs.x = -1.0;
    CHECK_THROWS(check_layout(bad));

    bad = flat_layout();
    bad.ris.n_y = 0;
    CHECK_THROWS(check_layout(bad));

    bad = flat_layout();
    bad.ris.d_ze = 0.0;
    CHECK_THROWS(check_layout(bad));
}
