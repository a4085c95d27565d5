#pragma once

#include <cstddef>

namespace risec {

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

double link_distance(const Point3& a, const Point3& b);

/// Rectangular reflecting array on the x = 0 plane. Element (m_z, m_y) with
/// 1-based indices sits at {0, m_y * d_ye, m_z * d_ze}.
struct RisArray {
    int n_z = 1;
    int n_y = 1;
    double d_ze = 0.0625;
    double d_ye = 0.0625;

    int total() const { return n_z * n_y; }
};

Point3 element_position(const RisArray& ris, int m_z, int m_y);

/// Mean of the element positions; coincides with the middle element for odd
/// counts. All scalar path lengths and angles are referred to this point.
Point3 array_center(const RisArray& ris);

/// Transmitting device, receiving device, base station and the interfering
/// cellular transmitter, all on the z = 0 plane with x >= 0.
struct NetworkLayout {
    RisArray ris;
    Point3 d_tx;
    Point3 d_rx;
    Point3 bs;
    Point3 u_tx;
};

/// Throws std::invalid_argument when a node is off the ground plane, behind
/// the array plane, or the array description is degenerate.
void check_layout(const NetworkLayout& layout);

struct PathGeometry {
    double d_dt_ris = 0.0;  // device transmitter to array
    double d_ris_dr = 0.0;  // array to device receiver
    double d_ris_bs = 0.0;  // array to base station
    double dd_total = 0.0;  // d_dt_ris + d_ris_dr
    double dc1_total = 0.0; // d_dt_ris + d_ris_bs
    double dc2_total = 0.0; // d_ris_bs + d_ris_dr
    double d_direct = 0.0;  // transmitter to receiver, ground plane
    double d_ut_dr = 0.0;   // interferer to device receiver
    double d_ut_bs = 0.0;   // interferer to base station
};

PathGeometry path_geometry(const NetworkLayout& layout);
PathGeometry path_geometry(const NetworkLayout& layout, int ref_z, int ref_y);

struct AnglePair {
    double elevation = 0.0; // from the +x boresight, [0, pi]
    double azimuth = 0.0;   // of the y-z projection, from +y
};

/// Angles of the line from `ref` toward `node`; throws on zero separation.
AnglePair arrival_angles(const Point3& node, const Point3& ref);

} // namespace risec
