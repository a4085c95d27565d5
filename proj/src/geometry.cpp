#include "risec/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace risec {

double link_distance(const Point3& a, const Point3& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Point3 element_position(const RisArray& ris, int m_z, int m_y) {
    if (m_z < 1 || m_z > ris.n_z || m_y < 1 || m_y > ris.n_y)
        throw std::invalid_argument("element_position: index outside the array");
    return {0.0, static_cast<double>(m_y) * ris.d_ye, static_cast<double>(m_z) * ris.d_ze};
}

Point3 array_center(const RisArray& ris) {
    return {0.0, 0.5 * (ris.n_y + 1) * ris.d_ye, 0.5 * (ris.n_z + 1) * ris.d_ze};
}

void check_layout(const NetworkLayout& layout) {
    if (layout.ris.n_z < 1 || layout.ris.n_y < 1)
        throw std::invalid_argument("layout: element counts must be at least 1");
    if (!(layout.ris.d_ze > 0.0) || !(layout.ris.d_ye > 0.0))
        throw std::invalid_argument("layout: element spacings must be positive");
    for (const Point3* p : {&layout.d_tx, &layout.d_rx, &layout.bs, &layout.u_tx}) {
        if (p->z != 0.0)
            throw std::invalid_argument("layout: nodes must sit on the ground plane");
        if (p->x < 0.0)
            throw std::invalid_argument("layout: nodes must lie in front of the array plane");
    }
}

namespace {

PathGeometry geometry_from(const NetworkLayout& layout, const Point3& ref) {
    PathGeometry g;
    g.d_dt_ris = link_distance(layout.d_tx, ref);
    g.d_ris_dr = link_distance(layout.d_rx, ref);
    g.d_ris_bs = link_distance(layout.bs, ref);
    g.dd_total = g.d_dt_ris + g.d_ris_dr;
    g.dc1_total = g.d_dt_ris + g.d_ris_bs;
    g.dc2_total = g.d_ris_bs + g.d_ris_dr;
    const double dx = layout.d_tx.x - layout.d_rx.x;
    const double dy = layout.d_tx.y - layout.d_rx.y;
    g.d_direct = std::sqrt(dx * dx + dy * dy);
    g.d_ut_dr = link_distance(layout.u_tx, layout.d_rx);
    g.d_ut_bs = link_distance(layout.u_tx, layout.bs);
    return g;
}

} // namespace

PathGeometry path_geometry(const NetworkLayout& layout) {
    return geometry_from(layout, array_center(layout.ris));
}

PathGeometry path_geometry(const NetworkLayout& layout, int ref_z, int ref_y) {
    return geometry_from(layout, element_position(layout.ris, ref_z, ref_y));
}

AnglePair arrival_angles(const Point3& node, const Point3& ref) {
    const double vx = node.x - ref.x;
    const double vy = node.y - ref.y;
    const double vz = node.z - ref.z;
    const double norm = std::sqrt(vx * vx + vy * vy + vz * vz);
    if (norm == 0.0)
        throw std::invalid_argument("arrival_angles: node coincides with the reference point");
    AnglePair a;
    a.elevation = std::acos(vx / norm);
    a.azimuth = std::atan2(vz, vy);
    return a;
}

} // namespace risec
