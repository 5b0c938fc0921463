#include "aeroarm/contact.hpp"

#include <algorithm>

namespace aeroarm {

ContactState contact_state(const ContactParams& wall, const Vec3& tip_pos,
                           const Vec3& tip_vel) {
    ContactState cs;
    cs.depth = wall.normal.dot(wall.point - tip_pos);
    cs.rate = -wall.normal.dot(tip_vel);
    cs.active = cs.depth > 0.0;
    return cs;
}

Vec3 contact_force(const ContactParams& wall, const Vec3& tip_pos, const Vec3& tip_vel) {
    const ContactState cs = contact_state(wall, tip_pos, tip_vel);
    if (!cs.active) return Vec3::Zero();
    const double magnitude = wall.k_w * cs.depth + wall.d_w * std::max(0.0, cs.rate);
    return magnitude * wall.normal;
}

}  // namespace aeroarm
