#pragma once

#include "aeroarm/spatial.hpp"

namespace aeroarm {

/// One-sided penalty wall. The plane passes through `point`; `normal` is
/// unit length and points out of the wall into free space, so penetration
/// depth is normal . (point - tip).
struct ContactParams {
    double k_w = 2.0e4;  // N/m
    double d_w = 50.0;   // N·s/m
    Vec3 normal{-1.0, 0.0, 0.0};
    Vec3 point{1.4, 0.0, 1.0};
};

struct ContactState {
    double depth;  // m, > 0 while penetrating
    double rate;   // m/s, > 0 while compressing
    bool active;
};

ContactState contact_state(const ContactParams& wall, const Vec3& tip_pos,
                           const Vec3& tip_vel);

/// Penalty force (k_w*depth + d_w*max(0, rate)) * normal while penetrating,
/// zero otherwise. The rate clamp keeps the wall from pulling during
/// separation, so the force never becomes adhesive.
Vec3 contact_force(const ContactParams& wall, const Vec3& tip_pos, const Vec3& tip_vel);

}  // namespace aeroarm
