#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aeroarm/absorption.hpp"
#include "aeroarm/arm_kinematics.hpp"
#include "aeroarm/contact.hpp"
#include "aeroarm/impedance.hpp"
#include "aeroarm/vehicle.hpp"

namespace aeroarm {

enum class ArmMode { rigid, compliant };

struct WallConfig {
    bool enabled = false;
    ContactParams params;
};

/// One waypoint of the platform reference. Across a segment p_d is
/// interpolated linearly and v_d holds the left knot's value; a knot
/// without an explicit v gets the slope to the next knot (last knot: 0),
/// which makes the pair consistent. Past the last knot p_d extrapolates
/// with that knot's velocity.
struct SetpointKnot {
    double t = 0.0;
    Vec3 p{0.0, 0.0, 1.0};
    Vec3 v{Vec3::Zero()};
};

/// One waypoint of the joint-angle reference; angles interpolate linearly.
struct ArmKnot {
    double t = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
};

/// Static moment of the arm assembly about the body origin. The two
/// masses are already part of the platform total, so the trim carries
/// torque only, evaluated for level attitude and held constant.
struct TrimConfig {
    bool enabled = true;
    double arm_mass = 0.1676;    // kg
    double servo_mass = 0.2318;  // kg
    Vec3 arm_com{0.18, 0.0, 0.0};
    Vec3 servo_com{0.10, 0.0, 0.0};
};

/// Full arm description: geometry, per-joint servo and absorption-unit
/// parameters, lumped tip compliance, and its mounting on the platform.
/// The arm plane (x, y) maps to the body (x, z) plane.
struct ArmConfig {
    ArmGeometry geometry;
    ServoModel servo;  // configuration part; runtime fields reset per rollout
    AbsorptionUnitParams absorption;
    LumpedArmParams lumped;
    double joint_inertia = 2.0e-3;  // kg·m², reflected at each actuated joint
    double disengage_factor = 0.0;
    Vec3 mount_offset{0.10, 0.0, 0.0};
    double theta1_init = 0.7853981633974483;   // rad
    double theta2_init = -1.5707963267948966;  // rad
    /// Feed the nominal tip acceleration into the lumped mass so joint
    /// motion shakes the platform through the tip spring.
    bool inertial_reaction = false;
};

struct Scenario {
    std::string name = "scenario";
    double dt = 1.0e-3;    // s, in (0, 0.01]
    double duration = 1.0;  // s
    std::uint64_t seed = 0;
    int log_stride = 1;
    int arm_substeps = 1;  // lumped-tip/contact substeps per platform step
    double noise_force_std = 0.0;  // N per axis, 0 disables the disturbance
    /// Replace the impedance command with pure gravity compensation from
    /// the first wall touch onward (energy-audit experiments).
    bool cut_feedback_on_contact = false;

    VehicleParams vehicle;
    ImpedanceGains gains;
    ArmMode arm_mode = ArmMode::compliant;
    ArmConfig arm;
    WallConfig wall;
    TrimConfig trim;

    std::vector<SetpointKnot> setpoints{SetpointKnot{}};
    std::vector<ArmKnot> arm_script;  // empty holds the initial angles

    bool has_initial = false;  // false: start at the first setpoint
    Vec3 initial_p{Vec3::Zero()};
    Vec3 initial_v{Vec3::Zero()};

    Scenario() { gains = ImpedanceGains::Default(vehicle); }
};

/// Parses the YAML scenario dialect documented in docs/scenario_schema.md.
/// Unknown keys are rejected. Throws ParseError with source location on
/// malformed text and ValidationError naming the violated invariant.
Scenario parse_scenario(const std::string& text);

/// parse_scenario on the contents of a file. Throws IoError if unreadable.
Scenario load_scenario(const std::string& path);

/// parse_scenario after replacing one scalar per entry, addressed by a
/// dotted path into the document (e.g. {"wall.k_w", "1e4"}). Intermediate
/// sections are created as needed; the value goes through the normal
/// scalar conversion and validation.
Scenario parse_scenario_with_overrides(
    const std::string& text,
    const std::vector<std::pair<std::string, std::string>>& overrides);

/// Emits YAML that reparses to an equal Scenario (doubles carry 17
/// significant digits). Gains serialize by their diagonals; couplings are
/// not representable in scenario files.
std::string serialize_scenario(const Scenario& s);

/// Throws ValidationError naming the first violated invariant.
void validate_scenario(const Scenario& s);

/// Configuration equality (servo runtime fields excluded).
bool operator==(const Scenario& a, const Scenario& b);
inline bool operator!=(const Scenario& a, const Scenario& b) { return !(a == b); }

}  // namespace aeroarm
