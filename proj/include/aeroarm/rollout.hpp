#pragma once

#include <array>
#include <vector>

#include "aeroarm/absorption.hpp"
#include "aeroarm/impedance.hpp"
#include "aeroarm/scenario.hpp"
#include "aeroarm/vehicle.hpp"

namespace aeroarm {

/// One telemetry row. Velocity and contact force are world frame; the
/// acceleration is the platform's true acceleration expressed in the body
/// frame; the arm deflection p_A is body frame.
struct SimSample {
    double t = 0.0;
    Vec3 p{Vec3::Zero()};
    Vec3 v_world{Vec3::Zero()};
    Vec3 a_body{Vec3::Zero()};
    Vec3 omega{Vec3::Zero()};
    double th1 = 0.0;
    double th1_ref = 0.0;
    double th2 = 0.0;
    double th2_ref = 0.0;
    Vec3 p_A{Vec3::Zero()};
    Vec3 f_c{Vec3::Zero()};
    double E_diss = 0.0;
};

/// Where the dissipated energy went. Each term is nondecreasing in time.
struct EnergyBreakdown {
    double friction = 0.0;      // hinge bulges, both joints
    double wall_damping = 0.0;  // penalty-contact damper
    double arm_damping = 0.0;   // lumped tip damper
    double total() const { return friction + wall_damping + arm_damping; }
};

struct SimLog {
    double sample_dt = 0.0;  // s, uniform spacing of samples
    std::vector<SimSample> samples;
    EnergyBreakdown dissipated;
    VehicleState final_state;
    Vec3 final_p_A{Vec3::Zero()};
    Vec3 final_v_A{Vec3::Zero()};
    std::array<HingeState, 2> final_hinges{};
    double final_wall_depth = 0.0;
};

/// Constant moment the arm's static weight exerts about the body origin
/// at level attitude. The arm and servo masses are part of the platform
/// total, so the force component is zero.
Wrench arm_trim_wrench(const TrimConfig& trim, double gravity);

/// Wrench the arm applies on the platform: the transmitted force plus its
/// moment about the body origin (lever arm = mounting offset + current tip
/// position), plus the static trim. Equal and opposite to the wrench on
/// the arm.
Wrench couple_arm_wrench(const Vec3& tip_offset_body, const Vec3& force_body,
                         const Wrench& trim);

/// Executes the scenario: scripted impedance flight of the platform with
/// the servo-driven compliant arm and optional wall contact. Deterministic
/// for a given scenario. Throws NumericalDivergence if any state magnitude
/// exceeds 1e6.
SimLog run_scenario(const Scenario& s);

}  // namespace aeroarm
