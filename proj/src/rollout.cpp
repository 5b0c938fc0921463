#include "aeroarm/rollout.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "aeroarm/contact.hpp"
#include "aeroarm/errors.hpp"
#include "aeroarm/log.hpp"
#include "aeroarm/spatial.hpp"

namespace aeroarm {

namespace {

Vec3 arm_to_body(const Vec2& planar) { return {planar.x(), 0.0, planar.y()}; }

/// p_d lerps across the segment, v_d holds the left knot's value; past
/// the last knot p_d extrapolates with that knot's velocity.
Setpoint sample_setpoint(const std::vector<SetpointKnot>& knots, double t) {
    Setpoint sp;
    if (t <= knots.front().t) {
        sp.p_d = knots.front().p;
        sp.v_d = knots.front().v;
        return sp;
    }
    if (t >= knots.back().t) {
        sp.p_d = knots.back().p + (t - knots.back().t) * knots.back().v;
        sp.v_d = knots.back().v;
        return sp;
    }
    std::size_t i = 1;
    while (knots[i].t < t) ++i;
    const SetpointKnot& a = knots[i - 1];
    const SetpointKnot& b = knots[i];
    const double alpha = (t - a.t) / (b.t - a.t);
    sp.p_d = a.p + alpha * (b.p - a.p);
    sp.v_d = a.v;
    return sp;
}

std::pair<double, double> sample_arm_refs(const std::vector<ArmKnot>& knots, double t,
                                          double theta1_hold, double theta2_hold) {
    if (knots.empty()) return {theta1_hold, theta2_hold};
    if (t <= knots.front().t) return {knots.front().theta1, knots.front().theta2};
    if (t >= knots.back().t) return {knots.back().theta1, knots.back().theta2};
    std::size_t i = 1;
    while (knots[i].t < t) ++i;
    const ArmKnot& a = knots[i - 1];
    const ArmKnot& b = knots[i];
    const double alpha = (t - a.t) / (b.t - a.t);
    return {a.theta1 + alpha * (b.theta1 - a.theta1), a.theta2 + alpha * (b.theta2 - a.theta2)};
}

void check_finite(const VehicleState& st, const Vec3& p_A, const Vec3& v_A,
                  const HingeState hinges[2], double t) {
    const double worst =
        std::max({st.p.cwiseAbs().maxCoeff(), st.v.cwiseAbs().maxCoeff(),
                  st.omega.cwiseAbs().maxCoeff(), p_A.cwiseAbs().maxCoeff(),
                  v_A.cwiseAbs().maxCoeff(), std::abs(hinges[0].theta_dot),
                  std::abs(hinges[1].theta_dot)});
    if (!(worst < 1.0e6))
        throw NumericalDivergence("state magnitude exceeded 1e6 at t=" + std::to_string(t));
}

}  // namespace

Wrench arm_trim_wrench(const TrimConfig& trim, double gravity) {
    Wrench w;
    if (!trim.enabled) return w;
    const Vec3 weight_dir = -gravity * Vec3::UnitZ();
    w.torque = trim.arm_com.cross(trim.arm_mass * weight_dir) +
               trim.servo_com.cross(trim.servo_mass * weight_dir);
    return w;
}

Wrench couple_arm_wrench(const Vec3& tip_offset_body, const Vec3& force_body,
                         const Wrench& trim) {
    Wrench w;
    w.force = force_body + trim.force;
    w.torque = tip_offset_body.cross(force_body) + trim.torque;
    return w;
}

SimLog run_scenario(const Scenario& s) {
    validate_scenario(s);
    const VehicleParams& vp = s.vehicle;
    const Wrench trim = arm_trim_wrench(s.trim, vp.gravity);
    const Wrench no_estimate;  // gains with M_v = M make the estimate moot
    const bool compliant = s.arm_mode == ArmMode::compliant;

    VehicleState st;
    {
        const Setpoint sp0 = sample_setpoint(s.setpoints, 0.0);
        st.p = s.has_initial ? s.initial_p : sp0.p_d;
        st.v = s.has_initial ? s.initial_v : sp0.v_d;  // R = I, body == world
    }

    ServoModel servos[2] = {s.arm.servo, s.arm.servo};
    HingeState hinges[2];
    hinges[0].theta = s.arm.theta1_init;
    hinges[1].theta = s.arm.theta2_init;

    Vec3 p_A = Vec3::Zero();
    Vec3 v_A = Vec3::Zero();
    Vec3 f_c_world = Vec3::Zero();
    Wrench ext_applied = couple_arm_wrench(
        s.arm.mount_offset + arm_to_body(forward_kinematics(
                                 s.arm.geometry, {hinges[0].theta, hinges[1].theta, 0.0})),
        Vec3::Zero(), trim);
    double wall_depth = 0.0;

    std::mt19937_64 rng(s.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    EnergyBreakdown diss;
    SimLog log;
    log.sample_dt = s.dt * s.log_stride;

    // inertial-reaction finite differences of the nominal tip
    Vec3 tip_nom_prev = Vec3::Zero();
    Vec3 tip_vel_nom_prev = Vec3::Zero();
    int nom_history = 0;

    bool feedback_cut = false;
    const long n_steps = std::llround(s.duration / s.dt);

    for (long k = 0; k <= n_steps; ++k) {
        const double t = static_cast<double>(k) * s.dt;
        const Setpoint sp = sample_setpoint(s.setpoints, t);
        const auto [ref1, ref2] =
            sample_arm_refs(s.arm_script, t, s.arm.theta1_init, s.arm.theta2_init);

        if (k % s.log_stride == 0 || k == n_steps) {
            const Wrench cmd = feedback_cut ? gravity_wrench(vp, st.R)
                                            : control_wrench(vp, s.gains, st, sp, no_estimate);
            const VehicleDeriv deriv = dynamics_deriv(vp, st, cmd, ext_applied);
            SimSample row;
            row.t = t;
            row.p = st.p;
            row.v_world = st.R * st.v;
            row.a_body = deriv.accel.linear + st.omega.cross(st.v);
            row.omega = st.omega;
            row.th1 = hinges[0].theta;
            row.th1_ref = ref1;
            row.th2 = hinges[1].theta;
            row.th2_ref = ref2;
            row.p_A = p_A;
            row.f_c = f_c_world;
            row.E_diss = diss.total();
            log.samples.push_back(row);
        }
        if (k == n_steps) break;

        // arm joints: servo tracking, then hinge spring/friction dynamics
        for (int j = 0; j < 2; ++j) {
            const double ref = j == 0 ? ref1 : ref2;
            const double load = hinge_torque(s.arm.absorption, hinges[j].theta);
            const double tau_servo = servo_step(servos[j], ref, hinges[j].theta, load, s.dt);
            hinge_step(s.arm.absorption, s.arm.joint_inertia, hinges[j], tau_servo, s.dt,
                       s.arm.disengage_factor);
        }
        diss.friction = hinges[0].energy_dissipated + hinges[1].energy_dissipated;

        const JointAngles q{hinges[0].theta, hinges[1].theta, 0.0};
        const Vec3 tip_nom = s.arm.mount_offset + arm_to_body(forward_kinematics(s.arm.geometry, q));
        const Eigen::Vector2d joint_rates(hinges[0].theta_dot, hinges[1].theta_dot);
        const Vec3 tip_vel_nom = arm_to_body(fk_jacobian(s.arm.geometry, q) * joint_rates);

        Vec3 inertial_forcing = Vec3::Zero();
        if (s.arm.inertial_reaction) {
            if (nom_history >= 1) {
                const Vec3 vel_fd = (tip_nom - tip_nom_prev) / s.dt;
                if (nom_history >= 2)
                    inertial_forcing = s.arm.lumped.M_A * ((vel_fd - tip_vel_nom_prev) / s.dt);
                tip_vel_nom_prev = vel_fd;
            }
            tip_nom_prev = tip_nom;
            if (nom_history < 2) ++nom_history;
        }

        Vec3 tip_body = tip_nom + p_A;
        if (compliant) {
            const double h = s.dt / s.arm_substeps;
            for (int sub = 0; sub < s.arm_substeps; ++sub) {
                tip_body = tip_nom + p_A;
                const Vec3 tip_world = st.p + st.R * tip_body;
                const Vec3 tip_vel_world =
                    st.R * (st.v + st.omega.cross(tip_body) + tip_vel_nom + v_A);
                if (s.wall.enabled) {
                    const ContactState cs = contact_state(s.wall.params, tip_world, tip_vel_world);
                    f_c_world = contact_force(s.wall.params, tip_world, tip_vel_world);
                    wall_depth = std::max(cs.depth, 0.0);
                    if (cs.active)
                        diss.wall_damping +=
                            s.wall.params.d_w * std::max(0.0, cs.rate) * std::max(0.0, cs.rate) * h;
                } else {
                    f_c_world = Vec3::Zero();
                    wall_depth = 0.0;
                }
                const Vec3 F_A = -(st.R.transpose() * f_c_world) + inertial_forcing;
                lumped_arm_step(s.arm.lumped, p_A, v_A, F_A, h);
                diss.arm_damping += v_A.dot(s.arm.lumped.D_A * v_A) * h;
            }
            tip_body = tip_nom + p_A;
        } else {
            const Vec3 tip_world = st.p + st.R * tip_body;
            const Vec3 tip_vel_world = st.R * (st.v + st.omega.cross(tip_body) + tip_vel_nom);
            if (s.wall.enabled) {
                const ContactState cs = contact_state(s.wall.params, tip_world, tip_vel_world);
                f_c_world = contact_force(s.wall.params, tip_world, tip_vel_world);
                wall_depth = std::max(cs.depth, 0.0);
                if (cs.active)
                    diss.wall_damping +=
                        s.wall.params.d_w * std::max(0.0, cs.rate) * std::max(0.0, cs.rate) * s.dt;
            } else {
                f_c_world = Vec3::Zero();
            }
        }

        const Vec3 force_on_platform =
            compliant ? Vec3(s.arm.lumped.K_A * p_A + s.arm.lumped.D_A * v_A)
                      : Vec3(st.R.transpose() * f_c_world);
        ext_applied = couple_arm_wrench(tip_body, force_on_platform, trim);
        if (s.noise_force_std > 0.0)
            ext_applied.force +=
                s.noise_force_std * Vec3(gauss(rng), gauss(rng), gauss(rng));

        if (s.cut_feedback_on_contact && !feedback_cut && f_c_world.squaredNorm() > 0.0) {
            feedback_cut = true;
            logging::info("feedback cut at first contact, t=" + std::to_string(t));
        }

        const Wrench ext_const = ext_applied;
        const bool cut = feedback_cut;
        const auto wrench_fn = [&](double tau, const VehicleState& stage) {
            const Wrench cmd =
                cut ? gravity_wrench(vp, stage.R)
                    : control_wrench(vp, s.gains, stage,
                                     sample_setpoint(s.setpoints, t + tau), no_estimate);
            return std::make_pair(cmd, ext_const);
        };
        st = step_rk4(vp, st, WrenchStateFn(wrench_fn), s.dt);

        if ((k + 1) % 100 == 0) st.R = reorthonormalize(st.R);
        check_finite(st, p_A, v_A, hinges, t + s.dt);
    }

    log.dissipated = diss;
    log.final_state = st;
    log.final_p_A = p_A;
    log.final_v_A = v_A;
    log.final_hinges = {hinges[0], hinges[1]};
    log.final_wall_depth = wall_depth;
    logging::debug("rollout '" + s.name + "' finished: " + std::to_string(log.samples.size()) +
                   " samples");
    return log;
}

}  // namespace aeroarm
