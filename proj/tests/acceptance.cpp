// Acceptance gate: every release-blocking behavior of the simulator,
// checked end to end with the tolerances spelled out inline. Each check
// prints one PASS/FAIL line; the exit code is the number of failures.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aeroarm/absorption.hpp"
#include "aeroarm/arm_kinematics.hpp"
#include "aeroarm/csv_io.hpp"
#include "aeroarm/impedance.hpp"
#include "aeroarm/metrics.hpp"
#include "aeroarm/rollout.hpp"
#include "aeroarm/scenario.hpp"
#include "aeroarm/spatial.hpp"
#include "aeroarm/vehicle.hpp"

using namespace aeroarm;

namespace {

std::string scenario_path(const std::string& name) {
    return std::string(AEROARM_SCENARIO_DIR) + "/" + name;
}

// Measurement summary of the criterion currently running; the runner
// prints it indented under that criterion's verdict line.
char g_detail[256];

template <typename... Args>
void detail(const char* fmt, Args... args) {
    std::snprintf(g_detail, sizeof(g_detail), fmt, args...);
}

std::string tmp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("aeroarm_acc_" + name)).string();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --- criterion 1: impact energy bookkeeping ------------------------------

bool energy_bookkeeping() {
    const double first = energy_absorbed(0.626, 0.219, 3.953);
    const double second = energy_absorbed(0.675, 0.0, 3.953);
    detail("bounce episode %.4f J, arrest episode %.4f J", first, second);
    return std::abs(first - 0.6797) <= 0.001 && std::abs(second - 0.9005) <= 0.001;
}

// --- criterion 2: FK/IK round trip ---------------------------------------

double angle_diff(double a, double b) {
    double d = a - b;
    while (d > M_PI) d -= 2.0 * M_PI;
    while (d < -M_PI) d += 2.0 * M_PI;
    return std::abs(d);
}

bool fk_ik_round_trip() {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> len1(0.0, 0.05), len23(0.08, 0.2),
        len4(0.0, 0.08);
    std::uniform_real_distribution<double> u1(-1.2, 1.2), u2(-3.0, -0.1);

    double worst_angle = 0.0, worst_pos = 0.0;
    for (int gi = 0; gi < 5; ++gi) {
        ArmGeometry g;  // first geometry is the stock arm
        if (gi > 0) {
            g.l1 = len1(rng);
            g.l2 = len23(rng);
            g.l3 = len23(rng);
            g.l4 = len4(rng);
        }
        for (int i = 0; i < 2000; ++i) {
            const JointAngles q{u1(rng), u2(rng), 0.0};
            const Vec2 target = forward_kinematics(g, q);
            const JointAngles back = inverse_kinematics(g, target);
            worst_angle = std::max({worst_angle, angle_diff(back.theta1, q.theta1),
                                    angle_diff(back.theta2, q.theta2)});
            worst_pos =
                std::max(worst_pos, (forward_kinematics(g, back) - target).norm());
        }
    }
    detail("max joint-angle error %.3e rad, max position error %.3e m",
                worst_angle, worst_pos);
    return worst_angle <= 1e-9 && worst_pos <= 1e-9;
}

// --- criterion 3: closed loop == virtual error dynamics ------------------

bool closed_loop_equivalence() {
    const VehicleParams vp;
    const ImpedanceGains gains = ImpedanceGains::Default(vp);
    Setpoint sp;
    sp.p_d = Vec3(0.0, 0.0, 1.0);

    // constant world push, perfectly known to the controller; no torque so
    // the platform never rotates and the error dynamics stay linear
    Wrench ext;
    ext.force = Vec3(0.8, -0.5, 0.3);

    VehicleState st;
    st.p = sp.p_d + Vec3(0.35, -0.25, 0.15);

    // reference: the virtual mass-spring-damper on (e_p, e_v)
    const Mat3 M = gains.M_v.topLeftCorner<3, 3>();
    const Mat3 D = gains.D_v.topLeftCorner<3, 3>();
    const Mat3 K = gains.K_v.topLeftCorner<3, 3>();
    const Mat3 M_inv = M.inverse();
    Vec3 e = st.p - sp.p_d;
    Vec3 edot = Vec3::Zero();
    const auto acc = [&](const Vec3& ep, const Vec3& ev) -> Vec3 {
        return M_inv * (ext.force - D * ev - K * ep);
    };

    const double dt = 1e-3;
    const int n = 5000;  // 5 s
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        st = step_rk4(
            vp, st,
            [&](double, const VehicleState& stage) {
                return std::make_pair(control_wrench(vp, gains, stage, sp, ext), ext);
            },
            dt);

        const Vec3 k1p = edot, k1v = acc(e, edot);
        const Vec3 k2p = edot + 0.5 * dt * k1v, k2v = acc(e + 0.5 * dt * k1p, k2p);
        const Vec3 k3p = edot + 0.5 * dt * k2v, k3v = acc(e + 0.5 * dt * k2p, k3p);
        const Vec3 k4p = edot + dt * k3v, k4v = acc(e + dt * k3p, k4p);
        e += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        edot += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);

        worst = std::max({worst, ((st.p - sp.p_d) - e).lpNorm<Eigen::Infinity>(),
                          (st.v - edot).lpNorm<Eigen::Infinity>(),
                          st.omega.lpNorm<Eigen::Infinity>(),
                          (st.R - Mat3::Identity()).lpNorm<Eigen::Infinity>()});
    }
    detail("max state deviation over 5 s: %.3e", worst);
    return worst <= 1e-6;
}

// --- criterion 4: rigid vs compliant impact ------------------------------

bool impact_dichotomy() {
    const SimLog soft =
        run_scenario(load_scenario(scenario_path("impact_compliant.yaml")));
    const SimLog hard = run_scenario(load_scenario(scenario_path("impact_rigid.yaml")));
    const ImpactMetrics ms = impact_metrics(soft, 3.953);
    const ImpactMetrics mh = impact_metrics(hard, 3.953);
    detail("compliant: peak %.2f m/s^2, v_post %.3f m/s | rigid: peak %.2f m/s^2, v_post %.3f m/s",
           ms.peak_accel, ms.v_post, mh.peak_accel, mh.v_post);
    return mh.peak_accel >= 3.0 * ms.peak_accel && ms.v_post < 0.05 &&
           mh.v_post >= 0.15;
}

// --- criterion 5: ring-down passivity ------------------------------------

bool ring_down_passivity() {
    const AbsorptionUnitParams p;
    const double inertia = 2e-3;
    const double dt = 1e-4;
    HingeState st;
    st.theta = 0.6;

    const auto mech = [&] {
        return 0.5 * inertia * st.theta_dot * st.theta_dot +
               0.5 * p.kappa * st.theta * st.theta;
    };
    double prev = mech();
    double prev_diss = 0.0;
    bool monotone = true;
    for (int k = 0; k < 30000; ++k) {
        hinge_step(p, inertia, st, 0.0, dt);
        monotone = monotone && mech() <= prev + 1e-6 &&
                   st.energy_dissipated >= prev_diss;
        prev = mech();
        prev_diss = st.energy_dissipated;
    }
    // at rest, within 1e-3 rad of an angle the static friction can hold
    const double r = bulge_radius(p.bulge, st.theta);
    const bool settled = std::abs(st.theta_dot) <= 1e-3 &&
                         std::abs(p.kappa * st.theta) <=
                             p.mu_s * p.k * r * r + p.kappa * 1e-3;
    detail("final angle %.4f rad, dissipated %.4f J", st.theta,
                st.energy_dissipated);
    return monotone && settled;
}

// --- criterion 6: integrator order ---------------------------------------

bool integrator_order() {
    VehicleParams vp;
    vp.inertia_rot = Vec3(0.05, 0.06, 0.08).asDiagonal();

    const auto zero_wrench = [](double) { return std::make_pair(Wrench{}, Wrench{}); };
    const auto roll = [&](double dt, double T) {
        VehicleState st;
        st.v = Vec3(1.0, -0.5, 0.5);
        st.omega = Vec3(4.0, 9.0, 2.0);
        const int n = static_cast<int>(std::llround(T / dt));
        for (int k = 0; k < n; ++k) st = step_rk4(vp, st, WrenchFn(zero_wrench), dt);
        return st;
    };

    const double T = 2.0;
    const VehicleState ref = roll(1e-5, T);
    std::vector<double> xs, ys;
    for (double dt : {8e-3, 4e-3, 2e-3, 1e-3}) {
        const VehicleState st = roll(dt, T);
        const double err = (st.p - ref.p).norm() + (st.v - ref.v).norm() +
                           (st.omega - ref.omega).norm() + (st.R - ref.R).norm();
        xs.push_back(std::log(dt));
        ys.push_back(std::log(err));
    }
    const double xm = (xs[0] + xs[1] + xs[2] + xs[3]) / 4.0;
    const double ym = (ys[0] + ys[1] + ys[2] + ys[3]) / 4.0;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 4; ++i) {
        num += (xs[i] - xm) * (ys[i] - ym);
        den += (xs[i] - xm) * (xs[i] - xm);
    }
    const double slope = num / den;
    detail("log-log error slope %.3f", slope);
    return slope >= 3.7 && slope <= 4.3;
}

// --- criterion 7: long-tumble orthonormality ------------------------------

bool rotation_integrity() {
    VehicleParams vp;
    vp.inertia_rot = Vec3(0.05, 0.06, 0.08).asDiagonal();
    vp.gravity = 0.0;

    VehicleState st;
    st.omega = Vec3(4.8, 6.0, 6.4);  // 10 rad/s tumble
    const auto zero_wrench = [](double) { return std::make_pair(Wrench{}, Wrench{}); };
    for (int k = 0; k < 100000; ++k) {
        st = step_rk4(vp, st, WrenchFn(zero_wrench), 1e-3);
        if ((k + 1) % 100 == 0) st.R = reorthonormalize(st.R);
    }
    const double drift = (st.R.transpose() * st.R - Mat3::Identity()).norm();
    detail("||R^T R - I|| = %.3e after 1e5 steps", drift);
    return drift <= 1e-6;
}

// --- criterion 8: saturated tendon gap ------------------------------------

bool servo_saturation_gap() {
    const AbsorptionUnitParams p;
    ServoModel servo;
    servo.one_sided = true;
    const double theta_cmd = -2.4;

    // the commanded angle must actually be out of reach for the tendon
    const double holding =
        total_torque_bound(p, theta_cmd) + std::abs(hinge_torque(p, theta_cmd));
    if (holding <= servo.tau_max) return false;

    const double inertia = 2e-3;
    const double dt = 1e-4;
    HingeState st;
    double min_gap = 1e9;
    for (int k = 0; k < 40000; ++k) {
        const double tau_s = servo_step(servo, theta_cmd, st.theta, 0.0, dt);
        hinge_step(p, inertia, st, tau_s, dt);
        if (k >= 30000) min_gap = std::min(min_gap, std::abs(st.theta - theta_cmd));
    }
    detail("holding torque %.2f N*m vs stall %.2f N*m, gap %.3f rad",
                holding, servo.tau_max, min_gap);
    return min_gap > 0.02;
}

// --- criterion 9: determinism and scenario I/O ----------------------------

bool determinism_and_io() {
    Scenario s = load_scenario(scenario_path("impact_compliant.yaml"));
    s.duration = 1.5;  // through first contact, shortened for the gate
    s.noise_force_std = 0.02;
    const std::string pa = tmp_path("det_a.csv");
    const std::string pb = tmp_path("det_b.csv");
    write_csv(run_scenario(s), pa);
    write_csv(run_scenario(s), pb);
    const bool identical = read_file(pa) == read_file(pb);

    bool corpus_ok = true;
    int seen = 0;
    namespace fs = std::filesystem;
    for (const auto& entry : fs::directory_iterator(AEROARM_SCENARIO_DIR)) {
        if (entry.path().extension() != ".yaml") continue;
        ++seen;
        const Scenario loaded = load_scenario(entry.path().string());
        const std::string text = serialize_scenario(loaded);
        corpus_ok = corpus_ok && parse_scenario(text) == loaded;
    }
    detail("csv bytes identical: %s, corpus files round-tripped: %d",
                identical ? "yes" : "no", seen);
    return identical && corpus_ok && seen >= 4;
}

}  // namespace

int main() {
    struct Criterion {
        int index;
        const char* description;
        std::function<bool()> check;
    };
    const std::vector<Criterion> criteria = {
        {1, "impact energy bookkeeping matches the reference episodes", energy_bookkeeping},
        {2, "FK/IK round trip across random geometries", fk_ik_round_trip},
        {3, "closed loop matches the virtual error dynamics", closed_loop_equivalence},
        {4, "rigid vs compliant impact ordering and bounce dichotomy", impact_dichotomy},
        {5, "hinge ring-down passivity", ring_down_passivity},
        {6, "integrator global error is fourth order", integrator_order},
        {7, "rotation stays orthonormal over a long tumble", rotation_integrity},
        {8, "saturated tendon leaves a persistent joint gap", servo_saturation_gap},
        {9, "determinism and scenario I/O round trip", determinism_and_io},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        g_detail[0] = '\0';
        bool ok = false;
        std::string note;
        try {
            ok = c.check();
        } catch (const std::exception& e) {
            note = std::string(" (") + e.what() + ")";
        }
        if (!ok) ++failures;
        std::printf("%s criterion %d: %s%s\n", ok ? "PASS" : "FAIL", c.index,
                    c.description, note.c_str());
        if (g_detail[0] != '\0') std::printf("       %s\n", g_detail);
        std::fflush(stdout);
    }
    return failures;
}
