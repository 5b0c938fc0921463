#include "aeroarm/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "aeroarm/errors.hpp"

namespace aeroarm {

namespace {

/// Tracks which keys of a mapping were consumed so leftovers can be
/// rejected. An undefined node behaves as an empty section (all defaults).
class MapReader {
public:
    MapReader(const YAML::Node& node, std::string path)
        : node_(node), path_(std::move(path)) {
        if (node_.IsDefined() && !node_.IsNull() && !node_.IsMap())
            throw ValidationError("section '" + path_ + "' must be a mapping");
    }

    YAML::Node take(const std::string& key) {
        taken_.insert(key);
        if (!node_.IsDefined() || node_.IsNull()) return YAML::Node(YAML::NodeType::Undefined);
        return node_[key];
    }

    void finish() const {
        if (!node_.IsDefined() || node_.IsNull()) return;
        for (const auto& kv : node_) {
            const std::string key = kv.first.as<std::string>();
            if (taken_.count(key) == 0)
                throw ValidationError("unknown key '" + qualified(key) + "'");
        }
    }

    std::string qualified(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

private:
    YAML::Node node_;
    std::string path_;
    std::set<std::string> taken_;
};

template <typename T>
T scalar_or(MapReader& m, const std::string& key, T fallback) {
    const YAML::Node node = m.take(key);
    if (!node.IsDefined() || node.IsNull()) return fallback;
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ValidationError("key '" + m.qualified(key) + "' has the wrong type");
    }
}

Vec3 vec3_or(MapReader& m, const std::string& key, const Vec3& fallback,
             bool scalar_broadcast = false) {
    const YAML::Node node = m.take(key);
    if (!node.IsDefined() || node.IsNull()) return fallback;
    if (scalar_broadcast && node.IsScalar()) {
        try {
            return Vec3::Constant(node.as<double>());
        } catch (const YAML::Exception&) {
            throw ValidationError("key '" + m.qualified(key) + "' must be a number or a list");
        }
    }
    if (!node.IsSequence() || node.size() != 3)
        throw ValidationError("key '" + m.qualified(key) + "' must be a list of 3 numbers");
    try {
        return Vec3(node[0].as<double>(), node[1].as<double>(), node[2].as<double>());
    } catch (const YAML::Exception&) {
        throw ValidationError("key '" + m.qualified(key) + "' must be a list of 3 numbers");
    }
}

Vec6 vec6_or(MapReader& m, const std::string& key, const Vec6& fallback) {
    const YAML::Node node = m.take(key);
    if (!node.IsDefined() || node.IsNull()) return fallback;
    if (!node.IsSequence() || node.size() != 6)
        throw ValidationError("key '" + m.qualified(key) + "' must be a list of 6 numbers");
    Vec6 v;
    try {
        for (int i = 0; i < 6; ++i) v[i] = node[i].as<double>();
    } catch (const YAML::Exception&) {
        throw ValidationError("key '" + m.qualified(key) + "' must be a list of 6 numbers");
    }
    return v;
}

void parse_vehicle(const YAML::Node& node, VehicleParams& vp) {
    MapReader m(node, "vehicle");
    vp.mass = scalar_or(m, "mass", vp.mass);
    const Vec3 inertia =
        vec3_or(m, "inertia", vp.inertia_rot.diagonal(), /*scalar_broadcast=*/true);
    vp.inertia_rot = inertia.asDiagonal();
    vp.gravity = scalar_or(m, "gravity", vp.gravity);
    m.finish();
}

void parse_gains(const YAML::Node& node, const VehicleParams& vp, ImpedanceGains& gains) {
    gains = ImpedanceGains::Default(vp);
    MapReader m(node, "gains");
    gains.D_v = vec6_or(m, "D_v", gains.D_v.diagonal()).asDiagonal();
    gains.K_v = vec6_or(m, "K_v", gains.K_v.diagonal()).asDiagonal();
    m.finish();
}

void parse_servo(const YAML::Node& node, ServoModel& servo) {
    MapReader m(node, "arm.servo");
    servo.kp = scalar_or(m, "kp", servo.kp);
    servo.ki = scalar_or(m, "ki", servo.ki);
    servo.kd = scalar_or(m, "kd", servo.kd);
    servo.tau_max = scalar_or(m, "tau_max", servo.tau_max);
    servo.rate_max = scalar_or(m, "rate_max", servo.rate_max);
    servo.one_sided = scalar_or(m, "one_sided", servo.one_sided);
    m.finish();
}

void parse_absorption(const YAML::Node& node, AbsorptionUnitParams& abs,
                      double& disengage_factor) {
    MapReader m(node, "arm.absorption");
    abs.k = scalar_or(m, "k", abs.k);
    abs.kappa = scalar_or(m, "kappa", abs.kappa);
    abs.mu = scalar_or(m, "mu", abs.mu);
    abs.mu_s = scalar_or(m, "mu_s", abs.mu_s);
    abs.bulge.r0 = scalar_or(m, "r0", abs.bulge.r0);
    abs.bulge.r1 = scalar_or(m, "r1", abs.bulge.r1);
    abs.h0 = scalar_or(m, "h0", abs.h0);
    disengage_factor = scalar_or(m, "disengage_factor", disengage_factor);
    m.finish();
}

void parse_lumped(const YAML::Node& node, LumpedArmParams& lumped) {
    MapReader m(node, "arm.lumped");
    lumped.M_A = vec3_or(m, "M_A", lumped.M_A.diagonal(), /*scalar_broadcast=*/true).asDiagonal();
    lumped.D_A = vec3_or(m, "D_A", lumped.D_A.diagonal(), /*scalar_broadcast=*/true).asDiagonal();
    lumped.K_A = vec3_or(m, "K_A", lumped.K_A.diagonal(), /*scalar_broadcast=*/true).asDiagonal();
    m.finish();
}

void parse_arm(const YAML::Node& node, ArmConfig& arm, ArmMode& mode) {
    MapReader m(node, "arm");
    const std::string mode_name =
        scalar_or<std::string>(m, "mode", mode == ArmMode::rigid ? "rigid" : "compliant");
    if (mode_name == "rigid")
        mode = ArmMode::rigid;
    else if (mode_name == "compliant")
        mode = ArmMode::compliant;
    else
        throw ValidationError("arm.mode must be 'rigid' or 'compliant'");

    {
        MapReader g(m.take("geometry"), "arm.geometry");
        arm.geometry.l1 = scalar_or(g, "l1", arm.geometry.l1);
        arm.geometry.l2 = scalar_or(g, "l2", arm.geometry.l2);
        arm.geometry.l3 = scalar_or(g, "l3", arm.geometry.l3);
        arm.geometry.l4 = scalar_or(g, "l4", arm.geometry.l4);
        g.finish();
    }
    arm.mount_offset = vec3_or(m, "mount_offset", arm.mount_offset);
    {
        const YAML::Node angles = m.take("initial_angles");
        if (angles.IsDefined() && !angles.IsNull()) {
            if (!angles.IsSequence() || angles.size() != 2)
                throw ValidationError("key 'arm.initial_angles' must be a list of 2 numbers");
            arm.theta1_init = angles[0].as<double>();
            arm.theta2_init = angles[1].as<double>();
        }
    }
    arm.joint_inertia = scalar_or(m, "joint_inertia", arm.joint_inertia);
    arm.inertial_reaction = scalar_or(m, "inertial_reaction", arm.inertial_reaction);
    parse_servo(m.take("servo"), arm.servo);
    parse_absorption(m.take("absorption"), arm.absorption, arm.disengage_factor);
    parse_lumped(m.take("lumped"), arm.lumped);
    m.finish();
}

void parse_wall(const YAML::Node& node, WallConfig& wall) {
    MapReader m(node, "wall");
    wall.enabled = scalar_or(m, "enabled", wall.enabled);
    wall.params.point = vec3_or(m, "point", wall.params.point);
    wall.params.normal = vec3_or(m, "normal", wall.params.normal);
    wall.params.k_w = scalar_or(m, "k_w", wall.params.k_w);
    wall.params.d_w = scalar_or(m, "d_w", wall.params.d_w);
    m.finish();
}

void parse_trim(const YAML::Node& node, TrimConfig& trim) {
    MapReader m(node, "trim");
    trim.enabled = scalar_or(m, "enabled", trim.enabled);
    trim.arm_mass = scalar_or(m, "arm_mass", trim.arm_mass);
    trim.servo_mass = scalar_or(m, "servo_mass", trim.servo_mass);
    trim.arm_com = vec3_or(m, "arm_com", trim.arm_com);
    trim.servo_com = vec3_or(m, "servo_com", trim.servo_com);
    m.finish();
}

std::vector<SetpointKnot> parse_setpoints(const YAML::Node& node) {
    if (!node.IsDefined() || node.IsNull()) return {SetpointKnot{}};
    if (!node.IsSequence()) throw ValidationError("'setpoints' must be a list");
    std::vector<SetpointKnot> knots;
    std::vector<bool> has_v;
    for (std::size_t i = 0; i < node.size(); ++i) {
        MapReader m(node[i], "setpoints[" + std::to_string(i) + "]");
        SetpointKnot knot;
        const YAML::Node t = m.take("t");
        const YAML::Node p = m.take("p");
        if (!t.IsDefined() || !p.IsDefined())
            throw ValidationError("every setpoint knot needs 't' and 'p'");
        knot.t = t.as<double>();
        if (!p.IsSequence() || p.size() != 3)
            throw ValidationError("setpoint 'p' must be a list of 3 numbers");
        knot.p = Vec3(p[0].as<double>(), p[1].as<double>(), p[2].as<double>());
        const YAML::Node v = m.take("v");
        if (v.IsDefined() && !v.IsNull()) {
            if (!v.IsSequence() || v.size() != 3)
                throw ValidationError("setpoint 'v' must be a list of 3 numbers");
            knot.v = Vec3(v[0].as<double>(), v[1].as<double>(), v[2].as<double>());
            has_v.push_back(true);
        } else {
            has_v.push_back(false);
        }
        m.finish();
        knots.push_back(knot);
    }
    // knots without an explicit velocity get the slope to the next knot
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (has_v[i]) continue;
        if (i + 1 < knots.size() && knots[i + 1].t > knots[i].t)
            knots[i].v = (knots[i + 1].p - knots[i].p) / (knots[i + 1].t - knots[i].t);
        else
            knots[i].v = Vec3::Zero();
    }
    return knots;
}

std::vector<ArmKnot> parse_arm_script(const YAML::Node& node) {
    if (!node.IsDefined() || node.IsNull()) return {};
    if (!node.IsSequence()) throw ValidationError("'arm_script' must be a list");
    std::vector<ArmKnot> knots;
    for (std::size_t i = 0; i < node.size(); ++i) {
        MapReader m(node[i], "arm_script[" + std::to_string(i) + "]");
        const YAML::Node t = m.take("t");
        const YAML::Node angles = m.take("angles");
        if (!t.IsDefined() || !angles.IsDefined())
            throw ValidationError("every arm_script knot needs 't' and 'angles'");
        if (!angles.IsSequence() || angles.size() != 2)
            throw ValidationError("arm_script 'angles' must be a list of 2 numbers");
        ArmKnot knot;
        knot.t = t.as<double>();
        knot.theta1 = angles[0].as<double>();
        knot.theta2 = angles[1].as<double>();
        m.finish();
        knots.push_back(knot);
    }
    return knots;
}

template <typename Derived>
bool all_equal(const Eigen::MatrixBase<Derived>& a, const Eigen::MatrixBase<Derived>& b) {
    return (a.array() == b.array()).all();
}

bool servo_config_equal(const ServoModel& a, const ServoModel& b) {
    return a.kp == b.kp && a.ki == b.ki && a.kd == b.kd && a.tau_max == b.tau_max &&
           a.rate_max == b.rate_max && a.one_sided == b.one_sided;
}

constexpr double kPi = 3.14159265358979323846;

void check(bool ok, const char* what) {
    if (!ok) throw ValidationError(what);
}

}  // namespace

namespace {

YAML::Node load_root(const std::string& text) {
    try {
        return YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ParseError(e.msg, e.mark.line + 1, e.mark.column + 1);
    }
}

Scenario parse_root(const YAML::Node& root) {
    if (root.IsDefined() && !root.IsNull() && !root.IsMap())
        throw ValidationError("top level must be a mapping");

    Scenario s;
    MapReader top(root, "");
    s.name = scalar_or<std::string>(top, "name", s.name);
    s.dt = scalar_or(top, "dt", s.dt);
    s.duration = scalar_or(top, "duration", s.duration);
    s.seed = scalar_or(top, "seed", s.seed);
    s.log_stride = scalar_or(top, "log_stride", s.log_stride);
    s.arm_substeps = scalar_or(top, "arm_substeps", s.arm_substeps);
    s.noise_force_std = scalar_or(top, "noise_force_std", s.noise_force_std);
    s.cut_feedback_on_contact =
        scalar_or(top, "cut_feedback_on_contact", s.cut_feedback_on_contact);

    parse_vehicle(top.take("vehicle"), s.vehicle);
    parse_gains(top.take("gains"), s.vehicle, s.gains);
    parse_arm(top.take("arm"), s.arm, s.arm_mode);
    parse_wall(top.take("wall"), s.wall);
    parse_trim(top.take("trim"), s.trim);
    s.setpoints = parse_setpoints(top.take("setpoints"));
    s.arm_script = parse_arm_script(top.take("arm_script"));

    {
        const YAML::Node initial = top.take("initial");
        if (initial.IsDefined() && !initial.IsNull()) {
            MapReader m(initial, "initial");
            s.has_initial = true;
            s.initial_p = vec3_or(m, "p", Vec3::Zero());
            s.initial_v = vec3_or(m, "v", Vec3::Zero());
            m.finish();
        }
    }
    top.finish();

    validate_scenario(s);
    return s;
}

}  // namespace

Scenario parse_scenario(const std::string& text) { return parse_root(load_root(text)); }

Scenario parse_scenario_with_overrides(
    const std::string& text,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
    YAML::Node root = load_root(text);
    if (!root.IsDefined() || root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
    if (!root.IsMap()) throw ValidationError("top level must be a mapping");
    for (const auto& [path, value] : overrides) {
        YAML::Node cursor = root;
        std::size_t begin = 0;
        try {
            while (true) {
                const std::size_t dot = path.find('.', begin);
                const std::string seg = path.substr(begin, dot - begin);
                if (seg.empty())
                    throw ValidationError("override path '" + path + "' is malformed");
                if (dot == std::string::npos) {
                    cursor[seg] = load_root(value);
                    break;
                }
                YAML::Node next = cursor[seg];
                cursor.reset(next);
                begin = dot + 1;
            }
        } catch (const YAML::Exception&) {
            throw ValidationError("override path '" + path + "' does not address a mapping");
        }
    }
    return parse_root(root);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

void validate_scenario(const Scenario& s) {
    check(s.dt > 0.0 && s.dt <= 0.01, "dt out of range");
    check(s.duration > 0.0, "duration must be positive");
    check(s.log_stride >= 1, "log_stride must be at least 1");
    check(s.arm_substeps >= 1 && s.arm_substeps <= 1000, "arm_substeps must be in [1, 1000]");
    check(s.noise_force_std >= 0.0, "noise_force_std must be nonnegative");

    check(s.vehicle.mass > 0.0, "vehicle mass must be positive");
    check((s.vehicle.inertia_rot.diagonal().array() > 0.0).all(),
          "vehicle inertia must have a positive diagonal");
    check(s.vehicle.gravity >= 0.0, "gravity must be nonnegative");
    check(s.gains.M_v.allFinite() && s.gains.D_v.allFinite() && s.gains.K_v.allFinite(),
          "gains must be finite");

    const ArmGeometry& g = s.arm.geometry;
    check(g.l1 >= 0.0 && g.l2 > 0.0 && g.l3 > 0.0 && g.l4 >= 0.0,
          "arm link lengths l2 and l3 must be positive, l1 and l4 nonnegative");
    const ServoModel& servo = s.arm.servo;
    check(servo.kp >= 0.0 && servo.ki >= 0.0 && servo.kd >= 0.0,
          "servo gains must be nonnegative");
    check(servo.tau_max > 0.0, "servo tau_max must be positive");
    check(servo.rate_max > 0.0, "servo rate_max must be positive");
    const AbsorptionUnitParams& a = s.arm.absorption;
    check(a.k >= 0.0, "absorption k must be nonnegative");
    check(a.kappa >= 0.0, "absorption kappa must be nonnegative");
    check(a.mu >= 0.0 && a.mu <= a.mu_s, "friction coefficients must satisfy 0 <= mu <= mu_s");
    check(a.bulge.r0 >= 0.0 && a.bulge.r1 >= 0.0, "bulge profile must be nonnegative");
    check(a.h0 > 0.0, "absorption h0 must be positive");
    check((s.arm.lumped.M_A.diagonal().array() > 0.0).all(),
          "lumped M_A must have a positive diagonal");
    check((s.arm.lumped.D_A.diagonal().array() >= 0.0).all() &&
              (s.arm.lumped.K_A.diagonal().array() >= 0.0).all(),
          "lumped D_A and K_A must be nonnegative");
    check(s.arm.joint_inertia > 0.0, "joint_inertia must be positive");
    check(s.arm.disengage_factor >= 0.0 && s.arm.disengage_factor <= 1.0,
          "disengage_factor must be in [0, 1]");
    check(s.arm.theta1_init >= -kPi && s.arm.theta1_init <= kPi,
          "initial theta1 outside [-pi, pi]");
    check(s.arm.theta2_init >= -kPi && s.arm.theta2_init <= 0.0,
          "initial theta2 outside [-pi, 0]");

    check(s.wall.params.k_w > 0.0, "wall k_w must be positive");
    check(s.wall.params.d_w >= 0.0, "wall d_w must be nonnegative");
    check(std::abs(s.wall.params.normal.norm() - 1.0) <= 1e-9,
          "wall normal must be unit length");

    check(s.trim.arm_mass >= 0.0 && s.trim.servo_mass >= 0.0,
          "trim masses must be nonnegative");

    check(!s.setpoints.empty(), "setpoints must not be empty");
    for (std::size_t i = 1; i < s.setpoints.size(); ++i)
        check(s.setpoints[i].t > s.setpoints[i - 1].t, "setpoints must be time-sorted");
    for (std::size_t i = 0; i < s.arm_script.size(); ++i) {
        if (i > 0)
            check(s.arm_script[i].t > s.arm_script[i - 1].t, "arm_script must be time-sorted");
        check(s.arm_script[i].theta1 >= -kPi && s.arm_script[i].theta1 <= kPi,
              "arm_script theta1 outside [-pi, pi]");
        check(s.arm_script[i].theta2 >= -kPi && s.arm_script[i].theta2 <= 0.0,
              "arm_script theta2 outside [-pi, 0]");
    }
}

namespace {

void emit_vec3(YAML::Emitter& em, const char* key, const Vec3& v) {
    em << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq << v.x() << v.y()
       << v.z() << YAML::EndSeq;
}

void emit_vec6(YAML::Emitter& em, const char* key, const Vec6& v) {
    em << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (int i = 0; i < 6; ++i) em << v[i];
    em << YAML::EndSeq;
}

}  // namespace

std::string serialize_scenario(const Scenario& s) {
    YAML::Emitter em;
    em.SetDoublePrecision(17);
    em << YAML::BeginMap;
    em << YAML::Key << "name" << YAML::Value << s.name;
    em << YAML::Key << "dt" << YAML::Value << s.dt;
    em << YAML::Key << "duration" << YAML::Value << s.duration;
    em << YAML::Key << "seed" << YAML::Value << s.seed;
    em << YAML::Key << "log_stride" << YAML::Value << s.log_stride;
    em << YAML::Key << "arm_substeps" << YAML::Value << s.arm_substeps;
    em << YAML::Key << "noise_force_std" << YAML::Value << s.noise_force_std;
    em << YAML::Key << "cut_feedback_on_contact" << YAML::Value << s.cut_feedback_on_contact;

    em << YAML::Key << "vehicle" << YAML::Value << YAML::BeginMap;
    em << YAML::Key << "mass" << YAML::Value << s.vehicle.mass;
    emit_vec3(em, "inertia", s.vehicle.inertia_rot.diagonal());
    em << YAML::Key << "gravity" << YAML::Value << s.vehicle.gravity;
    em << YAML::EndMap;

    em << YAML::Key << "gains" << YAML::Value << YAML::BeginMap;
    emit_vec6(em, "D_v", s.gains.D_v.diagonal());
    emit_vec6(em, "K_v", s.gains.K_v.diagonal());
    em << YAML::EndMap;

    em << YAML::Key << "arm" << YAML::Value << YAML::BeginMap;
    em << YAML::Key << "mode" << YAML::Value
       << (s.arm_mode == ArmMode::rigid ? "rigid" : "compliant");
    em << YAML::Key << "geometry" << YAML::Value << YAML::Flow << YAML::BeginMap;
    em << YAML::Key << "l1" << YAML::Value << s.arm.geometry.l1;
    em << YAML::Key << "l2" << YAML::Value << s.arm.geometry.l2;
    em << YAML::Key << "l3" << YAML::Value << s.arm.geometry.l3;
    em << YAML::Key << "l4" << YAML::Value << s.arm.geometry.l4;
    em << YAML::EndMap;
    emit_vec3(em, "mount_offset", s.arm.mount_offset);
    em << YAML::Key << "initial_angles" << YAML::Value << YAML::Flow << YAML::BeginSeq
       << s.arm.theta1_init << s.arm.theta2_init << YAML::EndSeq;
    em << YAML::Key << "joint_inertia" << YAML::Value << s.arm.joint_inertia;
    em << YAML::Key << "inertial_reaction" << YAML::Value << s.arm.inertial_reaction;
    em << YAML::Key << "servo" << YAML::Value << YAML::Flow << YAML::BeginMap;
    em << YAML::Key << "kp" << YAML::Value << s.arm.servo.kp;
    em << YAML::Key << "ki" << YAML::Value << s.arm.servo.ki;
    em << YAML::Key << "kd" << YAML::Value << s.arm.servo.kd;
    em << YAML::Key << "tau_max" << YAML::Value << s.arm.servo.tau_max;
    em << YAML::Key << "rate_max" << YAML::Value << s.arm.servo.rate_max;
    em << YAML::Key << "one_sided" << YAML::Value << s.arm.servo.one_sided;
    em << YAML::EndMap;
    em << YAML::Key << "absorption" << YAML::Value << YAML::Flow << YAML::BeginMap;
    em << YAML::Key << "k" << YAML::Value << s.arm.absorption.k;
    em << YAML::Key << "kappa" << YAML::Value << s.arm.absorption.kappa;
    em << YAML::Key << "mu" << YAML::Value << s.arm.absorption.mu;
    em << YAML::Key << "mu_s" << YAML::Value << s.arm.absorption.mu_s;
    em << YAML::Key << "r0" << YAML::Value << s.arm.absorption.bulge.r0;
    em << YAML::Key << "r1" << YAML::Value << s.arm.absorption.bulge.r1;
    em << YAML::Key << "h0" << YAML::Value << s.arm.absorption.h0;
    em << YAML::Key << "disengage_factor" << YAML::Value << s.arm.disengage_factor;
    em << YAML::EndMap;
    em << YAML::Key << "lumped" << YAML::Value << YAML::BeginMap;
    emit_vec3(em, "M_A", s.arm.lumped.M_A.diagonal());
    emit_vec3(em, "D_A", s.arm.lumped.D_A.diagonal());
    emit_vec3(em, "K_A", s.arm.lumped.K_A.diagonal());
    em << YAML::EndMap;
    em << YAML::EndMap;

    em << YAML::Key << "wall" << YAML::Value << YAML::BeginMap;
    em << YAML::Key << "enabled" << YAML::Value << s.wall.enabled;
    emit_vec3(em, "point", s.wall.params.point);
    emit_vec3(em, "normal", s.wall.params.normal);
    em << YAML::Key << "k_w" << YAML::Value << s.wall.params.k_w;
    em << YAML::Key << "d_w" << YAML::Value << s.wall.params.d_w;
    em << YAML::EndMap;

    em << YAML::Key << "trim" << YAML::Value << YAML::BeginMap;
    em << YAML::Key << "enabled" << YAML::Value << s.trim.enabled;
    em << YAML::Key << "arm_mass" << YAML::Value << s.trim.arm_mass;
    em << YAML::Key << "servo_mass" << YAML::Value << s.trim.servo_mass;
    emit_vec3(em, "arm_com", s.trim.arm_com);
    emit_vec3(em, "servo_com", s.trim.servo_com);
    em << YAML::EndMap;

    if (s.has_initial) {
        em << YAML::Key << "initial" << YAML::Value << YAML::BeginMap;
        emit_vec3(em, "p", s.initial_p);
        emit_vec3(em, "v", s.initial_v);
        em << YAML::EndMap;
    }

    em << YAML::Key << "setpoints" << YAML::Value << YAML::BeginSeq;
    for (const SetpointKnot& knot : s.setpoints) {
        em << YAML::Flow << YAML::BeginMap;
        em << YAML::Key << "t" << YAML::Value << knot.t;
        emit_vec3(em, "p", knot.p);
        emit_vec3(em, "v", knot.v);
        em << YAML::EndMap;
    }
    em << YAML::EndSeq;

    if (!s.arm_script.empty()) {
        em << YAML::Key << "arm_script" << YAML::Value << YAML::BeginSeq;
        for (const ArmKnot& knot : s.arm_script) {
            em << YAML::Flow << YAML::BeginMap;
            em << YAML::Key << "t" << YAML::Value << knot.t;
            em << YAML::Key << "angles" << YAML::Value << YAML::BeginSeq << knot.theta1
               << knot.theta2 << YAML::EndSeq;
            em << YAML::EndMap;
        }
        em << YAML::EndSeq;
    }
    em << YAML::EndMap;
    return std::string(em.c_str()) + "\n";
}

bool operator==(const Scenario& a, const Scenario& b) {
    if (!(a.name == b.name && a.dt == b.dt && a.duration == b.duration && a.seed == b.seed &&
          a.log_stride == b.log_stride && a.arm_substeps == b.arm_substeps &&
          a.noise_force_std == b.noise_force_std &&
          a.cut_feedback_on_contact == b.cut_feedback_on_contact))
        return false;
    if (!(a.vehicle.mass == b.vehicle.mass && all_equal(a.vehicle.inertia_rot, b.vehicle.inertia_rot) &&
          a.vehicle.gravity == b.vehicle.gravity))
        return false;
    if (!(all_equal(a.gains.M_v, b.gains.M_v) && all_equal(a.gains.D_v, b.gains.D_v) &&
          all_equal(a.gains.K_v, b.gains.K_v)))
        return false;
    if (a.arm_mode != b.arm_mode) return false;
    const ArmConfig& x = a.arm;
    const ArmConfig& y = b.arm;
    if (!(x.geometry.l1 == y.geometry.l1 && x.geometry.l2 == y.geometry.l2 &&
          x.geometry.l3 == y.geometry.l3 && x.geometry.l4 == y.geometry.l4))
        return false;
    if (!servo_config_equal(x.servo, y.servo)) return false;
    if (!(x.absorption.k == y.absorption.k && x.absorption.kappa == y.absorption.kappa &&
          x.absorption.mu == y.absorption.mu && x.absorption.mu_s == y.absorption.mu_s &&
          x.absorption.bulge.r0 == y.absorption.bulge.r0 &&
          x.absorption.bulge.r1 == y.absorption.bulge.r1 && x.absorption.h0 == y.absorption.h0))
        return false;
    if (!(all_equal(x.lumped.M_A, y.lumped.M_A) && all_equal(x.lumped.D_A, y.lumped.D_A) &&
          all_equal(x.lumped.K_A, y.lumped.K_A)))
        return false;
    if (!(x.joint_inertia == y.joint_inertia && x.disengage_factor == y.disengage_factor &&
          all_equal(x.mount_offset, y.mount_offset) && x.theta1_init == y.theta1_init &&
          x.theta2_init == y.theta2_init && x.inertial_reaction == y.inertial_reaction))
        return false;
    if (!(a.wall.enabled == b.wall.enabled && a.wall.params.k_w == b.wall.params.k_w &&
          a.wall.params.d_w == b.wall.params.d_w &&
          all_equal(a.wall.params.normal, b.wall.params.normal) &&
          all_equal(a.wall.params.point, b.wall.params.point)))
        return false;
    if (!(a.trim.enabled == b.trim.enabled && a.trim.arm_mass == b.trim.arm_mass &&
          a.trim.servo_mass == b.trim.servo_mass && all_equal(a.trim.arm_com, b.trim.arm_com) &&
          all_equal(a.trim.servo_com, b.trim.servo_com)))
        return false;
    if (a.setpoints.size() != b.setpoints.size() || a.arm_script.size() != b.arm_script.size())
        return false;
    for (std::size_t i = 0; i < a.setpoints.size(); ++i) {
        if (!(a.setpoints[i].t == b.setpoints[i].t && all_equal(a.setpoints[i].p, b.setpoints[i].p) &&
              all_equal(a.setpoints[i].v, b.setpoints[i].v)))
            return false;
    }
    for (std::size_t i = 0; i < a.arm_script.size(); ++i) {
        if (!(a.arm_script[i].t == b.arm_script[i].t &&
              a.arm_script[i].theta1 == b.arm_script[i].theta1 &&
              a.arm_script[i].theta2 == b.arm_script[i].theta2))
            return false;
    }
    if (a.has_initial != b.has_initial) return false;
    if (a.has_initial &&
        !(all_equal(a.initial_p, b.initial_p) && all_equal(a.initial_v, b.initial_v)))
        return false;
    return true;
}

}  // namespace aeroarm
