#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aeroarm/arm_kinematics.hpp"
#include "aeroarm/csv_io.hpp"
#include "aeroarm/errors.hpp"
#include "aeroarm/log.hpp"
#include "aeroarm/metrics.hpp"
#include "aeroarm/rollout.hpp"
#include "aeroarm/scenario.hpp"

namespace {

using namespace aeroarm;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_metrics(const ImpactMetrics& m) {
    std::printf("impact: v_pre=%.6g m/s v_post=%.6g m/s E_c=%.6g J peak_accel=%.6g m/s^2 bounced=%s\n",
                m.v_pre, m.v_post, m.E_c, m.peak_accel, m.bounced ? "yes" : "no");
}

int do_run(const std::string& scenario_path, const std::string& out_path,
           const std::string& filtered_path) {
    const Scenario s = parse_scenario(read_file(scenario_path));
    const SimLog log = run_scenario(s);
    write_csv(log, out_path);
    if (!filtered_path.empty()) write_filtered_csv(log, filtered_path);
    std::printf("wrote %s (%zu samples, %g s)\n", out_path.c_str(), log.samples.size(),
                s.duration);
    if (s.wall.enabled) {
        try {
            print_metrics(impact_metrics(log, s.vehicle.mass));
        } catch (const NoContact&) {
            std::printf("no contact episode\n");
        }
    }
    return 0;
}

std::string sanitize(std::string text) {
    for (char& c : text)
        if (c == '/' || c == '\\' || c == '=') c = '_';
    return text;
}

int do_sweep(const std::string& scenario_path, const std::string& param,
             const std::string& out_dir) {
    const auto eq = param.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= param.size())
        throw ValidationError("--param must look like path=v1,v2,...");
    const std::string path = param.substr(0, eq);
    std::vector<std::string> values;
    std::stringstream ss(param.substr(eq + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw ValidationError("--param contains an empty value");
        values.push_back(item);
    }
    if (values.empty()) throw ValidationError("--param needs at least one value");

    const std::string text = read_file(scenario_path);
    std::filesystem::create_directories(out_dir);

    // each rollout owns its state; results are written by this thread only
    std::vector<std::future<SimLog>> futures;
    futures.reserve(values.size());
    for (const std::string& value : values) {
        futures.push_back(std::async(std::launch::async, [&text, &path, value]() {
            const Scenario s = parse_scenario_with_overrides(text, {{path, value}});
            return run_scenario(s);
        }));
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        const SimLog log = futures[i].get();
        const Scenario s = parse_scenario_with_overrides(text, {{path, values[i]}});
        const std::string file = out_dir + "/" + sanitize(s.name) + "__" + sanitize(path) +
                                 "_" + sanitize(values[i]) + ".csv";
        write_csv(log, file);
        std::printf("wrote %s (%zu samples)\n", file.c_str(), log.samples.size());
    }
    return 0;
}

int do_ik(double l1, double l2, double l3, double l4, double x, double y) {
    const ArmGeometry geom{l1, l2, l3, l4};
    const JointAngles q = inverse_kinematics(geom, Vec2(x, y));
    std::printf("theta1=%.12g theta2=%.12g theta3=%.12g\n", q.theta1, q.theta2, q.theta3);
    return 0;
}

int do_metrics(const std::string& csv_path, double mass) {
    const SimLog log = read_csv(csv_path);
    print_metrics(impact_metrics(log, mass));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aerial-manipulator simulation"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, filtered_path, param, out_dir, csv_path;
    double l1 = ArmGeometry{}.l1, l2 = ArmGeometry{}.l2, l3 = ArmGeometry{}.l3,
           l4 = ArmGeometry{}.l4;
    double x = 0.0, y = 0.0, mass = 3.953;

    CLI::App* run = app.add_subcommand("run", "simulate one scenario file");
    run->add_option("scenario", scenario_path, "scenario file")->required();
    run->add_option("--out", out_path, "output CSV path")->required();
    run->add_option("--filtered", filtered_path, "companion CSV with low-passed accelerations");

    CLI::App* sweep = app.add_subcommand("sweep", "simulate one scenario across parameter values");
    sweep->add_option("scenario", scenario_path, "scenario file")->required();
    sweep->add_option("--param", param, "dotted path and values, e.g. wall.k_w=1e4,2e4")
        ->required();
    sweep->add_option("--out", out_dir, "output directory")->required();

    CLI::App* ik = app.add_subcommand("ik", "inverse kinematics for one tip target");
    ik->add_option("--l1", l1, "shoulder offset, m");
    ik->add_option("--l2", l2, "first stage length, m");
    ik->add_option("--l3", l3, "second stage length, m");
    ik->add_option("--l4", l4, "end link length, m");
    ik->add_option("--x", x, "target x, m")->required();
    ik->add_option("--y", y, "target y, m")->required();

    CLI::App* metrics = app.add_subcommand("metrics", "impact metrics of a telemetry CSV");
    metrics->add_option("csv", csv_path, "telemetry CSV from 'run'")->required();
    metrics->add_option("--mass", mass, "platform total mass, kg");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return do_run(scenario_path, out_path, filtered_path);
        if (sweep->parsed()) return do_sweep(scenario_path, param, out_dir);
        if (ik->parsed()) return do_ik(l1, l2, l3, l4, x, y);
        if (metrics->parsed()) return do_metrics(csv_path, mass);
    } catch (const aeroarm::NumericalDivergence& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const aeroarm::SimError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
