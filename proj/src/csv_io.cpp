#include "aeroarm/csv_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "aeroarm/errors.hpp"

namespace aeroarm {

namespace {

constexpr int kColumns = 24;

void append_double(std::string& out, double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    out.append(buf, res.ptr);
}

void row_values(const SimSample& s, std::array<double, kColumns>& v) {
    v = {s.t,
         s.p.x(), s.p.y(), s.p.z(),
         s.v_world.x(), s.v_world.y(), s.v_world.z(),
         s.a_body.x(), s.a_body.y(), s.a_body.z(),
         s.omega.x(), s.omega.y(), s.omega.z(),
         s.th1, s.th1_ref, s.th2, s.th2_ref,
         s.p_A.x(), s.p_A.y(), s.p_A.z(),
         s.f_c.x(), s.f_c.y(), s.f_c.z(),
         s.E_diss};
}

SimSample sample_from_values(const std::array<double, kColumns>& v) {
    SimSample s;
    s.t = v[0];
    s.p = {v[1], v[2], v[3]};
    s.v_world = {v[4], v[5], v[6]};
    s.a_body = {v[7], v[8], v[9]};
    s.omega = {v[10], v[11], v[12]};
    s.th1 = v[13];
    s.th1_ref = v[14];
    s.th2 = v[15];
    s.th2_ref = v[16];
    s.p_A = {v[17], v[18], v[19]};
    s.f_c = {v[20], v[21], v[22]};
    s.E_diss = v[23];
    return s;
}

}  // namespace

void write_csv(const SimLog& log, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    std::string buf;
    buf.reserve(64 * (log.samples.size() + 1));
    buf += kCsvHeader;
    buf += '\n';
    std::array<double, kColumns> vals;
    for (const SimSample& s : log.samples) {
        row_values(s, vals);
        for (int i = 0; i < kColumns; ++i) {
            if (i > 0) buf += ',';
            append_double(buf, vals[i]);
        }
        buf += '\n';
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw IoError("write failed for '" + path + "'");
}

SimLog read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw IoError("'" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw IoError("'" + path + "' has an unexpected header");

    SimLog log;
    std::array<double, kColumns> vals;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (int i = 0; i < kColumns; ++i) {
            const auto res = std::from_chars(p, end, vals[i]);
            if (res.ec != std::errc{})
                throw IoError("malformed value in '" + path + "'");
            p = res.ptr;
            if (i + 1 < kColumns) {
                if (p >= end || *p != ',')
                    throw IoError("malformed row in '" + path + "'");
                ++p;
            }
        }
        if (p != end) throw IoError("trailing characters in a row of '" + path + "'");
        log.samples.push_back(sample_from_values(vals));
    }
    if (log.samples.size() >= 2)
        log.sample_dt = log.samples[1].t - log.samples[0].t;
    return log;
}

void write_filtered_csv(const SimLog& log, const std::string& path, double cutoff_hz) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");

    // bilinear-transform Butterworth biquad, primed with the first sample
    // so the output starts without a step transient
    const double dt = log.samples.size() >= 2
                          ? log.samples[1].t - log.samples[0].t
                          : (log.sample_dt > 0.0 ? log.sample_dt : 1.0);
    const double warp = std::tan(3.14159265358979323846 * cutoff_hz * dt);
    const double q = std::sqrt(2.0);
    const double norm = 1.0 / (1.0 + q * warp + warp * warp);
    const double b0 = warp * warp * norm;
    const double b1 = 2.0 * b0;
    const double b2 = b0;
    const double a1 = 2.0 * (warp * warp - 1.0) * norm;
    const double a2 = (1.0 - q * warp + warp * warp) * norm;

    std::string buf = "t,ax_f,ay_f,az_f\n";
    Vec3 x1 = Vec3::Zero(), x2 = Vec3::Zero(), y1 = Vec3::Zero(), y2 = Vec3::Zero();
    if (!log.samples.empty()) {
        x1 = x2 = y1 = y2 = log.samples.front().a_body;
    }
    for (const SimSample& s : log.samples) {
        const Vec3 x = s.a_body;
        const Vec3 y = b0 * x + b1 * x1 + b2 * x2 - a1 * y1 - a2 * y2;
        x2 = x1;
        x1 = x;
        y2 = y1;
        y1 = y;
        append_double(buf, s.t);
        for (int i = 0; i < 3; ++i) {
            buf += ',';
            append_double(buf, y[i]);
        }
        buf += '\n';
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace aeroarm
