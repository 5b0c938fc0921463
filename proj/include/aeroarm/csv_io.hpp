#pragma once

#include <string>

#include "aeroarm/rollout.hpp"

namespace aeroarm {

/// Fixed telemetry header; write_csv emits exactly these 24 columns.
inline constexpr char kCsvHeader[] =
    "t,px,py,pz,vx,vy,vz,ax,ay,az,wx,wy,wz,th1,th1_ref,th2,th2_ref,"
    "pa_x,pa_y,pa_z,fc_x,fc_y,fc_z,E_diss";

/// One row per sample after the header. Values carry 17 significant
/// digits, locale-independent, LF newlines. Throws IoError.
void write_csv(const SimLog& log, const std::string& path);

/// Reads a file produced by write_csv; values round-trip to the bit.
/// Only the per-sample columns are recoverable. Throws IoError on a
/// missing file, a foreign header, or a malformed row.
SimLog read_csv(const std::string& path);

/// Companion file with the body accelerations passed through a causal
/// second-order low-pass (default 20 Hz), for plotting against the raw
/// telemetry. Header: t,ax_f,ay_f,az_f.
void write_filtered_csv(const SimLog& log, const std::string& path,
                        double cutoff_hz = 20.0);

}  // namespace aeroarm
