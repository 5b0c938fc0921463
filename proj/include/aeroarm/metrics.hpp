#pragma once

#include "aeroarm/rollout.hpp"

namespace aeroarm {

/// Outcome of one wall-impact episode. E_c follows from the kinetic
/// energy balance of the platform alone.
struct ImpactMetrics {
    double v_pre = 0.0;      // m/s
    double v_post = 0.0;     // m/s
    double E_c = 0.0;        // J
    double peak_accel = 0.0; // m/s²
    bool bounced = false;
};

/// 0.5 * m_total * (v_pre^2 - v_post^2).
double energy_absorbed(double v_pre, double v_post, double m_total);

/// Analyzes the first contact episode of the log: v_pre is |v_x| at the
/// last sample before contact, v_post the rebound peak |v_x| within 0.5 s
/// after contact loss and before any recontact (0 while contact persists),
/// peak_accel the largest |a_x| from first contact on, and bounced means
/// v_post > 0.05 m/s. Throws NoContact when the log has no episode.
ImpactMetrics impact_metrics(const SimLog& log, double m_total);

}  // namespace aeroarm
