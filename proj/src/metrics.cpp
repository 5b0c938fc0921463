#include "aeroarm/metrics.hpp"

#include <cmath>
#include <cstddef>

#include "aeroarm/errors.hpp"

namespace aeroarm {

double energy_absorbed(double v_pre, double v_post, double m_total) {
    return 0.5 * m_total * (v_pre * v_pre - v_post * v_post);
}

ImpactMetrics impact_metrics(const SimLog& log, double m_total) {
    const auto& rows = log.samples;
    const std::size_t n = rows.size();

    std::size_t first = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].f_c.squaredNorm() > 0.0) {
            first = i;
            break;
        }
    }
    if (first == n) throw NoContact("log has no contact episode");

    std::size_t loss = n;
    for (std::size_t i = first + 1; i < n; ++i) {
        if (rows[i].f_c.squaredNorm() == 0.0) {
            loss = i;
            break;
        }
    }

    ImpactMetrics m;
    m.v_pre = std::abs(rows[first > 0 ? first - 1 : 0].v_world.x());
    if (loss < n) {
        const double window_end = rows[loss].t + 0.5;
        for (std::size_t i = loss; i < n && rows[i].t <= window_end; ++i) {
            if (rows[i].f_c.squaredNorm() > 0.0) break;  // rebound only, not recontact
            m.v_post = std::max(m.v_post, std::abs(rows[i].v_world.x()));
        }
    }
    for (std::size_t i = first; i < n; ++i)
        m.peak_accel = std::max(m.peak_accel, std::abs(rows[i].a_body.x()));
    m.E_c = energy_absorbed(m.v_pre, m.v_post, m_total);
    m.bounced = m.v_post > 0.05;
    return m;
}

}  // namespace aeroarm
