#include "railarm/scurve.hpp"

#include <cmath>

namespace railarm {

ScurveProfile ScurveProfile::plan(double distance, const ScurveLimits& lim) {
    if (!(lim.v_max > 0) || !(lim.a_max > 0) || !(lim.j_max > 0))
        throw ConfigError("scurve: limits must be positive");

    ScurveProfile prof;
    prof.sign_ = distance < 0 ? -1.0 : 1.0;
    prof.distance_ = std::abs(distance);
    const double D = prof.distance_;
    if (D == 0.0) return prof;  // single zero sample

    const double j = lim.j_max;
    const double A = lim.a_max;
    const double V = lim.v_max;

    // jerk time tj, accel plateau ta, peak velocity vp
    double tj, ta, vp;
    if (V * j >= A * A) {
        tj = A / j;
        ta = V / A - tj;
    } else {
        tj = std::sqrt(V / j);
        ta = 0.0;
    }
    vp = V;

    double d_acc = vp * (2.0 * tj + ta) / 2.0;  // distance of one accel ramp
    double tv;
    if (2.0 * d_acc <= D) {
        tv = (D - 2.0 * d_acc) / vp;
    } else {
        tv = 0.0;
        // shrink the peak velocity until the two ramps cover D exactly
        const double vp_amax = (-A * A / j + std::sqrt(std::pow(A * A / j, 2) + 4.0 * D * A)) / 2.0;
        if (vp_amax >= A * A / j) {
            vp = vp_amax;
            tj = A / j;
            ta = vp / A - tj;
        } else {
            tj = std::cbrt(D / (2.0 * j));
            ta = 0.0;
            vp = j * tj * tj;
        }
    }

    const double jerks[7] = {j, 0.0, -j, 0.0, -j, 0.0, j};
    const double durations[7] = {tj, ta, tj, tv, tj, ta, tj};

    double t = 0.0, p = 0.0, v = 0.0, a = 0.0;
    for (int i = 0; i < 7; ++i) {
        Phase& ph = prof.phases_[i];
        ph.t_start = t;
        ph.p0 = p;
        ph.v0 = v;
        ph.a0 = a;
        ph.j = jerks[i];
        ph.dt = durations[i];
        const double dt = ph.dt;
        p += v * dt + 0.5 * a * dt * dt + ph.j * dt * dt * dt / 6.0;
        v += a * dt + 0.5 * ph.j * dt * dt;
        a += ph.j * dt;
        t += dt;
    }
    prof.total_time_ = t;

    // absorb the closed-form rounding so the endpoint is exact
    const double scale = D / p;
    for (Phase& ph : prof.phases_) {
        ph.p0 *= scale;
        ph.v0 *= scale;
        ph.a0 *= scale;
        ph.j *= scale;
    }
    return prof;
}

ScurveProfile::Sample ScurveProfile::at(double t) const {
    Sample s;
    if (distance_ == 0.0) return s;
    if (t <= 0.0) {
        s.t = t;
        return s;
    }
    if (t >= total_time_) {
        s.t = t;
        s.position = sign_ * distance_;
        return s;
    }
    const Phase* ph = &phases_[0];
    for (const Phase& cand : phases_) {
        if (t >= cand.t_start) ph = &cand;
    }
    const double dt = t - ph->t_start;
    s.t = t;
    s.position = sign_ * (ph->p0 + ph->v0 * dt + 0.5 * ph->a0 * dt * dt + ph->j * dt * dt * dt / 6.0);
    s.velocity = sign_ * (ph->v0 + ph->a0 * dt + 0.5 * ph->j * dt * dt);
    s.acceleration = sign_ * (ph->a0 + ph->j * dt);
    s.jerk = sign_ * ph->j;
    return s;
}

std::vector<ScurveProfile::Sample> ScurveProfile::sample(double dt) const {
    if (!(dt > 0)) throw ConfigError("scurve: dt must be positive");
    std::vector<Sample> out;
    if (distance_ == 0.0) {
        out.push_back({});
        return out;
    }
    for (double t = 0.0; t < total_time_; t += dt) out.push_back(at(t));
    out.push_back(at(total_time_));
    return out;
}

}  // namespace railarm
