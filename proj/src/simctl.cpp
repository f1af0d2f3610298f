#include "railarm/simctl.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

namespace railarm {

std::size_t segment_index(double abs_error, const std::vector<double>& bounds) {
    for (std::size_t i = 0; i < bounds.size(); ++i)
        if (abs_error <= bounds[i]) return i;
    return bounds.size() - 1;
}

double pid_step(double error, PidState& state, const PidGains& g,
                double anti_windup_command, double dt) {
    if (!(dt > 0)) throw ConfigError("pid_step: dt must be positive");
    if (!state.primed) {
        state.prev_error = error;
        state.primed = true;
    }
    state.integral += error * dt;
    if (g.ki > 0.0) {
        const double cap = anti_windup_command / g.ki;
        state.integral = std::clamp(state.integral, -cap, cap);
    }
    const double derivative = (error - state.prev_error) / dt;
    state.prev_error = error;
    return g.kp * error + g.ki * state.integral + g.kd * derivative;
}

double segmented_pid_step(double error, PidState& state, const ControllerConfig& cfg, double dt) {
    const std::size_t idx = segment_index(std::abs(error), cfg.segment_bounds);
    return pid_step(error, state, cfg.gains[idx], cfg.anti_windup_command, dt);
}

PlantState plant_step(const PlantState& state, double command, double dt,
                      double damping, const AxisLimits& limits) {
    if (!(dt > 0)) throw ConfigError("plant_step: dt must be positive");
    const double accel = std::clamp(command - damping * state.velocity, -limits.a_max, limits.a_max);
    PlantState next;
    next.velocity = std::clamp(state.velocity + accel * dt, -limits.v_max, limits.v_max);
    next.position = state.position + next.velocity * dt;
    return next;
}

namespace {

using Vector6 = JointState::Vector6;

// Joint-space reference at path fraction s along the plan (by Cartesian arclength).
Vector6 plan_at_arclength(const JointTrajectory& plan, const std::vector<double>& cum, double s) {
    if (plan.points.size() == 1 || cum.back() == 0.0) return plan.points.front().q.as_vector();
    s = std::clamp(s, 0.0, cum.back());
    std::size_t k = 1;
    while (k + 1 < cum.size() && cum[k] < s) ++k;
    const double seg = cum[k] - cum[k - 1];
    const double f = seg > 0.0 ? (s - cum[k - 1]) / seg : 1.0;
    const Vector6 q0 = plan.points[k - 1].q.as_vector();
    const Vector6 q1 = plan.points[k].q.as_vector();
    return q0 + f * (q1 - q0);
}

}  // namespace

TrackingReport run_tracking(const JointTrajectory& plan, const ControllerConfig& cfg,
                            const PlantParams& plant, const StructuralParams& p,
                            double settle_extra_s) {
    if (plan.empty()) throw DomainError("run_tracking: empty plan");
    validate_controller(cfg);

    const double dt = 1.0 / cfg.loop_rate;

    // Cartesian arclength of the plan, then an S-curve time parameterization.
    std::vector<double> cum(plan.points.size(), 0.0);
    for (std::size_t i = 1; i < plan.points.size(); ++i)
        cum[i] = cum[i - 1] +
                 (plan.points[i].tcp.translation - plan.points[i - 1].tcp.translation).norm();
    const double path_length = cum.back();
    ScurveProfile profile = ScurveProfile::plan(path_length, cfg.scurve_slider);
    const double move_time = path_length > 0.0 ? profile.duration() : 0.0;
    const std::size_t n_ticks =
        static_cast<std::size_t>(std::ceil((move_time + settle_extra_s) / dt)) + 1;

    // reference joint vector per tick
    std::vector<Vector6> ref(n_ticks);
    for (std::size_t k = 0; k < n_ticks; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double s = path_length > 0.0 ? profile.at(t).position : 0.0;
        ref[k] = plan_at_arclength(plan, cum, s);
    }

    const AxisLimits slider_limits{p.v_max_slider, p.accel_max};
    const AxisLimits joint_limits{cfg.scurve_joint.v_max * 2.0, cfg.scurve_joint.a_max * 4.0};

    std::array<PlantState, 6> axes{};
    std::array<PidState, 6> pids{};
    for (int ax = 0; ax < 6; ++ax) axes[ax].position = ref[0][ax];

    TrackingReport report;
    report.log.reserve(n_ticks);

    std::array<double, 6> prev_vref{};
    for (std::size_t k = 0; k < n_ticks; ++k) {
        const double t = static_cast<double>(k) * dt;
        TrackingTick tick;
        tick.t = t;

        for (int ax = 0; ax < 6; ++ax) {
            const double target = ref[k][ax];
            const double error = target - axes[ax].position;

            double command = ax < 2 ? segmented_pid_step(error, pids[ax], cfg, dt)
                                    : pid_step(error, pids[ax], cfg.joint_gains,
                                               cfg.anti_windup_command, dt);
            if (plant.feedforward) {
                // profile feedforward from the sampled reference
                const double vref = k + 1 < n_ticks ? (ref[k + 1][ax] - ref[k][ax]) / dt : 0.0;
                const double aref = (vref - prev_vref[ax]) / dt;
                command += aref + plant.ff_damping * vref;
                prev_vref[ax] = vref;
            }

            // log the measured state, then apply the command for the next tick
            tick.q_target[ax] = target;
            tick.q_actual[ax] = axes[ax].position;
            tick.command[ax] = command;
            axes[ax] = plant_step(axes[ax], command, dt, plant.damping,
                                  ax < 2 ? slider_limits : joint_limits);
            if (!std::isfinite(axes[ax].position)) {
                throw DomainError("run_tracking: plant diverged at tick " + std::to_string(k));
            }
        }

        const JointState q_t = JointState::from_vector(ref[k]);
        JointState q_a;
        q_a.a = tick.q_actual[0];
        q_a.b = tick.q_actual[1];
        q_a.theta1 = tick.q_actual[2];
        q_a.theta2 = tick.q_actual[3];
        q_a.theta3 = tick.q_actual[4];
        q_a.theta4 = tick.q_actual[5];
        tick.target = full_fk(q_t, p).translation;
        tick.actual = full_fk(q_a, p).translation;
        report.log.push_back(tick);
    }

    report.ticks = report.log.size();
    report.rmse = compute_rmse(report.log);
    report.max_error = 0.0;
    for (const auto& tk : report.log)
        report.max_error = std::max(report.max_error, (tk.target - tk.actual).norm());

    // settling: first time the Cartesian error stays within the band to the end
    report.settled = false;
    report.settling_time = report.log.back().t;
    for (std::size_t k = report.log.size(); k-- > 0;) {
        if ((report.log[k].target - report.log[k].actual).norm() > cfg.settle_band_mm) {
            if (k + 1 < report.log.size()) {
                report.settled = true;
                report.settling_time = report.log[k + 1].t;
            }
            break;
        }
        if (k == 0) {
            report.settled = true;
            report.settling_time = 0.0;
        }
    }
    return report;
}

double compute_rmse(const std::vector<std::pair<Eigen::Vector3d, Eigen::Vector3d>>& log) {
    if (log.empty()) throw DomainError("compute_rmse: empty log");
    double acc = 0.0;
    for (const auto& [target, actual] : log) acc += (target - actual).squaredNorm();
    return std::sqrt(acc / static_cast<double>(log.size()));
}

double compute_rmse(const std::vector<TrackingTick>& log) {
    if (log.empty()) throw DomainError("compute_rmse: empty log");
    double acc = 0.0;
    for (const auto& tk : log) acc += (tk.target - tk.actual).squaredNorm();
    return std::sqrt(acc / static_cast<double>(log.size()));
}

void export_tracking_log(const TrackingReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write tracking log: " + path);
    out << std::setprecision(17);
    out << "t_s,axis,target,actual,command\n";
    static const char* axis_names[6] = {"a", "b", "theta1", "theta2", "theta3", "theta4"};
    for (const auto& tk : report.log)
        for (int ax = 0; ax < 6; ++ax)
            out << tk.t << ',' << axis_names[ax] << ',' << tk.q_target[ax] << ','
                << tk.q_actual[ax] << ',' << tk.command[ax] << '\n';
    if (!out) throw IoError("write failed: " + path);
}

std::string report_summary_json(const TrackingReport& report) {
    nlohmann::json j = {
        {"rmse_mm", report.rmse},
        {"max_error_mm", report.max_error},
        {"settling_time_s", report.settling_time},
        {"settled", report.settled},
        {"ticks", report.ticks},
    };
    return j.dump(2);
}

}  // namespace railarm
