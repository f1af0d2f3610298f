#pragma once

#include "railarm/motion.hpp"
#include "railarm/params.hpp"
#include "railarm/scurve.hpp"
#include "railarm/types.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace railarm {

struct PidState {
    double integral = 0.0;
    double prev_error = 0.0;
    bool primed = false;
};

/// One tick of the gain-scheduled PID. The gain triple is selected by |error|
/// against segment_bounds (boundary values belong to the lower segment); the
/// integrator survives gain switches and is clamped so the integral term never
/// exceeds anti_windup_command.
double segmented_pid_step(double error, PidState& state, const ControllerConfig& cfg, double dt);

/// Plain PID with the same integrator/anti-windup behaviour, fixed gains.
double pid_step(double error, PidState& state, const PidGains& gains,
                double anti_windup_command, double dt);

/// Index of the gain segment serving |error|.
std::size_t segment_index(double abs_error, const std::vector<double>& bounds);

struct PlantState {
    double position = 0.0;
    double velocity = 0.0;
};

struct AxisLimits {
    double v_max = 0.0;
    double a_max = 0.0;
};

/// Damped, saturated double integrator: accel = clamp(command - damping*v),
/// semi-implicit Euler.
PlantState plant_step(const PlantState& state, double command, double dt,
                      double damping, const AxisLimits& limits);

struct TrackingTick {
    double t = 0.0;
    Eigen::Vector3d target = Eigen::Vector3d::Zero();
    Eigen::Vector3d actual = Eigen::Vector3d::Zero();
    std::array<double, 6> q_target{};
    std::array<double, 6> q_actual{};
    std::array<double, 6> command{};
};

struct TrackingReport {
    std::vector<TrackingTick> log;
    double rmse = 0.0;       // mm, Cartesian
    double max_error = 0.0;  // mm
    double settling_time = 0.0;
    bool settled = false;
    std::size_t ticks = 0;
};

/// Closed-loop simulation of all six axes at cfg.loop_rate. The plan is
/// re-timed with an S-curve over its Cartesian path length; sliders run the
/// segmented PID, revolute joints plain PID, both optionally with profile
/// feedforward. Deterministic. Throws DomainError on plant divergence.
TrackingReport run_tracking(const JointTrajectory& plan, const ControllerConfig& cfg,
                            const PlantParams& plant, const StructuralParams& p,
                            double settle_extra_s = 1.0);

/// sqrt(mean(||target - actual||^2)) over Cartesian positions.
double compute_rmse(const std::vector<std::pair<Eigen::Vector3d, Eigen::Vector3d>>& log);
double compute_rmse(const std::vector<TrackingTick>& log);

/// Per-tick log CSV: t_s,axis,target,actual,command.
void export_tracking_log(const TrackingReport& report, const std::string& path);

/// Report summary as a JSON string: rmse_mm, max_error_mm, settling_time_s, ticks.
std::string report_summary_json(const TrackingReport& report);

}  // namespace railarm
