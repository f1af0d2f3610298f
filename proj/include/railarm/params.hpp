#pragma once

#include "railarm/types.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace railarm {

struct JointRange {
    double lo = 0.0;
    double hi = 0.0;
};

struct ScurveLimits {
    double v_max = 0.0;  // mm/s or rad/s
    double a_max = 0.0;
    double j_max = 0.0;
};

struct PidGains {
    double kp = 0.0;
    double ki = 0.0;
    double kd = 0.0;
};

/// Geometric constants and travel limits of the arm.
struct StructuralParams {
    // link lengths, mm
    double d1 = 393.0;
    double d2 = 160.0;
    double d3 = 145.0;
    double d4 = 118.0;

    // mounting offsets, mm (absent from the published numerics; toolkit defaults)
    double e1 = 40.0;
    double e2 = 60.0;
    double e3 = 60.0;
    double e4 = 0.0;   // lateral offset of point C from the rail axis
    double h = 50.0;   // slider-block height

    double rail_length = 1212.0;
    double a_min = 0.0;
    double a_max = 800.0;
    double b_min = 60.0;
    double b_max = 786.0;  // 2*d1 - e3 + e2 at defaults
    double carriage_allowance = 40.0;

    // theta1..theta4 limits, radians
    std::array<JointRange, 4> theta_limits{
        JointRange{-M_PI, M_PI},
        JointRange{-2.62, 2.62},
        JointRange{-M_PI / 2.0, M_PI / 2.0},
        JointRange{-M_PI, M_PI},
    };

    double v_max_slider = 1500.0;  // mm/s (1.5 m/s rated top speed)
    double v_max_joint = 3.0;      // rad/s
    double accel_max = 3000.0;     // mm/s^2, slider class
    double jerk_max = 30000.0;     // mm/s^3, slider class

    // upward reach of the serial stack above point C, used by body_height
    double stack_allowance = 160.0;  // defaults to d2

    // derived helpers -------------------------------------------------------

    /// Half of the chord subtended by the linkage: (b + e3 - e2) / 2.
    double half_sep(double b) const { return (b + e3 - e2) / 2.0; }

    /// Height of point C above the rail origin for a given separation b.
    double zc(double b) const {
        const double u = half_sep(b);
        const double s = d1 * d1 - u * u;
        if (s < -1e-9) throw DomainError("zc: separation outside sqrt domain");
        return std::sqrt(std::max(s, 0.0)) + h + e1;
    }

    double zc_min() const { return h + e1; }
    double zc_max() const { return d1 + h + e1; }

    double b_sep_bound() const { return 2.0 * d1 - e3 + e2; }
};

struct ControllerConfig {
    // distance-to-target breakpoints, mm; boundary values belong to the lower segment
    std::vector<double> segment_bounds{10.0, 500.0, 1212.0};
    std::vector<PidGains> gains{
        {900.0, 60.0, 70.0},   // docking, [0, 10]
        {700.0, 30.0, 60.0},   // mid, (10, 500]
        {500.0, 10.0, 50.0},   // far, (500, 1212]
    };
    PidGains joint_gains{900.0, 60.0, 70.0};
    double loop_rate = 60.0;  // Hz
    ScurveLimits scurve_slider{1500.0, 3000.0, 30000.0};
    ScurveLimits scurve_joint{3.0, 10.0, 100.0};
    double anti_windup_command = 3000.0;  // |ki * integral| clamp, command units
    double settle_band_mm = 0.5;
};

/// Per-axis plant model parameters (stand-in for the physical drives).
struct PlantParams {
    double damping = 0.5;  // 1/s viscous term
    bool feedforward = true;
    double ff_damping = 0.5;  // nominal damping used by the feedforward path
};

struct Config {
    StructuralParams structure;
    ControllerConfig controller;
    PlantParams plant;
};

struct Validity {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Checks every JointState invariant under p. Total function.
Validity validate_state(const JointState& q, const StructuralParams& p);

/// Checks StructuralParams invariants; throws ConfigError naming the constraint.
void validate_params(const StructuralParams& p);
void validate_controller(const ControllerConfig& c);

/// Parses and validates a JSON configuration document.
Config load_config(const std::string& json_text);
Config load_config_file(const std::string& path);
std::string serialize_config(const Config& cfg);

/// FNV-1a hash of the serialized structural parameters.
std::uint64_t params_hash(const StructuralParams& p);

}  // namespace railarm
