#pragma once

#include "railarm/params.hpp"
#include "railarm/types.hpp"

#include <array>
#include <vector>

namespace railarm {

/// Jerk-limited seven-phase velocity profile with zero boundary velocity.
/// Degenerates gracefully (no cruise, triangular acceleration) on short moves.
class ScurveProfile {
public:
    struct Sample {
        double t = 0.0;
        double position = 0.0;
        double velocity = 0.0;
        double acceleration = 0.0;
        double jerk = 0.0;
    };

    /// Plans a move of signed `distance` under `limits`. Throws ConfigError on
    /// non-positive limits.
    static ScurveProfile plan(double distance, const ScurveLimits& limits);

    double duration() const { return total_time_; }
    double distance() const { return sign_ * distance_; }

    Sample at(double t) const;

    /// Samples at fixed dt; the final sample lands exactly on duration().
    std::vector<Sample> sample(double dt) const;

private:
    struct Phase {
        double t_start = 0.0;
        double p0 = 0.0, v0 = 0.0, a0 = 0.0, j = 0.0;
        double dt = 0.0;
    };

    double sign_ = 1.0;
    double distance_ = 0.0;  // magnitude
    double total_time_ = 0.0;
    std::array<Phase, 7> phases_{};
};

}  // namespace railarm
