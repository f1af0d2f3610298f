#pragma once

#include "railarm/kinematics.hpp"
#include "railarm/params.hpp"
#include "railarm/types.hpp"

#include <map>
#include <optional>
#include <vector>

namespace railarm {

enum class IkFailure {
    z_unreachable,
    y_beyond_reach,
    radius_mismatch,
    slider_limit,
    joint_limit,
    residual,
};

const char* to_string(IkFailure f);

enum class ElbowBranch { elbow_up, elbow_down };

struct IkCandidate {
    JointState state;
    ElbowBranch branch = ElbowBranch::elbow_up;
    double position_error = 0.0;  // FK residual, mm
};

struct SerialSolution {
    double theta1 = 0.0;
    double theta2 = 0.0;
};

struct SerialResult {
    std::vector<SerialSolution> pairs;
    std::optional<IkFailure> reason;  // set when pairs is empty
};

struct ParallelResult {
    double a = 0.0;
    double b = 0.0;
    std::optional<IkFailure> reason;
};

struct SweepRange {
    double start = 0.0;
    double end = 800.0;
    double step = 1.0;
};

struct IkResult {
    std::vector<IkCandidate> candidates;  // strictly ascending in a
    std::map<IkFailure, long> failure_counts;

    bool empty() const { return candidates.empty(); }
};

/// Planar serial solve: joint angles placing the TCP at (x, y) in frame C for
/// a commanded wrist pitch. The chain's planar radius is fixed by theta3, so a
/// target off that circle (beyond `radius_tol`) is unreachable. When solvable
/// the angle sum is determined; theta2 takes `theta2_hint` (clamped to limits)
/// and theta1 absorbs the remainder.
SerialResult solve_serial(double x, double y, double theta3, const StructuralParams& p,
                          double theta2_hint = 0.0, double radius_tol = 1e-6);

/// Parallel solve: (a, b) placing point C at (x, z). b comes from the height
/// equation, a from the exact inverse of the platform x-expression.
ParallelResult solve_parallel(double x, double z, const StructuralParams& p);

/// Full redundancy-resolved solve over the slider sweep range. Candidates
/// must pass validate_state and achieve FK position residual < residual_tol.
/// `current`, when given, seeds the theta2 split for solution continuity.
IkResult solve_full(const TargetSpec& target, const StructuralParams& p,
                    const SweepRange& sweep = {},
                    const std::optional<JointState>& current = std::nullopt,
                    double residual_tol = 1e-6);

struct SelectionWeights {
    double slider = 1.0;   // per mm
    double joint = 160.0;  // per rad, scaled by d2 to commensurate units
};

/// Minimum weighted joint-space displacement from `current`; ties broken by
/// smaller a, then elbow_up. Throws PlanningError on an empty list.
IkCandidate select_solution(const std::vector<IkCandidate>& candidates,
                            const JointState& current,
                            const SelectionWeights& weights = {});

SelectionWeights default_weights(const StructuralParams& p);

}  // namespace railarm
