// railarm: kinematics, workspace, planning and tracking-simulation CLI for the
// rail-mounted hybrid arm. See README.md for the subcommand reference.

#include "railarm/ik.hpp"
#include "railarm/kinematics.hpp"
#include "railarm/motion.hpp"
#include "railarm/params.hpp"
#include "railarm/simctl.hpp"
#include "railarm/workspace.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace railarm;

std::vector<double> parse_numbers(const std::string& csv, std::size_t expect, const char* what) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    if (out.size() != expect)
        throw ConfigError(std::string(what) + ": expected " + std::to_string(expect) +
                          " comma-separated numbers");
    return out;
}

Config load(const std::string& path) {
    if (path.empty()) {
        Config cfg;
        validate_params(cfg.structure);
        validate_controller(cfg.controller);
        return cfg;
    }
    return load_config_file(path);
}

void print_pose(const Pose& pose) {
    std::cout << std::setprecision(17);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) std::cout << pose.rotation(r, c) << ' ';
    std::cout << pose.translation.x() << ' ' << pose.translation.y() << ' '
              << pose.translation.z() << '\n';
}

int run_fk(const std::string& config, const std::string& state_csv, bool deg) {
    Config cfg = load(config);
    auto v = parse_numbers(state_csv, 6, "--state");
    JointState q{v[0], v[1], v[2], v[3], v[4], v[5]};
    if (deg) {
        q.theta1 = deg2rad(q.theta1);
        q.theta2 = deg2rad(q.theta2);
        q.theta3 = deg2rad(q.theta3);
        q.theta4 = deg2rad(q.theta4);
    }
    Validity val = validate_state(q, cfg.structure);
    if (!val.ok) {
        std::cerr << "invalid state:";
        for (const auto& s : val.violations) std::cerr << " " << s << ";";
        std::cerr << '\n';
        return 1;
    }
    print_pose(full_fk(q, cfg.structure));
    return 0;
}

int run_ik(const std::string& config, const std::string& target_csv, double theta3,
           double theta4, bool deg, const std::string& sweep_csv,
           const std::string& current_csv, const std::string& out_path) {
    Config cfg = load(config);
    auto t = parse_numbers(target_csv, 3, "--target");
    TargetSpec target;
    target.position = Eigen::Vector3d(t[0], t[1], t[2]);
    target.theta3 = deg ? deg2rad(theta3) : theta3;
    target.theta4 = deg ? deg2rad(theta4) : theta4;

    SweepRange sweep;
    if (!sweep_csv.empty()) {
        auto s = parse_numbers(sweep_csv, 3, "--sweep");
        sweep = {s[0], s[1], s[2]};
    }
    std::optional<JointState> current;
    if (!current_csv.empty()) {
        auto c = parse_numbers(current_csv, 6, "--current");
        current = JointState{c[0], c[1], c[2], c[3], c[4], c[5]};
        if (deg) {
            current->theta1 = deg2rad(current->theta1);
            current->theta2 = deg2rad(current->theta2);
            current->theta3 = deg2rad(current->theta3);
            current->theta4 = deg2rad(current->theta4);
        }
    }

    IkResult result = solve_full(target, cfg.structure, sweep, current);
    if (result.empty()) {
        std::cerr << "unreachable:";
        for (const auto& [reason, count] : result.failure_counts)
            std::cerr << " " << to_string(reason) << " x" << count << ";";
        std::cerr << '\n';
        return 1;
    }

    std::ostringstream csv;
    csv << std::setprecision(17);
    csv << "a_mm,b_mm,theta1,theta2,theta3,theta4,branch,position_error_mm\n";
    for (const auto& c : result.candidates)
        csv << c.state.a << ',' << c.state.b << ',' << c.state.theta1 << ',' << c.state.theta2
            << ',' << c.state.theta3 << ',' << c.state.theta4 << ','
            << (c.branch == ElbowBranch::elbow_up ? "elbow_up" : "elbow_down") << ','
            << c.position_error << '\n';
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot write candidate list: " + out_path);
        out << csv.str();
    }

    const JointState ref = current.value_or(JointState{});
    IkCandidate sel = select_solution(result.candidates, ref, default_weights(cfg.structure));
    std::cout << std::setprecision(17);
    std::cout << sel.state.a << ' ' << sel.state.b << ' ' << sel.state.theta1 << ' '
              << sel.state.theta2 << ' ' << sel.state.theta3 << ' ' << sel.state.theta4 << '\n';
    return 0;
}

int run_workspace(const std::string& config, std::size_t n, std::uint64_t seed, double voxel,
                  const std::string& out_path) {
    Config cfg = load(config);
    WorkspaceCloud cloud = sample_workspace(cfg.structure, n, seed);
    if (!out_path.empty()) export_cloud(cloud, out_path, cfg.structure);
    Aabb box = envelope(cloud);
    const double volume = voxel_volume(cloud, voxel);
    std::cout << std::setprecision(17);
    std::cout << "samples " << cloud.sample_count() << '\n';
    std::cout << "envelope_min " << box.min.x() << ' ' << box.min.y() << ' ' << box.min.z() << '\n';
    std::cout << "envelope_max " << box.max.x() << ' ' << box.max.y() << ' ' << box.max.z() << '\n';
    std::cout << "extent " << box.extent().x() << ' ' << box.extent().y() << ' '
              << box.extent().z() << '\n';
    std::cout << "voxel_volume_mm3 " << volume << '\n';
    return 0;
}

int run_simulate(const std::string& config, const std::string& traj_path,
                 const std::string& out_path) {
    Config cfg = load(config);
    JointTrajectory plan = import_trajectory(traj_path, cfg.structure);
    if (plan.empty()) {
        std::cerr << "empty trajectory: " << traj_path << '\n';
        return 1;
    }
    TrackingReport report = run_tracking(plan, cfg.controller, cfg.plant, cfg.structure);
    if (!out_path.empty()) export_tracking_log(report, out_path);
    std::cout << report_summary_json(report) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rail-mounted hybrid arm toolkit"};
    app.require_subcommand(1);

    std::string config, state_csv, target_csv, sweep_csv, current_csv, out_path, traj_path;
    bool deg = false;
    double theta3 = 0.0, theta4 = 0.0, voxel = 10.0;
    std::size_t n = 1000;
    std::uint64_t seed = 0;

    auto* fk = app.add_subcommand("fk", "forward kinematics: pose of the TCP");
    fk->add_option("--config", config, "configuration JSON");
    fk->add_option("--state", state_csv, "a,b,t1,t2,t3,t4")->required();
    fk->add_flag("--deg", deg, "angles in degrees");

    auto* ik = app.add_subcommand("ik", "inverse kinematics with slider sweep");
    ik->add_option("--config", config, "configuration JSON");
    ik->add_option("--target", target_csv, "x,y,z (mm, world frame)")->required();
    ik->add_option("--theta3", theta3, "commanded wrist pitch")->required();
    ik->add_option("--theta4", theta4, "commanded wrist roll");
    ik->add_option("--sweep", sweep_csv, "start,end,step (mm)");
    ik->add_option("--current", current_csv, "seed state a,b,t1,t2,t3,t4");
    ik->add_option("--out", out_path, "candidate list CSV");
    ik->add_flag("--deg", deg, "angles in degrees");

    auto* ws = app.add_subcommand("workspace", "Monte Carlo workspace sampling");
    ws->add_option("--config", config, "configuration JSON");
    ws->add_option("--n", n, "sample count")->required();
    ws->add_option("--seed", seed, "RNG seed")->required();
    ws->add_option("--voxel", voxel, "voxel size, mm");
    ws->add_option("--out", out_path, "cloud CSV (+ .meta.json sidecar)");

    auto* plan = app.add_subcommand("plan", "trajectory planners");
    plan->require_subcommand(1);
    std::string start_csv, end_csv, about_csv, q0_csv;
    std::size_t n_points = 10, n_steps = 20;
    double base_velocity = 0.0, duration = 1.0, clearance = 0.0, travel_a = 0.0;
    double target_t3 = 0.0, target_t4 = 0.0;

    auto* line = plan->add_subcommand("line", "straight Cartesian line");
    line->add_option("--config", config, "configuration JSON");
    line->add_option("--start", start_csv, "x,y,z")->required();
    line->add_option("--end", end_csv, "x,y,z")->required();
    line->add_option("--theta3", theta3, "commanded wrist pitch");
    line->add_option("--theta4", theta4, "commanded wrist roll");
    line->add_option("--n", n_points, "waypoint count");
    line->add_option("--out", out_path, "trajectory CSV")->required();

    auto* hold = plan->add_subcommand("hold", "pose hold under base motion");
    hold->add_option("--config", config, "configuration JSON");
    hold->add_option("--state", q0_csv, "initial a,b,t1,t2,t3,t4")->required();
    hold->add_option("--base-velocity", base_velocity, "mm/s along the rail")->required();
    hold->add_option("--duration", duration, "s");
    hold->add_option("--out", out_path, "trajectory CSV")->required();

    auto* duck = plan->add_subcommand("duck", "split, traverse, rise");
    duck->add_option("--config", config, "configuration JSON");
    duck->add_option("--state", q0_csv, "initial a,b,t1,t2,t3,t4")->required();
    duck->add_option("--clearance", clearance, "obstacle clearance height, mm")->required();
    duck->add_option("--travel-a", travel_a, "slider target after the pass, mm")->required();
    duck->add_option("--out", out_path, "trajectory CSV")->required();

    auto* reorient = plan->add_subcommand("reorient", "rotate wrist about a fixed point");
    reorient->add_option("--config", config, "configuration JSON");
    reorient->add_option("--state", q0_csv, "initial a,b,t1,t2,t3,t4")->required();
    reorient->add_option("--about", about_csv, "pivot x,y,z (defaults to FK of state)");
    reorient->add_option("--theta3", target_t3, "target wrist pitch")->required();
    reorient->add_option("--theta4", target_t4, "target wrist roll");
    reorient->add_option("--n", n_steps, "step count");
    reorient->add_option("--out", out_path, "trajectory CSV")->required();

    auto* sim = app.add_subcommand("simulate", "closed-loop tracking simulation");
    sim->add_option("--config", config, "configuration JSON");
    sim->add_option("--traj", traj_path, "trajectory CSV to track")->required();
    sim->add_option("--out", out_path, "tracking log CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (fk->parsed()) return run_fk(config, state_csv, deg);
        if (ik->parsed()) return run_ik(config, target_csv, theta3, theta4, deg, sweep_csv,
                                        current_csv, out_path);
        if (ws->parsed()) return run_workspace(config, n, seed, voxel, out_path);
        if (sim->parsed()) return run_simulate(config, traj_path, out_path);

        if (plan->parsed()) {
            Config cfg = load(config);
            JointTrajectory traj;
            if (line->parsed()) {
                auto s = parse_numbers(start_csv, 3, "--start");
                auto e = parse_numbers(end_csv, 3, "--end");
                TargetSpec a, b;
                a.position = Eigen::Vector3d(s[0], s[1], s[2]);
                b.position = Eigen::Vector3d(e[0], e[1], e[2]);
                a.theta3 = b.theta3 = theta3;
                a.theta4 = b.theta4 = theta4;
                traj = interpolate_line(a, b, n_points, cfg.structure);
            } else {
                auto qv = parse_numbers(q0_csv, 6, "--state");
                JointState q0{qv[0], qv[1], qv[2], qv[3], qv[4], qv[5]};
                if (hold->parsed()) {
                    PoseHoldPlan ph = plan_pose_hold(q0, base_velocity, duration,
                                                     1.0 / cfg.controller.loop_rate, cfg.structure);
                    std::cout << std::setprecision(17) << "t_end_s " << ph.t_end << '\n'
                              << "limiting_constraint " << ph.limiting_constraint << '\n';
                    traj = ph.trajectory;
                } else if (duck->parsed()) {
                    traj = plan_duck_under(q0, clearance, travel_a, cfg.structure);
                } else {
                    Eigen::Vector3d about = full_fk(q0, cfg.structure).translation;
                    if (!about_csv.empty()) {
                        auto av = parse_numbers(about_csv, 3, "--about");
                        about = Eigen::Vector3d(av[0], av[1], av[2]);
                    }
                    traj = plan_reorient(about, q0, target_t3, target_t4, n_steps, cfg.structure);
                }
            }
            export_trajectory(traj, out_path);
            std::cout << "points " << traj.size() << '\n';
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 2;
    } catch (const PlanningError& e) {
        std::cerr << "planning error: " << e.what() << '\n';
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
