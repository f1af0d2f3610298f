#include "railarm/params.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace railarm {

using nlohmann::json;

Validity validate_state(const JointState& q, const StructuralParams& p) {
    Validity v;
    auto fail = [&](const std::string& msg) {
        v.ok = false;
        v.violations.push_back(msg);
    };

    const double vals[] = {q.a, q.b, q.theta1, q.theta2, q.theta3, q.theta4};
    for (double x : vals)
        if (!std::isfinite(x)) {
            fail("non-finite joint value");
            return v;
        }

    if (q.a < p.a_min || q.a > p.a_max) fail("a outside travel limits");
    if (q.b < p.b_min || q.b > p.b_max) fail("b outside separation limits");
    if (std::abs(p.half_sep(q.b)) > p.d1) fail("b outside sqrt domain");
    if (q.a + q.b + p.carriage_allowance > p.rail_length)
        fail("sliders exceed rail length");

    const double th[] = {q.theta1, q.theta2, q.theta3, q.theta4};
    static const char* names[] = {"theta1 limit", "theta2 limit", "theta3 limit", "theta4 limit"};
    for (int i = 0; i < 4; ++i)
        if (th[i] < p.theta_limits[i].lo || th[i] > p.theta_limits[i].hi) fail(names[i]);

    return v;
}

void validate_params(const StructuralParams& p) {
    auto require = [](bool cond, const char* msg) {
        if (!cond) throw ConfigError(std::string("invalid parameters: ") + msg);
    };
    require(p.d1 > 0 && p.d2 > 0 && p.d3 > 0 && p.d4 > 0, "link lengths must be positive");
    require(p.rail_length > 0, "rail_length must be positive");
    require(p.a_min >= 0 && p.a_min < p.a_max, "require 0 <= a_min < a_max");
    require(p.b_min >= 0, "b_min must be non-negative");
    require(p.b_max <= p.b_sep_bound() + 1e-12, "b_max exceeds sqrt domain");
    require(p.b_min < p.b_max, "require b_min < b_max");
    require(p.a_max + p.b_min + p.carriage_allowance <= p.rail_length,
            "slider travel does not fit on the rail");
    for (const auto& r : p.theta_limits)
        require(r.lo < r.hi, "theta limit min must be below max");
    require(p.v_max_slider > 0 && p.v_max_joint > 0, "velocity limits must be positive");
    require(p.accel_max > 0 && p.jerk_max > 0, "accel/jerk limits must be positive");
    require(p.e1 >= 0 && p.e2 >= 0 && p.e3 >= 0 && p.h >= 0, "offsets must be non-negative");
    require(p.stack_allowance >= 0, "stack_allowance must be non-negative");
}

void validate_controller(const ControllerConfig& c) {
    auto require = [](bool cond, const char* msg) {
        if (!cond) throw ConfigError(std::string("invalid controller config: ") + msg);
    };
    require(!c.segment_bounds.empty(), "segment_bounds empty");
    for (std::size_t i = 1; i < c.segment_bounds.size(); ++i)
        require(c.segment_bounds[i - 1] < c.segment_bounds[i],
                "segment_bounds not strictly increasing");
    require(c.gains.size() == c.segment_bounds.size(),
            "one gain triple required per segment");
    for (const auto& g : c.gains)
        require(g.kp >= 0 && g.ki >= 0 && g.kd >= 0, "gains must be non-negative");
    require(c.joint_gains.kp >= 0 && c.joint_gains.ki >= 0 && c.joint_gains.kd >= 0,
            "joint gains must be non-negative");
    require(c.loop_rate > 0, "loop_rate must be positive");
    for (const ScurveLimits* l : {&c.scurve_slider, &c.scurve_joint})
        require(l->v_max > 0 && l->a_max > 0 && l->j_max > 0, "scurve limits must be positive");
}

namespace {

template <typename T>
void get_if(const json& j, const char* key, T& out) {
    if (j.contains(key)) {
        try {
            out = j.at(key).get<T>();
        } catch (const json::exception&) {
            throw ConfigError(std::string("config field '") + key + "' has wrong type");
        }
    }
}

JointRange range_from(const json& j, const char* key, JointRange fallback) {
    if (!j.contains(key)) return fallback;
    const auto& a = j.at(key);
    if (!a.is_array() || a.size() != 2)
        throw ConfigError(std::string("config field '") + key + "' must be [lo, hi]");
    return {a[0].get<double>(), a[1].get<double>()};
}

ScurveLimits scurve_from(const json& j, ScurveLimits fallback) {
    ScurveLimits s = fallback;
    get_if(j, "v_max", s.v_max);
    get_if(j, "a_max", s.a_max);
    get_if(j, "j_max", s.j_max);
    return s;
}

}  // namespace

Config load_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    Config cfg;
    StructuralParams& p = cfg.structure;

    if (j.contains("links")) {
        const auto& l = j.at("links");
        get_if(l, "d1", p.d1);
        get_if(l, "d2", p.d2);
        get_if(l, "d3", p.d3);
        get_if(l, "d4", p.d4);
    }
    if (j.contains("offsets")) {
        const auto& o = j.at("offsets");
        get_if(o, "e1", p.e1);
        get_if(o, "e2", p.e2);
        get_if(o, "e3", p.e3);
        get_if(o, "e4", p.e4);
        get_if(o, "h", p.h);
    }
    // separation bound tracks the configured links unless overridden
    p.b_max = p.b_sep_bound();
    if (j.contains("rail")) {
        const auto& r = j.at("rail");
        get_if(r, "length", p.rail_length);
        get_if(r, "a_min", p.a_min);
        get_if(r, "a_max", p.a_max);
        get_if(r, "b_min", p.b_min);
        get_if(r, "b_max", p.b_max);
        get_if(r, "carriage_allowance", p.carriage_allowance);
    }
    if (j.contains("joints")) {
        const auto& jo = j.at("joints");
        p.theta_limits[0] = range_from(jo, "theta1", p.theta_limits[0]);
        p.theta_limits[1] = range_from(jo, "theta2", p.theta_limits[1]);
        p.theta_limits[2] = range_from(jo, "theta3", p.theta_limits[2]);
        p.theta_limits[3] = range_from(jo, "theta4", p.theta_limits[3]);
    }
    if (j.contains("limits")) {
        const auto& l = j.at("limits");
        get_if(l, "v_slider", p.v_max_slider);
        get_if(l, "v_joint", p.v_max_joint);
        get_if(l, "accel", p.accel_max);
        get_if(l, "jerk", p.jerk_max);
    }
    if (j.contains("body")) {
        get_if(j.at("body"), "stack_allowance", p.stack_allowance);
    } else {
        p.stack_allowance = p.d2;
    }

    ControllerConfig& c = cfg.controller;
    c.scurve_slider = ScurveLimits{p.v_max_slider, p.accel_max, p.jerk_max};
    c.anti_windup_command = p.accel_max;
    if (j.contains("controller")) {
        const auto& jc = j.at("controller");
        get_if(jc, "segments", c.segment_bounds);
        if (jc.contains("gains")) {
            c.gains.clear();
            for (const auto& g : jc.at("gains")) {
                PidGains pg;
                get_if(g, "kp", pg.kp);
                get_if(g, "ki", pg.ki);
                get_if(g, "kd", pg.kd);
                c.gains.push_back(pg);
            }
        }
        if (jc.contains("joint_gains")) {
            const auto& g = jc.at("joint_gains");
            get_if(g, "kp", c.joint_gains.kp);
            get_if(g, "ki", c.joint_gains.ki);
            get_if(g, "kd", c.joint_gains.kd);
        }
        get_if(jc, "loop_rate", c.loop_rate);
        if (jc.contains("scurve_slider")) c.scurve_slider = scurve_from(jc.at("scurve_slider"), c.scurve_slider);
        if (jc.contains("scurve_joint")) c.scurve_joint = scurve_from(jc.at("scurve_joint"), c.scurve_joint);
        get_if(jc, "anti_windup_command", c.anti_windup_command);
        get_if(jc, "settle_band_mm", c.settle_band_mm);
    }

    PlantParams& pl = cfg.plant;
    if (j.contains("plant")) {
        const auto& jp = j.at("plant");
        get_if(jp, "damping", pl.damping);
        get_if(jp, "feedforward", pl.feedforward);
        pl.ff_damping = pl.damping;
        get_if(jp, "ff_damping", pl.ff_damping);
    }

    validate_params(p);
    validate_controller(c);
    return cfg;
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_config(ss.str());
}

std::string serialize_config(const Config& cfg) {
    const StructuralParams& p = cfg.structure;
    const ControllerConfig& c = cfg.controller;
    json j;
    j["links"] = {{"d1", p.d1}, {"d2", p.d2}, {"d3", p.d3}, {"d4", p.d4}};
    j["offsets"] = {{"e1", p.e1}, {"e2", p.e2}, {"e3", p.e3}, {"e4", p.e4}, {"h", p.h}};
    j["rail"] = {{"length", p.rail_length}, {"a_min", p.a_min}, {"a_max", p.a_max},
                 {"b_min", p.b_min},        {"b_max", p.b_max},
                 {"carriage_allowance", p.carriage_allowance}};
    j["joints"] = {{"theta1", {p.theta_limits[0].lo, p.theta_limits[0].hi}},
                   {"theta2", {p.theta_limits[1].lo, p.theta_limits[1].hi}},
                   {"theta3", {p.theta_limits[2].lo, p.theta_limits[2].hi}},
                   {"theta4", {p.theta_limits[3].lo, p.theta_limits[3].hi}}};
    j["limits"] = {{"v_slider", p.v_max_slider}, {"v_joint", p.v_max_joint},
                   {"accel", p.accel_max},       {"jerk", p.jerk_max}};
    j["body"] = {{"stack_allowance", p.stack_allowance}};
    json gains = json::array();
    for (const auto& g : c.gains) gains.push_back({{"kp", g.kp}, {"ki", g.ki}, {"kd", g.kd}});
    j["controller"] = {{"segments", c.segment_bounds},
                       {"gains", gains},
                       {"joint_gains", {{"kp", c.joint_gains.kp}, {"ki", c.joint_gains.ki}, {"kd", c.joint_gains.kd}}},
                       {"loop_rate", c.loop_rate},
                       {"scurve_slider", {{"v_max", c.scurve_slider.v_max}, {"a_max", c.scurve_slider.a_max}, {"j_max", c.scurve_slider.j_max}}},
                       {"scurve_joint", {{"v_max", c.scurve_joint.v_max}, {"a_max", c.scurve_joint.a_max}, {"j_max", c.scurve_joint.j_max}}},
                       {"anti_windup_command", c.anti_windup_command},
                       {"settle_band_mm", c.settle_band_mm}};
    j["plant"] = {{"damping", cfg.plant.damping},
                  {"feedforward", cfg.plant.feedforward},
                  {"ff_damping", cfg.plant.ff_damping}};
    return j.dump(2);
}

std::uint64_t params_hash(const StructuralParams& p) {
    Config c;
    c.structure = p;
    const std::string s = serialize_config(c);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace railarm
