#include "railarm/kinematics.hpp"
#include "railarm/params.hpp"

#include <doctest.h>

#include "test_helpers.hpp"

#include <random>

using namespace railarm;

TEST_CASE("default configuration is valid") {
    Config cfg;
    CHECK_NOTHROW(validate_params(cfg.structure));
    CHECK_NOTHROW(validate_controller(cfg.controller));
    CHECK(cfg.structure.d1 == 393.0);
    CHECK(cfg.structure.rail_length == 1212.0);
}

TEST_CASE("load_config applies documented link values") {
    const char* doc = R"({
        "links": {"d1": 393, "d2": 160, "d3": 145, "d4": 118},
        "rail": {"length": 1212}
    })";
    Config cfg = load_config(doc);
    CHECK(cfg.structure.d1 == 393.0);
    CHECK(cfg.structure.d4 == 118.0);
    // omitted offsets fall back to documented defaults
    CHECK(cfg.structure.e1 == 40.0);
    CHECK(cfg.structure.e2 == 60.0);
    CHECK(cfg.structure.e3 == 60.0);
    CHECK(cfg.structure.e4 == 0.0);
    CHECK(cfg.structure.h == 50.0);
}

TEST_CASE("load_config rejects separation beyond the sqrt domain") {
    const char* doc = R"({"rail": {"b_max": 1786}})";
    CHECK_THROWS_WITH_AS(load_config(doc),
                         "invalid parameters: b_max exceeds sqrt domain", ConfigError);
}

TEST_CASE("load_config rejects malformed documents") {
    CHECK_THROWS_AS(load_config("{ not json"), ConfigError);
    CHECK_THROWS_AS(load_config(R"({"links": {"d1": "many"}})"), ConfigError);
    CHECK_THROWS_AS(load_config(R"({"links": {"d1": -1}})"), ConfigError);
}

TEST_CASE("serialize/load round trip") {
    Config cfg;
    cfg.structure.d3 = 150.25;
    cfg.structure.e4 = 12.5;
    cfg.structure.theta_limits[1] = {-1.25, 2.5};
    cfg.controller.gains[0].kp = 123.0;
    cfg.plant.damping = 0.75;
    Config back = load_config(serialize_config(cfg));
    CHECK(serialize_config(back) == serialize_config(cfg));
}

TEST_CASE("validate_state flags each documented violation") {
    StructuralParams p;

    JointState origin;  // all zeros, a_min = 0
    origin.b = p.b_min;
    CHECK(validate_state(origin, p).ok);

    JointState q = origin;
    q.b = p.b_sep_bound() + 1.0;
    Validity v = validate_state(q, p);
    CHECK_FALSE(v.ok);
    bool mentions_sqrt = false;
    for (const auto& s : v.violations) mentions_sqrt |= s.find("sqrt domain") != std::string::npos;
    CHECK(mentions_sqrt);

    q = origin;
    q.theta2 = p.theta_limits[1].hi + 0.01;
    v = validate_state(q, p);
    CHECK_FALSE(v.ok);
    CHECK(v.violations.front() == "theta2 limit");

    q = origin;
    q.a = 700.0;
    q.b = 600.0;  // 700 + 600 + allowance > 1212
    v = validate_state(q, p);
    CHECK_FALSE(v.ok);
    CHECK(v.violations.front() == "sliders exceed rail length");
}

TEST_CASE("valid states always map to finite poses") {
    StructuralParams p;
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const JointState q = testing::random_state(rng, p);
        const Pose pose = full_fk(q, p);
        CHECK(pose.translation.allFinite());
        CHECK(pose.rotation.allFinite());
    }
    // and a sqrt-domain violation is exactly what makes the FK throw
    JointState bad;
    bad.b = p.b_sep_bound() + 10.0;
    CHECK_FALSE(validate_state(bad, p).ok);
    CHECK_THROWS_AS(full_fk(bad, p), DomainError);
}

TEST_CASE("params hash tracks structural changes only") {
    Config a, b;
    CHECK(params_hash(a.structure) == params_hash(b.structure));
    b.structure.d2 += 1.0;
    CHECK(params_hash(a.structure) != params_hash(b.structure));
}
