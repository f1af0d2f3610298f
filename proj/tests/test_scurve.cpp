#include "railarm/scurve.hpp"

#include <doctest.h>

#include <random>

using namespace railarm;

namespace {

void check_profile(double distance, const ScurveLimits& lim, double dt) {
    ScurveProfile prof = ScurveProfile::plan(distance, lim);
    auto samples = prof.sample(dt);
    REQUIRE(samples.size() >= 1);

    const double eps = 1e-9;
    for (const auto& s : samples) {
        CHECK(std::abs(s.velocity) <= lim.v_max * (1.0 + 1e-9) + eps);
        CHECK(std::abs(s.acceleration) <= lim.a_max * (1.0 + 1e-9) + eps);
    }
    // discrete jerk from second divided differences of velocity; the spacing
    // is non-uniform at the trailing partial step
    for (std::size_t i = 2; i < samples.size(); ++i) {
        const double dt1 = samples[i].t - samples[i - 1].t;
        const double dt0 = samples[i - 1].t - samples[i - 2].t;
        if (dt1 < 1e-9 || dt0 < 1e-9) continue;
        const double j =
            2.0 * ((samples[i].velocity - samples[i - 1].velocity) / dt1 -
                   (samples[i - 1].velocity - samples[i - 2].velocity) / dt0) / (dt0 + dt1);
        CHECK(std::abs(j) <= lim.j_max * (1.0 + 1e-6) + eps);
    }
    CHECK(std::abs(samples.back().position - distance) < 1e-6);
    CHECK(samples.front().velocity == 0.0);
    CHECK(std::abs(samples.back().velocity) < 1e-9);
}

}  // namespace

TEST_CASE("zero distance degenerates to a single zero sample") {
    ScurveProfile prof = ScurveProfile::plan(0.0, {100, 100, 100});
    auto s = prof.sample(0.01);
    REQUIRE(s.size() == 1);
    CHECK(s[0].position == 0.0);
    CHECK(s[0].velocity == 0.0);
    CHECK(prof.duration() == 0.0);
}

TEST_CASE("long move hits the cruise plateau and integrates consistently") {
    const ScurveLimits lim{100.0, 200.0, 1000.0};
    ScurveProfile prof = ScurveProfile::plan(2000.0, lim);
    auto samples = prof.sample(0.001);

    double peak = 0.0;
    for (const auto& s : samples) peak = std::max(peak, s.velocity);
    CHECK(peak == doctest::Approx(lim.v_max).epsilon(1e-6));

    // trapezoidal quadrature of velocity reproduces position
    double pos = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double dt = samples[i].t - samples[i - 1].t;
        pos += 0.5 * (samples[i].velocity + samples[i - 1].velocity) * dt;
        CHECK(std::abs(pos - samples[i].position) < 1e-3);
    }
    CHECK(std::abs(pos - 2000.0) < 1e-3);
}

TEST_CASE("short move never reaches cruise velocity") {
    const ScurveLimits lim{1000.0, 200.0, 500.0};
    ScurveProfile prof = ScurveProfile::plan(5.0, lim);
    double peak = 0.0;
    for (const auto& s : prof.sample(0.001)) peak = std::max(peak, s.velocity);
    CHECK(peak < lim.v_max);
    check_profile(5.0, lim, 0.001);
}

TEST_CASE("negative distances mirror positive ones") {
    const ScurveLimits lim{100.0, 300.0, 2000.0};
    ScurveProfile fwd = ScurveProfile::plan(42.0, lim);
    ScurveProfile rev = ScurveProfile::plan(-42.0, lim);
    CHECK(fwd.duration() == rev.duration());
    for (double t = 0.0; t <= fwd.duration(); t += fwd.duration() / 17.0)
        CHECK(fwd.at(t).position == doctest::Approx(-rev.at(t).position).epsilon(1e-12));
}

TEST_CASE("random profiles respect all limits") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(0.01, 5000.0);
    std::uniform_real_distribution<double> dv(1.0, 2000.0);
    std::uniform_real_distribution<double> da(1.0, 5000.0);
    std::uniform_real_distribution<double> dj(10.0, 50000.0);
    for (int i = 0; i < 100; ++i)
        check_profile(dist(rng), {dv(rng), da(rng), dj(rng)}, 1.0 / 60.0);
}

TEST_CASE("non-positive limits are rejected") {
    CHECK_THROWS_AS(ScurveProfile::plan(10.0, {0.0, 1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(ScurveProfile::plan(10.0, {1.0, -1.0, 1.0}), ConfigError);
}
