#include <gtest/gtest.h>

#include <cmath>

#include "hycoalg/simulator.hpp"
#include "hycoalg/systems.hpp"
#include "oracles.hpp"

using namespace hycoalg;

namespace {

const SimConfig kLong{.dt_max = 1e-3, .max_jumps = 10000, .horizon = 100.0};

numeric::HermiteSegment ballistic(double g, double t0, double t1) {
  const auto x = [g](double t) { return make_vec({1.0 - 0.5 * g * t * t, -g * t}); };
  const auto d = [g](double t) { return make_vec({-g * t, -g}); };
  return {t0, t1, x(t0), x(t1), d(t0), d(t1)};
}

/// One mode with a single guard surface x1 = 0 entered with x2 <= 0.
std::shared_ptr<ClassicalHybridSystem> floor_system(VectorField field) {
  Vertex v{"v", Region{2, {[](const Vec& x) { return x[0]; }}}, std::move(field)};
  Edge e{"hit", "v", "v", Guard{[](const Vec& x) { return x[0]; }, [](const Vec& x) { return x[1] <= 0.0; }},
         [](const Vec& x) { return make_vec({0.0, -0.5 * x[1]}); }};
  return std::make_shared<ClassicalHybridSystem>(std::vector<Vertex>{v}, std::vector<Edge>{e});
}

}  // namespace

TEST(LocateEvent, BallisticCrossingMatchesQuadraticRoot) {
  const BouncingBall ball(10.0, 0.5);
  const Guard& guard = ball.hybrid()->edges().front().guard;
  const EventLocation loc = locate_event(ballistic(10.0, 0.4, 0.5), guard, SimConfig{});
  ASSERT_EQ(loc.kind, EventKind::crossing);
  EXPECT_NEAR(loc.t, oracle::impact_time(10.0, 1.0, 0.0), 1e-8);
  EXPECT_LE(std::abs(loc.x[0]), 1e-12);
}

TEST(LocateEvent, SegmentInsideDomainHasNoEvent) {
  const BouncingBall ball(10.0, 0.5);
  const Guard& guard = ball.hybrid()->edges().front().guard;
  EXPECT_EQ(locate_event(ballistic(10.0, 0.0, 0.1), guard, SimConfig{}).kind, EventKind::none);
}

TEST(LocateEvent, TangentialContactIsGrazing) {
  const Guard guard{[](const Vec& x) { return x[0]; }, {}};
  // x1 = (t - 0.5)^2 touches zero at t = 0.5 without crossing.
  const numeric::HermiteSegment seg{0.0, 1.0, make_vec({0.25, -1.0}), make_vec({0.25, 1.0}), make_vec({-1.0, 2.0}),
                                    make_vec({1.0, 2.0})};
  const EventLocation loc = locate_event(seg, guard, SimConfig{});
  EXPECT_EQ(loc.kind, EventKind::grazing);
  EXPECT_NEAR(loc.t, 0.5, 1e-6);
}

TEST(Simulate, BallFirstImpactAndReset) {
  const BouncingBall ball(10.0, 0.5);
  const auto res = simulate(*ball.coalgebra(), {"ball", make_vec({1.0, 0.0})}, kLong);
  const auto& ivs = res.execution.intervals;
  ASSERT_GE(ivs.size(), 2u);
  EXPECT_NEAR(ivs[0].end(), std::sqrt(0.2), 1e-8);
  EXPECT_NEAR(ivs[0].samples.back().x[1], -std::sqrt(20.0), 1e-8);
  EXPECT_NEAR(ivs[1].samples.front().x[1], 0.5 * std::sqrt(20.0), 1e-8);
  EXPECT_EQ(ivs[0].edge, "impact");
}

TEST(Simulate, BallZenoTruncationAndTail) {
  const BouncingBall ball(10.0, 0.5);
  const auto res = simulate(*ball.coalgebra(), {"ball", make_vec({1.0, 0.0})}, kLong);
  EXPECT_TRUE(res.zeno.is_zeno_flagged);
  EXPECT_EQ(res.execution.truncation, Truncation::zeno);
  EXPECT_TRUE(res.execution.domain().unbounded);
  EXPECT_NEAR(res.zeno.tau_infinity_estimate, oracle::ball_zeno_time(10.0, 0.5, 1.0, 0.0), 1e-3);
  ASSERT_TRUE(res.zeno.fitted_ratio.has_value());
  EXPECT_NEAR(*res.zeno.fitted_ratio, 0.5, 1e-3);
}

TEST(Simulate, ImpactTimesAndSpeedsFollowClosedForm) {
  const double g = 9.81, lambda = 0.7;
  const BouncingBall ball(g, lambda);
  const auto res = simulate(*ball.coalgebra(), {"ball", make_vec({2.0, 1.0})}, kLong);
  const auto& ivs = res.execution.intervals;
  ASSERT_GE(ivs.size(), 21u);
  double t = oracle::impact_time(g, 2.0, 1.0);
  double u = oracle::impact_speed(g, 2.0, 1.0);
  for (std::size_t j = 0; j < 20; ++j) {
    EXPECT_NEAR(ivs[j].end(), t, 1e-8) << "jump " << j;
    const double speed = -ivs[j].samples.back().x[1];
    if (j > 0) EXPECT_NEAR(speed / -ivs[j - 1].samples.back().x[1], lambda, 1e-4);
    EXPECT_NEAR(speed, u, 1e-7);
    u *= lambda;
    t += 2.0 * u / g;
  }
}

TEST(Simulate, InitialPointOnGuardJumpsImmediately) {
  const BouncingBall ball(10.0, 0.5);
  const auto res = simulate(*ball.coalgebra(), {"ball", make_vec({0.0, -1.0})}, kLong);
  const auto& ivs = res.execution.intervals;
  ASSERT_GE(ivs.size(), 2u);
  EXPECT_DOUBLE_EQ(ivs[0].duration(), 0.0);
  EXPECT_DOUBLE_EQ(ivs[1].begin(), 0.0);
  EXPECT_DOUBLE_EQ(ivs[1].samples.front().x[1], 0.5);
}

TEST(Simulate, Deterministic) {
  const BouncingBall ball(10.0, 0.5);
  const auto a = simulate(*ball.coalgebra(), {"ball", make_vec({1.3, 0.2})}, kLong);
  const auto b = simulate(*ball.coalgebra(), {"ball", make_vec({1.3, 0.2})}, kLong);
  ASSERT_EQ(a.execution.intervals.size(), b.execution.intervals.size());
  for (std::size_t j = 0; j < a.execution.intervals.size(); ++j) {
    const auto& sa = a.execution.intervals[j].samples;
    const auto& sb = b.execution.intervals[j].samples;
    ASSERT_EQ(sa.size(), sb.size());
    for (std::size_t k = 0; k < sa.size(); ++k) {
      EXPECT_EQ(sa[k].t, sb[k].t);
      EXPECT_EQ(sa[k].x, sb[k].x);
    }
  }
  EXPECT_EQ(a.zeno.tau_infinity_estimate, b.zeno.tau_infinity_estimate);
}

TEST(Simulate, ElasticBallNeverFlagsZeno) {
  const BouncingBall ball(10.0, 1.0);
  const auto res = simulate(*ball.coalgebra(), {"ball", make_vec({1.0, 0.0})}, {.max_jumps = 1000, .horizon = 10.0});
  EXPECT_FALSE(res.zeno.is_zeno_flagged);
  EXPECT_EQ(res.execution.truncation, Truncation::horizon);
  EXPECT_EQ(res.execution.jumps(), 11u);
}

TEST(Simulate, MaxJumpsTruncates) {
  const BouncingBall ball(10.0, 1.0);
  const auto res = simulate(*ball.coalgebra(), {"ball", make_vec({1.0, 0.0})}, {.max_jumps = 3, .horizon = 10.0});
  EXPECT_EQ(res.execution.truncation, Truncation::max_jumps);
  EXPECT_EQ(res.execution.jumps(), 3u);
}

TEST(Simulate, GrazingWarnsWithoutJumping) {
  const double b = 1.0006;
  auto h = floor_system([](const Vec& x) { return make_vec({x[1], 2.0}); });
  const HCoalgebra sys = encode_hybrid(*h);
  const auto res = simulate(sys, {"v", make_vec({b * b / 4.0, -b})}, {.horizon = 1.0});
  EXPECT_EQ(res.execution.jumps(), 0u);
  ASSERT_FALSE(res.warnings.empty());
  EXPECT_NE(res.warnings.front().find("grazing"), std::string::npos);
}

TEST(Simulate, SimultaneousGuardsAbort) {
  Vertex v{"v", Region{2, {[](const Vec& x) { return x[0]; }, [](const Vec& x) { return x[1]; }}},
           [](const Vec&) { return make_vec({-1.0, -1.0}); }};
  Edge a{"a", "v", "v", Guard{[](const Vec& x) { return x[0]; }, {}}, [](const Vec&) { return make_vec({1.0, 2.0}); }};
  Edge b{"b", "v", "v", Guard{[](const Vec& x) { return x[1]; }, {}}, [](const Vec&) { return make_vec({2.0, 1.0}); }};
  auto h = std::make_shared<ClassicalHybridSystem>(std::vector<Vertex>{v}, std::vector<Edge>{a, b});
  const HCoalgebra sys = encode_hybrid(*h);
  try {
    simulate(sys, {"v", make_vec({1.0, 1.0})}, {.horizon = 2.0});
    FAIL() << "expected SimulationError";
  } catch (const SimulationError& e) {
    ASSERT_TRUE(e.witness().has_value());
    EXPECT_NEAR(e.time(), 1.0, 1e-8);
  }
}

TEST(Simulate, EscapeWithoutGuardThrows) {
  Vertex v{"v", Region{1, {[](const Vec& x) { return x[0]; }}}, [](const Vec&) { return make_vec({-1.0}); }};
  auto h = std::make_shared<ClassicalHybridSystem>(std::vector<Vertex>{v}, std::vector<Edge>{});
  const HCoalgebra sys = encode_hybrid(*h);
  EXPECT_THROW(simulate(sys, {"v", make_vec({0.5})}, {.horizon = 2.0}), EscapeError);
}

TEST(Simulate, RejectsInitialPointOutsideDomain) {
  const BouncingBall ball(10.0, 0.5);
  EXPECT_THROW(simulate(*ball.coalgebra(), {"ball", make_vec({-1.0, 0.0})}, SimConfig{}), ValidationError);
  EXPECT_THROW(simulate(*ball.coalgebra(), {"nowhere", make_vec({1.0, 0.0})}, SimConfig{}), ValidationError);
}

TEST(SimConfig, ValidateRejectsNonPositive) {
  SimConfig c;
  c.dt_max = 0.0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = SimConfig{};
  c.horizon = -1.0;
  EXPECT_THROW(c.validate(), ValidationError);
  EXPECT_NO_THROW(SimConfig{}.validate());
}

TEST(Rk4, FourthOrderOnExponentialDecay) {
  const auto f = [](const Vec& x) { return Vec(-x); };
  const double e1 = std::abs(rk4_step(f, make_vec({1.0}), 0.1)[0] - std::exp(-0.1));
  const double e2 = std::abs(rk4_step(f, make_vec({1.0}), 0.05)[0] - std::exp(-0.05));
  EXPECT_LT(e1, 1e-7);
  EXPECT_NEAR(std::log2(e1 / e2), 5.0, 0.2);  // local error O(h^5)
}

TEST(GeometricTail, ExactSeries) {
  const auto [tail, ratio] = geometric_tail({1.0, 0.5, 0.25, 0.125, 0.0625}, 5);
  ASSERT_TRUE(ratio.has_value());
  EXPECT_NEAR(*ratio, 0.5, 1e-14);
  EXPECT_NEAR(tail, 0.0625, 1e-14);
  EXPECT_FALSE(geometric_tail({1.0}, 5).second.has_value());
  EXPECT_EQ(geometric_tail({1.0, 2.0, 4.0}, 5).first, 0.0);
}

TEST(SimulateSwitching, FollowsSignalAndKeepsState) {
  const SwitchingPair sp = make_switching_pair();
  const SwitchingSignal sig{{0.3, 0.9, 1.4}, {"A2", "A1", "A2"}};
  const auto res = simulate_switching(*sp.coalgebra, {"A1", make_vec({1.0, -1.0})}, sig, {.dt_max = 1e-2, .horizon = 2.0});
  const auto& ivs = res.execution.intervals;
  ASSERT_EQ(ivs.size(), 4u);
  EXPECT_EQ(ivs[1].mode, "A2");
  EXPECT_EQ(ivs[3].mode, "A2");
  EXPECT_NEAR(ivs[1].begin(), 0.3, 1e-12);
  for (std::size_t j = 0; j + 1 < ivs.size(); ++j) {
    EXPECT_EQ(ivs[j].samples.back().x, ivs[j + 1].samples.front().x);
    EXPECT_EQ(ivs[j].edge, "switch");
  }
  // Each mode matrix is Hurwitz, and x^T x decreases along both fields.
  EXPECT_LT(ivs.back().samples.back().x.norm(), std::sqrt(2.0));
}
