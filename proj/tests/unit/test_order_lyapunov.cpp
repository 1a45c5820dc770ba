#include <gtest/gtest.h>

#include <cmath>

#include "hycoalg/lyapunov.hpp"
#include "hycoalg/systems.hpp"
#include "oracles.hpp"

using namespace hycoalg;

namespace {

/// One-dimensional flow x' = a x without jumps.
std::shared_ptr<HCoalgebra> linear_flow(double a) {
  Vertex v{"v", Region{1, {}}, [a](const Vec& x) { return Vec(a * x); }};
  auto h = std::make_shared<ClassicalHybridSystem>(std::vector<Vertex>{v}, std::vector<Edge>{});
  return std::make_shared<HCoalgebra>(encode_hybrid(*h));
}

LyapunovCandidate square(MeasurementObject target) {
  LyapunovCandidate c;
  c.name = "x^2";
  c.V_c = [](const Vec& x) { return x.squaredNorm(); };
  c.grad_V_c = [](const Vec& x) { return Vec(2.0 * x); };
  c.lower_c = ClassK::power(1.0, 2.0);
  c.upper_c = ClassK::power(1.0, 2.0);
  c.element = GeneralizedElement::point({"v", Vec::Zero(1)}, "origin");
  c.target = std::move(target);
  return c;
}

std::vector<TaggedPoint> line_points(int n, double lo, double hi) {
  std::vector<TaggedPoint> pts;
  for (int i = 0; i < n; ++i) pts.push_back({"v", make_vec({lo + (hi - lo) * i / (n - 1)})});
  return pts;
}

}  // namespace

// ---------------------------------------------------------------------------
// Hoare order

TEST(Hoare, EmptySets) {
  EXPECT_TRUE(hoare_leq({}, {{1.0, 1.0}}));
  EXPECT_TRUE(hoare_leq({}, {}));
  EXPECT_FALSE(hoare_leq({{0.0, 0.0}}, {}));
  EXPECT_EQ(hoare_margin({{0.0, 0.0}}, {}), -std::numeric_limits<double>::infinity());
}

TEST(Hoare, ComponentwiseDomination) {
  EXPECT_TRUE(hoare_leq({{1.0, 2.0}}, {{1.0, 2.0}, {0.0, 0.0}}));
  EXPECT_FALSE(hoare_leq({{2.0, 1.0}}, {{1.0, 2.0}}));
  EXPECT_NEAR(hoare_margin({{2.0, 1.0}}, {{1.0, 2.0}}), -1.0, 1e-15);
}

TEST(Hoare, PreorderAndMonotoneInB) {
  Rng rng(3);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  std::uniform_int_distribution<int> sz(0, 3);
  auto draw = [&] {
    HoareSet s;
    for (int i = sz(rng); i > 0; --i) s.push_back({u(rng), u(rng)});
    return s;
  };
  for (int k = 0; k < 500; ++k) {
    const HoareSet a = draw(), b = draw(), c = draw();
    EXPECT_TRUE(hoare_leq(a, a));
    if (hoare_leq(a, b) && hoare_leq(b, c)) EXPECT_TRUE(hoare_leq(a, c));
    HoareSet bigger = b;
    bigger.push_back({u(rng), u(rng)});
    if (hoare_leq(a, b)) EXPECT_TRUE(hoare_leq(a, bigger));
  }
}

TEST(Posetal, TrivialDiscretePart) {
  const auto p = PosetalObject::trivial();
  EXPECT_TRUE(p.is_member({0.0, 2.0}));
  EXPECT_FALSE(p.is_member({1.0, 2.0}));
  EXPECT_FALSE(PosetalObject::paired().is_member({-1.0, 0.0}));
  EXPECT_TRUE(PosetalObject::paired().leq({1.0, 1.0}, {1.0, 2.0}));
}

// ---------------------------------------------------------------------------
// Class-K

TEST(ClassK, RoundTripAndFactories) {
  for (const ClassK& k : {ClassK::linear(2.0), ClassK::power(0.5, 3.0), ClassK::min_linear_quadratic(1.5),
                          ClassK::linear_plus_sqrt(0.7)}) {
    const auto v = validate_class_k(k);
    EXPECT_TRUE(v.pass) << k.name() << ": " << v.failure;
  }
  const ClassK k = ClassK::linear_plus_sqrt(2.0);
  EXPECT_DOUBLE_EQ(k(4.0), 12.0);
  EXPECT_NEAR(k.inverse(12.0), 4.0, 1e-8);
  EXPECT_DOUBLE_EQ(ClassK::min_linear_quadratic(3.0)(0.5), 0.75);
}

TEST(ClassK, ValidationRejectsNonMonotone) {
  EXPECT_FALSE(validate_class_k(ClassK("sin", [](double r) { return std::sin(r); })).pass);
  EXPECT_FALSE(validate_class_k(ClassK("shifted", [](double r) { return r + 1.0; })).pass);
  EXPECT_TRUE(validate_class_k2(ClassK2("sum", [](double a, double b) { return a + b * b; })).pass);
  EXPECT_FALSE(validate_class_k2(ClassK2("diff", [](double a, double b) { return a - b; })).pass);
}

// ---------------------------------------------------------------------------
// Positive definiteness, flow and jump conditions

TEST(PositiveDefinite, ExactSquaresPassWithZeroSlack) {
  const auto res = check_positive_definite(square(make_stability_sigma()), line_points(101, -3.0, 3.0));
  ASSERT_EQ(res.size(), 2u);
  for (const auto& r : res) {
    EXPECT_TRUE(r.pass) << r.name;
    EXPECT_NEAR(r.worst_margin, 0.0, 1e-12);
  }
}

TEST(PositiveDefinite, ZeroFunctionFailsLowerBound) {
  auto c = square(make_stability_sigma());
  c.V_c = [](const Vec&) { return 0.0; };
  const auto res = check_positive_definite(c, line_points(11, -1.0, 1.0));
  ASSERT_EQ(res.front().name, "pd:lower_c");
  EXPECT_FALSE(res.front().pass);
  ASSERT_TRUE(res.front().witness.has_value());
  EXPECT_GT(std::abs(res.front().witness->x[0]), 0.0);
}

TEST(Flow, StableLinearPassesUnstableFails) {
  const auto pts = line_points(41, -2.0, 2.0);
  EXPECT_TRUE(check_flow_condition(*linear_flow(-1.0), square(make_stability_sigma()), pts).pass);
  const CheckResult bad = check_flow_condition(*linear_flow(1.0), square(make_stability_sigma()), pts);
  EXPECT_FALSE(bad.pass);
  ASSERT_TRUE(bad.witness.has_value());
  EXPECT_NE(bad.witness->x[0], 0.0);
  EXPECT_EQ(bad.name, "flow");
}

TEST(Flow, BallEqualityAtInteriorSamples) {
  const BouncingBall ball(10.0, 0.5);
  CertificateConfig cfg = ball.certificate_config(5);
  const CheckSamples s = draw_samples(*ball.coalgebra(), cfg);
  ASSERT_EQ(s.interior.size(), 1000u);
  const CheckResult r = check_flow_condition(*ball.coalgebra(), ball.certificate(), s.interior);
  EXPECT_LE(std::abs(r.worst_margin), 1e-6);
  EXPECT_LE(std::abs(r.max_margin), 1e-6);
}

TEST(Jump, SwitchingCommonLyapunovFunction) {
  const SwitchingPair sp = make_switching_pair();
  CertificateConfig cfg = sp.config;
  const CheckSamples s = draw_samples(*sp.coalgebra, cfg);
  const CheckResult r = check_jump_condition(*sp.coalgebra, sp.certificate, s.guard);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.evaluated, 0u);
  EXPECT_NEAR(r.worst_margin, 0.0, 1e-12);
}

TEST(Jump, DoublingResetFailsStabilitySigma) {
  Vertex v{"v", Region{1, {[](const Vec& x) { return 2.0 - x[0]; }}}, [](const Vec& x) { return Vec(-x); }};
  Edge e{"double", "v", "v", Guard{[](const Vec& x) { return 2.0 - x[0]; }, {}}, [](const Vec& x) { return Vec(2.0 * x); }};
  auto h = std::make_shared<ClassicalHybridSystem>(std::vector<Vertex>{v}, std::vector<Edge>{e});
  const HCoalgebra sys = encode_hybrid(*h);
  const CheckResult r = check_jump_condition(sys, square(make_stability_sigma()), {{"v", make_vec({2.0})}});
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.worst_margin, 4.0 - 16.0, 1e-12);
}

// ---------------------------------------------------------------------------
// Measurement objects

TEST(ZenoSigma, DomainRestrictedJump) {
  const auto m = make_zeno_sigma(2.0, 0.25);
  EXPECT_EQ(m.kind, SigmaKind::zeno);
  EXPECT_DOUBLE_EQ(m.sigma_c({3.0, 1.0}), -2.0);
  const HoareSet j = m.jump({4.0, 0.0});
  ASSERT_EQ(j.size(), 1u);
  EXPECT_DOUBLE_EQ(j.front().d, 1.0);
  EXPECT_DOUBLE_EQ(j.front().c, 4.0);
  EXPECT_TRUE(m.jump({4.0, 1e-3}).empty());
  EXPECT_THROW(make_zeno_sigma(1.0, 1.0), ParameterError);
  EXPECT_THROW(make_zeno_sigma(0.0, 0.5), ParameterError);
  EXPECT_NO_THROW(make_zeno_sigma(1.0, 1.0, false));
}

TEST(ResSigma, FormulasAndSourceKeyedScaling) {
  EXPECT_NEAR(res_mu(1.0, 0.1, 1.0, 2.0), oracle::res_contraction(1.0, 0.1, 1.0, 2.0), 1e-18);
  EXPECT_NEAR(res_epsilon_star(1.0, 1.0, 2.0), 1.0 / std::log(2.0), 1e-12);
  EXPECT_NEAR(res_epsilon_star(1.0, 1.0, 2.0), 1.4427, 1e-4);
  EXPECT_TRUE(std::isinf(res_epsilon_star(1.0, 1.0, 0.5)));
  EXPECT_NEAR(res_rate_bound(1.0, 0.1, 1.0, 1.0, 2.0), 10.0 - std::log(2.0), 1e-12);
  EXPECT_NEAR(res_rate_bound(1.0, 0.1, 1.0, 1.0, 2.0), 9.307, 1e-3);
  EXPECT_DOUBLE_EQ(res_overshoot({{"a", 0.5}, {"b", 1.5}}), 1.5);
  ResParams p;
  p.kappa = {{"m0", 1.5}, {"m1", 4.0 / 3.0}};
  const auto m = make_res_sigma(p);
  EXPECT_DOUBLE_EQ(m.sigma_c({0.0, 2.0}), -20.0);
  EXPECT_DOUBLE_EQ(m.jump({0.0, 2.0}, "m0").front().c, 3.0);
  EXPECT_NEAR(m.jump({0.0, 3.0}, "m1").front().c, 4.0, 1e-15);
}

TEST(Comparison, ZenoAndStabilitySigmasPass) {
  const ComparisonReport z = test_comparison_property(make_zeno_sigma(1.0, 0.5));
  EXPECT_TRUE(z.pass) << z.violation.value_or("");
  EXPECT_EQ(z.trials_run, 100u);
  EXPECT_GT(z.comparisons, 0u);
  const ComparisonReport s = test_comparison_property(make_stability_sigma());
  EXPECT_TRUE(s.pass) << s.violation.value_or("");
}

TEST(Comparison, LaxJumpsPassAndFlippedRolesFail) {
  MeasurementObject m = make_stability_sigma();
  m.name = "double";
  m.kind = SigmaKind::custom;
  m.sigma_d = [](const MeasureValue& a, const Mode&) { return HoareSet{{a.d, 2.0 * a.c}}; };
  ComparisonConfig lax;
  lax.sub_jump_lo = lax.sub_jump_hi = 0.75;  // sub-solution jumps to 1.5 a
  EXPECT_TRUE(test_comparison_property(m, lax).pass);
  ComparisonConfig flipped;
  flipped.init_scale_lo = 1.0;
  flipped.max_extra_decay = 0.0;
  flipped.sub_jump_lo = flipped.sub_jump_hi = 1.0;  // sub-solution jumps to 2 a
  flipped.solution_jump_factor = 0.75;              // solution only to 1.5 a
  const ComparisonReport r = test_comparison_property(m, flipped);
  EXPECT_FALSE(r.pass);
  EXPECT_TRUE(r.violation.has_value());
  EXPECT_LT(r.worst_margin, 0.0);
}

// ---------------------------------------------------------------------------
// Certificates

TEST(Certificate, BallZenoCertificatePasses) {
  const BouncingBall ball(10.0, 0.5);
  const CertificateReport r = check_certificate(*ball.coalgebra(), ball.certificate(), ball.certificate_config());
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.failing().empty());
  for (const char* n : {"pd:upper_c", "pd:lower_d", "pd:upper_d", "flow:zeno_flow", "jump:zeno_guard",
                        "jump:zeno_jump_Vd", "jump:zeno_jump_Vc"}) {
    EXPECT_NE(r.find(n), nullptr) << n;
  }
  ASSERT_TRUE(r.comparison.has_value());
  EXPECT_TRUE(r.comparison->pass);
  ASSERT_TRUE(r.derived_alpha.has_value());
  EXPECT_TRUE(r.empirical.ran);
  EXPECT_TRUE(r.empirical.pass);
  EXPECT_EQ(r.empirical.trajectories, 50u);
  EXPECT_LE(r.empirical.worst_ratio, 1.0);
}

TEST(Certificate, ElasticBallFailsContraction) {
  const BouncingBall ball(10.0, 1.0);
  const CertificateReport r = check_certificate(*ball.coalgebra(), ball.certificate(), ball.certificate_config());
  EXPECT_FALSE(r.pass);
  const auto f = r.failing();
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f.front(), "jump:zeno_jump_Vd");
}

TEST(Certificate, AsymptoticLinearDecay) {
  AsymptoticParams ap;
  ap.alpha3 = ClassK::linear(1.0);
  ap.beta = [](double) { return 0.0; };
  auto cand = square(make_asymptotic_sigma(ap));
  CertificateConfig cfg;
  cfg.region = {{"v", Box(make_vec({-2.0}), make_vec({2.0}))}};
  cfg.sim.horizon = 3.0;
  const CertificateReport r = check_certificate(*linear_flow(-1.0), cand, cfg);
  EXPECT_TRUE(r.pass) << (r.failing().empty() ? "" : r.failing().front());
  const CertificateReport bad = check_certificate(*linear_flow(-0.25), cand, cfg);
  EXPECT_FALSE(bad.pass);
  EXPECT_EQ(bad.failing().front(), "flow");
}

TEST(Certificate, SwitchingPairAndSyntheticPeriodic) {
  const SwitchingPair sp = make_switching_pair();
  EXPECT_TRUE(check_certificate(*sp.coalgebra, sp.certificate, sp.config).pass);
  const SyntheticPeriodic per({0.4, 0.6}, {1.5, 4.0 / 3.0});
  const CertificateReport r = check_certificate(*per.coalgebra(), per.certificate(), per.certificate_config());
  EXPECT_TRUE(r.pass) << (r.failing().empty() ? "" : r.failing().front());
}

TEST(Certificate, DerivedAlphaConstruction) {
  const SwitchingPair sp = make_switching_pair();
  const auto a = derive_alpha(sp.certificate);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(a->component, "continuous");
  // lower = upper = r^2 and growth 1 give alpha(r) = r.
  EXPECT_NEAR(a->alpha(1.7), 1.7, 1e-8);
}
