#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "expect_error.hpp"
#include "localprod/theorems.hpp"
#include "oracles.hpp"

using namespace localprod;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(Verdict, Guard) {
  EXPECT_EQ(classify_margin(1.0, 0.1), Verdict::Holds);
  EXPECT_EQ(classify_margin(-1.0, 0.1), Verdict::Violated);
  EXPECT_EQ(classify_margin(0.4, 0.1), Verdict::Inconclusive);
  EXPECT_EQ(classify_margin(0.0, 0.0), Verdict::Inconclusive);
  EXPECT_EQ(verdict_from_name("Violated"), Verdict::Violated);
  EXPECT_EQ(theorem_from_name("app3"), TheoremId::App3);
  EXPECT_ANY_THROW(theorem_from_name("app4"));
}

TEST(App2, OneDimensionHolds) {
  const auto r = thm_app2_report({1}, {2}, 1, {});
  EXPECT_NEAR(r.lhs, 1.5, 1e-12);
  EXPECT_NEAR(r.rhs, 15.154395110688411, 1e-12);
  EXPECT_NEAR(r.rhs, 2.0 / (2 * kPi * std::numbers::ln2) * 33.0, 1e-12);
  EXPECT_EQ(r.k, 4);
  EXPECT_EQ(r.verdict, Verdict::Holds);
}

TEST(App2, ZeroWidthBoxIsInconclusive) {
  // both sides vanish, so the margin sits inside the guard band
  const auto r = thm_app2_report({1, 1}, {1, 1}, 1, {});
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.rhs, 0.0);
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
}

TEST(App2, NearOrthogonalInstanceViolates) {
  const auto r = thm_app2_report({1, 0.001}, {0.001, 1}, 1, {});
  const double norm5 = std::pow(1.0 + 1e-6, 2.5);
  const double rhs = 0.002 / (2 * kPi * std::abs(std::log(0.002))) * 2 * norm5 * (0.999 * 0.999);
  EXPECT_NEAR(r.rhs, rhs, 1e-15);
  EXPECT_NEAR(r.lhs, 0.6939292616106905, 1e-9);
  const auto mid = oracle::midpoint(
      [](const std::vector<double>& x) { return std::complex<double>(oracle::lk(x, 4)); }, {0.001, 0.001}, {1, 1},
      400);
  EXPECT_NEAR(r.lhs, std::abs(mid), 1e-5);
  EXPECT_EQ(r.verdict, Verdict::Violated);
  EXPECT_LT(r.margin, 0.0);
}

TEST(App3, OneDimensionHolds) {
  const auto r = thm_app3_report({1}, {2}, 1, {});
  EXPECT_NEAR(r.lhs, std::numbers::ln2, 1e-12);
  EXPECT_NEAR(r.rhs, 0.01694619525528095, 1e-15);
  EXPECT_EQ(r.k, 7);
  EXPECT_EQ(r.verdict, Verdict::Holds);
}

TEST(App3, ZeroWidthBoxIsInconclusive) {
  const auto r = thm_app3_report({1, 1}, {1, 1}, 1, {});
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.rhs, 0.0);
  EXPECT_EQ(r.margin, 0.0);
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
}

TEST(App3, NearOrthogonalInstanceViolates) {
  const auto r = thm_app3_report({1, 0.001}, {0.001, 1}, 1, {});
  EXPECT_NEAR(r.rhs, 19.48466119765435, 1e-10);
  EXPECT_NEAR(r.lhs, 1.956006162781557, 1e-8);
  EXPECT_EQ(r.verdict, Verdict::Violated);
}

TEST(Hypotheses, App2) {
  EXPECT_ERROR_KIND(thm_app2_report({1, 0}, {0, 1}, 1, {}), ErrorKind::HypothesisViolated);
  EXPECT_ERROR_KIND(thm_app2_report({1}, {-2}, 1, {}), ErrorKind::HypothesisViolated);
  EXPECT_ERROR_KIND(thm_app2_report({2}, {0.5}, 1, {}), ErrorKind::HypothesisViolated);
  EXPECT_ERROR_KIND(thm_app2_report({1}, {2}, 0, {}), ErrorKind::HypothesisViolated);
  EXPECT_ERROR_KIND(thm_app2_report({1}, {2, 3}, 1, {}), ErrorKind::DimensionMismatch);
}

TEST(Hypotheses, App3) {
  EXPECT_ERROR_KIND(thm_app3_report({1, 0}, {0.5, 1}, 1, {}), ErrorKind::HypothesisViolated);
  EXPECT_ERROR_KIND(thm_app3_report({-1}, {-2}, 1, {}), ErrorKind::HypothesisViolated);
  EXPECT_ERROR_KIND(thm_app3_report({1}, {3}, 1, {}), ErrorKind::HypothesisViolated);
  EXPECT_ERROR_KIND(thm_app3_report({1}, {1}, 1, {}), ErrorKind::HypothesisViolated);
  EXPECT_NO_THROW(thm_app3_report({1}, {std::numbers::e}, 1, {}));
}

TEST(Hypotheses, SZeroUnlock) {
  EXPECT_ERROR_KIND(thm_app3_report({1}, {2}, 0, {}), ErrorKind::HypothesisViolated);
  const auto r = thm_app3_report({1}, {2}, 0, {}, TheoremOptions{.allow_s_zero = true});
  EXPECT_EQ(r.k, 3);
  EXPECT_NEAR(r.lhs, std::numbers::ln2, 1e-12);
}

// Properties

TEST(TheoremProperties, DoubledEffortNeverFlipsVerdict) {
  std::mt19937_64 rng(201);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const RealVector a(oracle::draw(rng, n, 0.05, 1.5));
    const RealVector b(oracle::draw(rng, n, 0.05, 1.5));
    const double p = pairing_eval(Pairing::dot(), a, b);
    for (TheoremId id : {TheoremId::App2, TheoremId::App3}) {
      if (p == 1.0 || (id == TheoremId::App3 && p > std::numbers::e)) continue;
      const auto base = theorem_report(id, a, b, 1, {});
      const auto fine = theorem_report(id, a, b, 1, QuadratureConfig{}.doubled());
      if (base.verdict != Verdict::Inconclusive && fine.verdict != Verdict::Inconclusive)
        EXPECT_EQ(base.verdict, fine.verdict);
    }
  }
}

TEST(TheoremProperties, RhsIsQuadratureFree) {
  const RealVector a{0.4, 1.2};
  const RealVector b{1.1, 0.3};
  const QuadratureConfig mc{.method = MonteCarlo{.samples = 1000, .seed = 1}};
  EXPECT_EQ(thm_app2_report(a, b, 1, {}).rhs, thm_app2_report(a, b, 1, mc).rhs);
  EXPECT_EQ(thm_app3_report(a, b, 2, {}).rhs, thm_app3_report(a, b, 2, mc).rhs);
  EXPECT_EQ(thm_app2_report(a, b, 1, {}).rhs, app2_rhs(a, b, 1));
}

TEST(TheoremProperties, App2LhsScalesWithDimensionPlusOne) {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const RealVector a(oracle::draw(rng, n, 0.2, 1.5));
    const RealVector b(oracle::draw(rng, n, 0.2, 1.5));
    const double t = 0.5 + 0.1 * trial;
    const RealVector ta = a.scaled(t);
    const RealVector tb = b.scaled(t);
    const double p = pairing_eval(Pairing::dot(), a, b);
    if (p == 1.0 || t * t * p == 1.0) continue;
    const double base = thm_app2_report(a, b, 1 + trial % 2, {}).lhs;
    const double scaled = thm_app2_report(ta, tb, 1 + trial % 2, {}).lhs;
    EXPECT_NEAR(scaled, std::pow(t, static_cast<double>(n + 1)) * base, 1e-6 * scaled);
  }
}

TEST(SwapIdentity, Examples) {
  LocalProductInstance inst{.a = {1, 0}, .b = {0, 1}, .k = 4, .sheet = Sheet::identity(),
                            .pairing = Pairing::symplectic2d()};
  const auto r = prop_swap_identity_check(inst, {});
  EXPECT_TRUE(r.pass);
  EXPECT_LT(oracle::rel_diff(r.lhs, r.rhs), 1e-8);

  inst.b = inst.a;
  const auto same = prop_swap_identity_check(inst, {});
  EXPECT_TRUE(same.pass);
  EXPECT_EQ(same.lhs, Complex(0.0));
  EXPECT_EQ(same.rhs, Complex(0.0));

  inst.b = RealVector{0, 1};
  inst.pairing = Pairing::dot();
  EXPECT_ERROR_KIND(prop_swap_identity_check(inst, {}), ErrorKind::PairingNotAntisymmetric);
  inst.pairing = Pairing::bilinear(2, {1, 2, 2, 1});
  EXPECT_ERROR_KIND(prop_swap_identity_check(inst, {}), ErrorKind::PairingNotAntisymmetric);
}

TEST(SwapIdentity, HoldsOnRandomInstances) {
  std::mt19937_64 rng(203);
  for (int trial = 0; trial < 20; ++trial) {
    const LocalProductInstance inst{.a = RealVector(oracle::draw(rng, 2, 0.3, 2.0)),
                                    .b = RealVector(oracle::draw(rng, 2, 0.3, 2.0)),
                                    .k = trial % 2 == 0 ? 4 : 8,
                                    .sheet = Sheet::identity(),
                                    .pairing = Pairing::symplectic2d()};
    EXPECT_TRUE(prop_swap_identity_check(inst, {}).pass) << trial;
  }
}

TEST(SwapIdentity, ThreeDimensionalAntisymmetricMatrix) {
  const LocalProductInstance inst{.a = {0.5, 1.0, 1.5},
                                  .b = {1.2, 0.4, 0.9},
                                  .k = 4,
                                  .sheet = Sheet::identity(),
                                  .pairing = Pairing::bilinear(3, {0, 1, -2, -1, 0, 3, 2, -3, 0})};
  EXPECT_TRUE(prop_swap_identity_check(inst, {}).pass);
}

TEST(ModulusBound, ConstantSheetIsTight) {
  const LocalProductInstance inst{.a = {1, 1}, .b = {2, 3}, .k = 4, .sheet = Sheet::constant()};
  const auto r = modulus_bound_check(inst, {});
  EXPECT_NEAR(r.g_abs, 2.0, 1e-12);
  EXPECT_NEAR(r.bound, 2.0, 1e-12);
  EXPECT_TRUE(r.pass);
}

TEST(ModulusBound, IdentitySheetUsesUnitPhase) {
  const LocalProductInstance inst{.a = {1, 1}, .b = {2, 3}, .k = 4, .sheet = Sheet::identity()};
  const auto r = modulus_bound_check(inst, {});
  EXPECT_NEAR(r.bound, 5.0 * 2.0, 1e-12);
  EXPECT_TRUE(r.pass);
}

TEST(ModulusBound, LogSheetSupAtFarCorner) {
  const LocalProductInstance inst{.a = {1, 1}, .b = {2, 3}, .k = 4, .sheet = Sheet::log()};
  const auto r = modulus_bound_check(inst, {});
  const double scale = std::pow(2.0, 2.5) + std::pow(13.0, 2.5);
  const double r_max = std::pow(16.0 + 81.0, 0.25) / scale;
  EXPECT_NEAR(r.bound, std::log(5.0) * 2.0 * 2 * kPi * r_max, 1e-12);
  EXPECT_TRUE(r.pass);
}

TEST(ModulusBound, RejectsHighDimension) {
  const LocalProductInstance inst{.a = {1, 1, 1, 1}, .b = {2, 2, 2, 2}, .k = 4, .sheet = Sheet::constant()};
  EXPECT_ERROR_KIND(modulus_bound_check(inst, {}), ErrorKind::InvalidArgument);
}

TEST(CompareSheets, ReportsBothSides) {
  const LocalProductInstance inst{.a = {1, 1}, .b = {2, 3}, .k = 4, .sheet = Sheet::constant()};
  const auto c = compare_sheets(inst, Sheet::identity(), {});
  EXPECT_NEAR(std::abs(c.g_f), 2.0, 1e-12);
  EXPECT_EQ(c.f_dominated, std::abs(c.g_f) <= std::abs(c.g_g));
}
